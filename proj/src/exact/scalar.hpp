#pragma once

#include <complex>
#include <compare>
#include <string>

#include <gmpxx.h>

namespace trigdarboux {

/// Element of Q(i): re + i*im with both parts exact rationals in lowest terms.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT: implicit integer literals are convenient
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() { return {0, 1}; }
    /// Parses "p/q" or "p" for each part.
    static GaussianRational parse(const std::string& re, const std::string& im = "0");

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return sgn(im_) == 0 && re_ == 1; }
    bool is_real() const { return sgn(im_) == 0; }
    /// True for ordinary integers (imaginary part zero, integral real part).
    bool is_integer() const;

    GaussianRational conj() const { return {re_, -im_}; }
    GaussianRational inverse() const;
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    /// Total order (re, then im); used only for keying containers.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

    std::string re_string() const { return re_.get_str(); }
    std::string im_string() const { return im_.get_str(); }
    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

GaussianRational pow(GaussianRational base, unsigned exp);
GaussianRational binomial(long n, long k);
GaussianRational factorial(unsigned n);

} // namespace trigdarboux
