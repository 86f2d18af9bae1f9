#include "exact/scalar.hpp"

#include "errors.hpp"

namespace trigdarboux {

namespace {

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) fail(ErrorKind::InvalidInput, "bad rational literal '" + text + "'");
    if (q.get_den() == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

} // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
    return {parse_rational(re), parse_rational(im)};
}

bool GaussianRational::is_integer() const { return sgn(im_) == 0 && re_.get_den() == 1; }

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) fail(ErrorKind::Pole, "division by zero scalar");
    mpq_class norm = re_ * re_ + im_ * im_;
    return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) fail(ErrorKind::Pole, "division by zero scalar");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        if (sgn(im_) != 0) im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "*i";
    return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_.get_str() + "*i)";
}

GaussianRational pow(GaussianRational base, unsigned exp) {
    GaussianRational r(1);
    while (exp) {
        if (exp & 1u) r *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return r;
}

GaussianRational binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return GaussianRational(mpq_class(b));
}

GaussianRational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return GaussianRational(mpq_class(f));
}

} // namespace trigdarboux
