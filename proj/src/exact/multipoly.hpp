#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact/scalar.hpp"

namespace trigdarboux {

/// Fixed alphabet. u stands for e^{-x}, w for e^{x}; n is the discrete variable;
/// y is the auxiliary chain variable; s is the adelic operator symbol.
enum class Var : std::uint8_t { x = 0, u, w, z, n, y, s };
inline constexpr int kNumVars = 7;

const char* var_name(Var v);
std::optional<Var> var_from_name(const std::string& name);

struct Monomial {
    std::array<std::uint16_t, kNumVars> exp{};

    unsigned degree() const;
    unsigned operator[](Var v) const { return exp[static_cast<int>(v)]; }
    bool divides(const Monomial& other) const;
    bool is_one() const { return degree() == 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Precondition: b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

    static Monomial of(Var v, unsigned power = 1);
};

/// Graded lexicographic comparison with s > y > n > z > w > u > x.
/// Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

using Term = std::pair<Monomial, GaussianRational>;

/// Sparse polynomial over Q(i). Terms are kept sorted in decreasing grlex order
/// with no zero coefficients, so equal polynomials compare equal termwise.
class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(GaussianRational c);  // NOLINT
    MultiPoly(long c) : MultiPoly(GaussianRational(c)) {}  // NOLINT

    static MultiPoly var(Var v, unsigned power = 1);
    static MultiPoly monomial(const Monomial& m, GaussianRational c);
    /// Builds from arbitrary (possibly unsorted, duplicated) terms.
    static MultiPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    GaussianRational constant_value() const;
    GaussianRational constant_term() const;
    const Monomial& leading_monomial() const { return terms_.front().first; }
    const GaussianRational& leading_coeff() const { return terms_.front().second; }

    unsigned total_degree() const;
    unsigned degree(Var v) const;
    unsigned min_degree(Var v) const;
    bool uses(Var v) const;
    /// Bit i set iff variable i occurs.
    unsigned var_mask() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const GaussianRational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    MultiPoly pow(unsigned e) const;
    MultiPoly derivative(Var v) const;
    /// Multiplies by a monomial.
    MultiPoly shifted(const Monomial& m) const;
    /// Divides by the leading coefficient; zero stays zero.
    MultiPoly monic() const;

    /// Coefficients of v^0, v^1, ... as polynomials free of v.
    std::vector<MultiPoly> as_univariate(Var v) const;
    static MultiPoly from_univariate(Var v, const std::vector<MultiPoly>& coeffs);
    MultiPoly coefficient(Var v, unsigned power) const;

    /// Substitutes a constant for v.
    MultiPoly evaluate(Var v, const GaussianRational& value) const;
    /// Substitutes a polynomial for v.
    MultiPoly compose(Var v, const MultiPoly& value) const;
    /// Swaps the roles of the listed variables simultaneously (a permutation on used variables).
    MultiPoly rename(const std::vector<std::pair<Var, Var>>& mapping) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

/// q with a = q*b if the division is exact, nullopt otherwise. Throws on b == 0.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
/// As divide_exact, but an inexact division is an internal error.
MultiPoly divide_or_throw(const MultiPoly& a, const MultiPoly& b);

/// Pseudo-remainder of a by b with respect to v.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v);

/// Greatest common divisor, normalized to leading coefficient 1 (gcd(0,0) = 0).
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b);

} // namespace trigdarboux
