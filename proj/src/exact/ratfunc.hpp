#pragma once

#include <complex>
#include <map>
#include <string>

#include "exact/multipoly.hpp"

namespace trigdarboux {

using Assignment = std::map<Var, GaussianRational>;
using FloatAssignment = std::map<Var, std::complex<double>>;

/// Reduced quotient num/den: gcd(num, den) = 1 and den has leading coefficient 1.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(MultiPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    RatFunc(GaussianRational c) : num_(std::move(c)), den_(1) {}  // NOLINT
    RatFunc(long c) : RatFunc(GaussianRational(c)) {}  // NOLINT

    /// Reduces num/den. Throws PoleError if den == 0.
    static RatFunc make(const MultiPoly& num, const MultiPoly& den);
    static RatFunc var(Var v) { return RatFunc(MultiPoly::var(v)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussianRational constant_value() const;
    bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }
    unsigned var_mask() const { return num_.var_mask() | den_.var_mask(); }

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(int e) const;
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc derivative(Var v) const;

    /// Simultaneous substitution of rational functions for variables.
    RatFunc substitute(const std::map<Var, RatFunc>& values) const;
    /// Exact value; every variable used must be assigned. PoleError at a pole.
    GaussianRational evaluate(const Assignment& at) const;
    /// Substitutes the assigned variables, leaving others symbolic.
    RatFunc evaluate_partial(const Assignment& at) const;
    std::complex<double> evaluate_float(const FloatAssignment& at) const;

    std::string to_string() const;

private:
    MultiPoly num_;
    MultiPoly den_;
};

/// Coefficient of z^{-1} in the expansion of f at z = infinity.
GaussianRational residue_at_infinity(const RatFunc& f, Var z = Var::z);

/// Substitutes values into a polynomial, returning the reduced result.
RatFunc substitute(const MultiPoly& p, const std::map<Var, RatFunc>& values);

} // namespace trigdarboux
