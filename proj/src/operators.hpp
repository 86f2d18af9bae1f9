#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exact/ratfunc.hpp"
#include "quasipoly.hpp"

namespace trigdarboux {

/// The derivation d/dx on coefficients: D(x) = 1, D(u) = -u, D(w) = w, constants on z, n.
MultiPoly derivation(const MultiPoly& p);
RatFunc derivation(const RatFunc& r);

/// sum_k a_k d^k in normal form (coefficients to the left). The zero operator has order -1.
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<RatFunc> coeffs);

    static DiffOp identity() { return DiffOp({RatFunc(1)}); }
    static DiffOp d(unsigned power = 1);
    static DiffOp scalar(const RatFunc& a) { return DiffOp({a}); }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == RatFunc(1); }
    const std::vector<RatFunc>& coeffs() const { return coeffs_; }
    const RatFunc& coeff(std::size_t k) const { return coeffs_.at(k); }
    const RatFunc& leading() const { return coeffs_.back(); }
    /// True when no coefficient involves v.
    bool free_of(Var v) const;

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    /// Composition A o B.
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
    /// Left multiplication by a coefficient.
    friend DiffOp operator*(const RatFunc& c, const DiffOp& a);
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.coeffs_ == b.coeffs_; }

    /// Applies a substitution to every coefficient.
    DiffOp substitute(const std::map<Var, RatFunc>& values) const;
    std::string to_string() const;

private:
    void trim();
    std::vector<RatFunc> coeffs_;
};

inline DiffOp diffop_mul(const DiffOp& a, const DiffOp& b) { return a * b; }

struct Division {
    DiffOp quotient;
    DiffOp remainder;
};

/// a = quotient o b + remainder with ord remainder < ord b. b must be monic.
Division right_divide(const DiffOp& a, const DiffOp& b);

/// Formal adjoint: (a d)^* = -d o a.
DiffOp adjoint(const DiffOp& a);

/// Monic operator whose kernel is spanned by the basis (Wronskian quotient).
/// Throws Error(DependentBasis) when the Wronskian vanishes.
DiffOp annihilator(const std::vector<QuasiPoly>& basis);

/// Polynomial in d with constant coefficients.
class ConstCoeffOp {
public:
    ConstCoeffOp() = default;
    /// From a polynomial in one variable (the symbol of d).
    ConstCoeffOp(const MultiPoly& symbol, Var v = Var::z);

    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    unsigned degree() const { return coeffs_.empty() ? 0 : static_cast<unsigned>(coeffs_.size() - 1); }
    MultiPoly symbol(Var v = Var::z) const;
    DiffOp to_diffop() const;
    QuasiPoly apply(const QuasiPoly& f) const;

private:
    std::vector<GaussianRational> coeffs_;  // low to high
};

/// e^{-xz} A e^{xz} = sum_k a_k z^k.
RatFunc apply_to_exp(const DiffOp& a);

/// psi = e^{frame * x z} * rho; frame is +1 or -1.
struct ReducedWave {
    RatFunc rho;
    int frame = 1;

    bool trigonometric() const { return !rho.uses(Var::x); }
    friend bool operator==(const ReducedWave&, const ReducedWave&) = default;
};

/// Reduced form of A(e^{frame x z} rho): each d acts as D + frame*z.
ReducedWave apply_framed(const DiffOp& a, const ReducedWave& w);

/// sum_m a_m T^m, T a(v) = a(v+1) T, with coefficients rational in the tagged variable.
/// The Delta basis stores the same operator as sum_j b_j Delta^j, Delta = T - 1.
class DifferenceOp {
public:
    enum class Basis { Shift, Delta };

    explicit DifferenceOp(Var variable = Var::z, Basis basis = Basis::Shift) : var_(variable), basis_(basis) {}
    DifferenceOp(Var variable, std::map<unsigned, RatFunc> coeffs, Basis basis = Basis::Shift);

    static DifferenceOp shift(Var variable, unsigned power = 1);
    static DifferenceOp scalar(Var variable, const RatFunc& a);

    Var variable() const { return var_; }
    Basis basis() const { return basis_; }
    const std::map<unsigned, RatFunc>& coeffs() const { return coeffs_; }
    int order() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }
    const RatFunc& leading() const { return coeffs_.rbegin()->second; }
    RatFunc coeff(unsigned m) const;

    DifferenceOp to_delta() const;
    DifferenceOp to_shift() const;
    /// Renames the tagged variable in the coefficients (formal; frames stay tracked by the tag).
    DifferenceOp renamed(Var to) const;

    friend DifferenceOp operator+(const DifferenceOp& a, const DifferenceOp& b);
    /// Composition; both sides must carry the same variable tag.
    friend DifferenceOp operator*(const DifferenceOp& a, const DifferenceOp& b);
    friend bool operator==(const DifferenceOp& a, const DifferenceOp& b);

    std::string to_string() const;

private:
    Var var_;
    Basis basis_;
    std::map<unsigned, RatFunc> coeffs_;
};

inline DifferenceOp t_to_delta(const DifferenceOp& a) { return a.to_delta(); }

/// Applies A to frame * rho where T(frame) = ratio * frame and T shifts A's variable by 1.
RatFunc apply_shift_framed(const DifferenceOp& a, const RatFunc& rho, const RatFunc& ratio);

/// T acting on e^{xz} rho(x,u,z) as rho -> u^{-1} rho|_{z->z+1}.
ReducedWave apply_difference_framed(const DifferenceOp& a, const ReducedWave& w);

} // namespace trigdarboux
