#pragma once

#include "darboux.hpp"

namespace trigdarboux {

/// Anti-isomorphism w^m d^k -> z^k T^m on operators with coefficients in C[w].
DifferenceOp bmap(const DiffOp& a);
/// Coefficients are polynomials in w alone.
bool is_poly_exp(const DiffOp& a);

/// rho of a trigonometric transform written in (w, z).
RatFunc wave_in_w(const DarbouxTransform& t);

struct BispectralIdentities {
    bool p_side = false;  // b(Pbar) e^{xz} = theta(w) f(z) psi
    bool q_side = false;  // b(Qbar) g(z)^{-1} psi = nu(w) e^{xz}
};
BispectralIdentities verify_bispectral_identities(const DarbouxTransform& t);

/// f^{-1} b(Pbar) b(Qbar) g^{-1} psi = theta nu psi.
bool verify_difference_eigen(const DarbouxTransform& t);

/// psi^b(n, z) = (1+z)^n sigma(n, z).
struct DiscreteWave {
    RatFunc sigma;
    /// sigma -> 1 as z -> infinity.
    bool balanced() const;
};
DiscreteWave discrete_wave(const DarbouxTransform& t);

/// deg_v num = deg_v den with equal leading v-coefficients.
bool degree_balanced(const RatFunc& r, Var v);

struct DiscreteOperators {
    DifferenceOp R{Var::n, DifferenceOp::Basis::Delta};
    DifferenceOp S{Var::n, DifferenceOp::Basis::Delta};
    MultiPoly theta{1}, nu{1};
    bool r_identity = false;  // theta(1+z)^{-1} R (1+z)^n = psi^b
    bool s_identity = false;  // nu(1+z)^{-1} S psi^b = (1+z)^n
    bool r_monic_delta = false, r_monic_shift = false;
    bool s_monic_delta = false, s_monic_shift = false;
    bool r_order_matches = false;  // ord R = deg theta
    bool coefficients_in_n = false;
};
DiscreteOperators build_R_S(const DarbouxTransform& t);

} // namespace trigdarboux
