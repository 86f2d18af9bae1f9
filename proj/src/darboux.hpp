#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exact/matrix.hpp"
#include "operators.hpp"

namespace trigdarboux {

/// u = e^{-x} <-> w = e^{x} on coefficients.
RatFunc u_to_w(const RatFunc& r);
RatFunc w_to_u(const RatFunc& r);
DiffOp u_to_w(const DiffOp& a);

/// Normalized kernel element x^k e^{(lambda_r - j)x} + (later monomials).
struct NormalizedElement {
    QuasiPoly phi;
    std::size_t r = 0;
    unsigned j = 0;
    unsigned k = 0;
};

struct DarbouxTransform {
    enum class Kind { Trigonometric, Adelic, Reconstructed };

    Kind kind = Kind::Trigonometric;
    std::optional<SpectralData> data;
    DiffOp P = DiffOp::identity();
    DiffOp Q = DiffOp::identity();
    ConstCoeffOp h{MultiPoly(1)};
    MultiPoly f{1}, g{1};  // monic in z
    ReducedWave psi{RatFunc(1), 1};
    ReducedWave psi_star{RatFunc(1), -1};
    // Only filled for trigonometric transforms; polynomials in w.
    MultiPoly theta{1}, nu{1};
    DiffOp Pbar = DiffOp::identity();
    DiffOp Qbar = DiffOp::identity();
    std::vector<NormalizedElement> normalized_basis;

    /// P has coefficients free of x.
    bool trigonometric() const { return P.free_of(Var::x); }
};

/// Rows of coordinates of quasi-polynomials over the monomials x^k e^{lambda x}.
struct Coordinates {
    std::vector<std::pair<GaussianRational, unsigned>> keys;
    ScalarMatrix rows;
};
Coordinates coordinates(const std::vector<QuasiPoly>& fs);
/// True when target lies in the span of fs.
bool in_span(const std::vector<QuasiPoly>& fs, const QuasiPoly& target);
std::size_t span_dimension(const std::vector<QuasiPoly>& fs);

/// Reduced row echelon form ordered by (r ascending, j ascending, k descending).
std::vector<NormalizedElement> normalize_basis(const std::vector<QuasiPoly>& basis, const SpectralData& data);
/// prod (z - lambda_{r_i} + j_i).
MultiPoly normalization_polynomial(const std::vector<NormalizedElement>& basis, const SpectralData& data);

/// Completes a bundle from P, f and h: Q by right division, g = h/f, waves and,
/// when P is x-free, theta, nu, Pbar, Qbar.
DarbouxTransform assemble(DarbouxTransform::Kind kind, const DiffOp& P, const MultiPoly& f, const ConstCoeffOp& h);

DarbouxTransform build_trig(const SpectralData& data, const std::vector<KernelChainSpec>& chains);

/// Span splits into its lattice components and each component is closed under lowering.
bool classify_trig(const std::vector<QuasiPoly>& basis, const SpectralData& data);

struct WavePair {
    ReducedWave psi;
    ReducedWave psi_star;
};
WavePair wave_and_dual(const DiffOp& P, const DiffOp& Q, const MultiPoly& f, const MultiPoly& g);
inline WavePair wave_and_dual(const DarbouxTransform& t) { return wave_and_dual(t.P, t.Q, t.f, t.g); }

/// Q o P = h, f g = h, deg f = ord P.
bool check_factorization(const DarbouxTransform& t);
/// P Q psi = f g psi on the reduced wave.
bool check_eigen(const DarbouxTransform& t);
/// rho -> 1 at u = 0 (trigonometric) or x -> infinity (otherwise).
bool check_normalization(const DarbouxTransform& t);

struct Basepoint {
    GaussianRational x, u;
};
/// First point of 1, 2, 1/2, 3, 1/3, ... where neither wave has a pole (as a function of z).
Basepoint find_basepoint(const DarbouxTransform& t, unsigned search = 40);

/// Framed derivatives (D + frame z)^i rho for i = 0..count, evaluated at the basepoint.
std::vector<RatFunc> framed_derivatives_at(const ReducedWave& w, unsigned count, const Basepoint& at);

/// res_z v_i v*_j = 0 for i <= imax, j <= jmax.
bool check_orthogonality(const DarbouxTransform& t, unsigned imax, unsigned jmax);
bool check_orthogonality(const DarbouxTransform& t, unsigned imax, unsigned jmax, const Basepoint& at);

/// Same transform with rho* multiplied by (z + 1)/z (negative control).
DarbouxTransform perturbed_dual(const DarbouxTransform& t);

struct InclusionReport {
    bool f_clears = false;       // f v_i polynomial
    bool g_inside = false;       // g z^k in the span
    std::size_t codimension = 0; // in f^{-1} C[z] over the sampled window
    bool ok = false;             // all of the above, codimension == deg f
};
InclusionReport check_grassmannian_inclusions(const DarbouxTransform& t, unsigned degree_bound);

/// Kernel condition f_j = p_j((1+z) d/dz) e^{xz} at z = lambda_j; p_j is a polynomial in s.
struct AdelicPoint {
    MultiPoly p;
    GaussianRational lambda;
};
QuasiPoly adelic_kernel_element(const AdelicPoint& point);
DarbouxTransform build_adelic(const std::vector<AdelicPoint>& points);

std::string kind_name(DarbouxTransform::Kind kind);

} // namespace trigdarboux
