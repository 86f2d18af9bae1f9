#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exact/multipoly.hpp"

namespace trigdarboux {

/// Finite sum  sum_lambda p_lambda(x) e^{lambda x}  with p_lambda polynomials in x.
class QuasiPoly {
public:
    using Parts = std::map<GaussianRational, MultiPoly>;

    QuasiPoly() = default;
    /// p(x) e^{lambda x}; p must only involve x.
    QuasiPoly(const GaussianRational& lambda, const MultiPoly& p);

    /// x^k e^{lambda x}
    static QuasiPoly monomial(const GaussianRational& lambda, unsigned k = 0,
                              const GaussianRational& coeff = GaussianRational(1));

    const Parts& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    /// Largest power of x over all parts.
    unsigned x_degree() const;

    QuasiPoly& operator+=(const QuasiPoly& o);
    QuasiPoly& operator-=(const QuasiPoly& o);
    friend QuasiPoly operator+(QuasiPoly a, const QuasiPoly& b) { return a += b; }
    friend QuasiPoly operator-(QuasiPoly a, const QuasiPoly& b) { return a -= b; }
    friend QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b);
    friend QuasiPoly operator*(const GaussianRational& c, const QuasiPoly& a);
    friend bool operator==(const QuasiPoly& a, const QuasiPoly& b) { return a.parts_ == b.parts_; }

    std::string to_string() const;

private:
    void add_part(const GaussianRational& lambda, const MultiPoly& p);
    Parts parts_;
};

/// d/dx, acting as p_lambda -> p_lambda' + lambda p_lambda.
QuasiPoly qp_derivative(const QuasiPoly& f);
QuasiPoly qp_derivative(const QuasiPoly& f, unsigned times);

/// Differentiates each polynomial part, keeping e^{lambda x} fixed.
QuasiPoly lowering(const QuasiPoly& f);

/// Wronskian determinant of the list (nonempty).
QuasiPoly wronskian(const std::vector<QuasiPoly>& fs);

/// f = e^{mu x} p(x, u) with u = e^{-x}, where mu is the exponent every other
/// exponent of f lies below by a nonnegative integer.
struct BaseFactorization {
    GaussianRational mu;
    MultiPoly poly;  // in x and u
};
BaseFactorization factor_base_exponent(const QuasiPoly& f);
/// Inverse of factor_base_exponent.
QuasiPoly from_base_factorization(const GaussianRational& mu, const MultiPoly& p);

/// Constant-coefficient data h(d) = prod_r prod_j (d - lambda_r + j)^{m_{r,j}}.
struct SpectralGroup {
    GaussianRational lambda;
    std::vector<unsigned> mult;  // m_{r,0}, ..., m_{r,n_r}; m_{r,0} > 0
};

class SpectralData {
public:
    SpectralData() = default;
    /// Validates: m_{r,0} > 0 and lambda_r - lambda_s not an integer for r != s.
    explicit SpectralData(std::vector<SpectralGroup> groups);

    const std::vector<SpectralGroup>& groups() const { return groups_; }
    std::size_t size() const { return groups_.size(); }
    /// h as a monic polynomial in z.
    MultiPoly h_polynomial(Var v = Var::z) const;
    unsigned degree() const;
    /// (r, j) with mu = lambda_r - j inside the group's shift range, if any.
    std::optional<std::pair<std::size_t, unsigned>> locate(const GaussianRational& mu) const;
    /// r with mu - lambda_r an integer (any shift), if any.
    std::optional<std::size_t> lattice_of(const GaussianRational& mu) const;

private:
    std::vector<SpectralGroup> groups_;
};

/// One chain: coefficients c_{r,k,j} of y^k e^{(lambda_r - j)x}.
struct ChainTerm {
    unsigned k = 0;
    unsigned j = 0;
    GaussianRational coeff;
};

struct KernelChainSpec {
    std::size_t r = 0;  // index into SpectralData::groups(), zero-based
    std::vector<ChainTerm> terms;

    /// max{k : c_{r,k,j} != 0}; throws if every coefficient vanishes.
    unsigned depth() const;
};

/// psi_l = (1/l!) d_y^l F(y, x)|_{y=x} for l = 0..depth, with
/// F = sum c_{r,k,j} y^k e^{(lambda_r - j)x}.
std::vector<QuasiPoly> chain_expand(const KernelChainSpec& spec, const SpectralData& data);

} // namespace trigdarboux
