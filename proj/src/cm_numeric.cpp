#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "calogero_moser.hpp"
#include "errors.hpp"

namespace trigdarboux {

namespace {

using CMatrix = Eigen::MatrixXcd;

CMatrix to_eigen(const ScalarMatrix& m) {
    CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_complex();
    return out;
}

// Scaling and squaring with a degree-20 Taylor polynomial.
CMatrix expm(const CMatrix& a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = norm > 0.5 ? static_cast<int>(std::ceil(std::log2(norm / 0.5))) : 0;
    CMatrix scaled = a / std::pow(2.0, squarings);
    CMatrix term = CMatrix::Identity(a.rows(), a.cols()), sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

std::complex<double> det(const CMatrix& m) {
    if (m.rows() == 0) return 1.0;
    return m.determinant();
}

// sum_k k t_k Z^{k-1}
CMatrix time_sum(const CMatrix& z, const TimeVector& t) {
    const auto n = z.rows();
    CMatrix out = CMatrix::Zero(n, n), power = CMatrix::Identity(n, n);
    for (std::size_t k = 1; k <= t.size(); ++k) {
        out += (static_cast<double>(k) * t[k - 1]) * power;
        power = power * z;
    }
    return out;
}

} // namespace

std::complex<double> tau_rational_numeric(const CMPairRational& p, const TimeVector& t, std::optional<double> n) {
    CMatrix x = to_eigen(p.X), z = to_eigen(p.Z);
    CMatrix m = x - time_sum(z, t);
    if (n) {
        CMatrix one_plus = CMatrix::Identity(z.rows(), z.cols()) + z;
        m -= *n * one_plus.inverse();
    }
    return det(m);
}

std::complex<double> tau_trig_numeric(const CMPairTrig& p, const TimeVector& t) {
    CMatrix x = to_eigen(p.X), z = to_eigen(p.Z);
    const auto n = z.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    CMatrix exponent = CMatrix::Zero(n, n), zk = id, zmk = id;
    for (std::size_t k = 1; k <= t.size(); ++k) {
        zk = zk * z;
        zmk = zmk * (z - id);
        exponent += t[k - 1] * (zmk - zk);
    }
    return det(id - x * expm(exponent));
}

double spectral_radius(const ScalarMatrix& m) {
    if (m.rows() == 0) return 0;
    Eigen::ComplexEigenSolver<CMatrix> solver(to_eigen(m), false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

ShiftReport verify_shift_property(const CMPairRational& p, long n, unsigned K, double tol, const TimeVector& t) {
    require(K >= 1, "truncation order must be at least 1");
    ShiftReport rep;
    rep.radius = spectral_radius(p.Z);
    if (rep.radius >= 1)
        fail(ErrorKind::InvalidInput, "spectral radius of Z is " + std::to_string(rep.radius) +
                                          " >= 1; the shifted series diverges, use the exact discrete wave instead");
    TimeVector shifted(std::max<std::size_t>(K, t.size()));
    for (std::size_t k = 1; k <= shifted.size(); ++k) {
        std::complex<double> base = k <= t.size() ? t[k - 1] : 0.0;
        double step = k <= K ? (k % 2 ? 1.0 : -1.0) * static_cast<double>(n) / static_cast<double>(k) : 0.0;
        shifted[k - 1] = base + step;
    }
    std::complex<double> lhs = tau_rational_numeric(p, shifted);
    std::complex<double> rhs = tau_rational_numeric(p, t, static_cast<double>(n));
    rep.difference = std::abs(lhs - rhs);
    rep.ok = n == 0 ? rep.difference == 0 : rep.difference < tol;
    return rep;
}

} // namespace trigdarboux
