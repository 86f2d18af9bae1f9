#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "corpus.hpp"
#include "darboux.hpp"
#include "exact/matrix.hpp"

namespace trigdarboux {

/// rank([X, Z] + I) = 1.
struct CMPairRational {
    ScalarMatrix X, Z;
    std::size_t size() const { return X.rows(); }
};

/// X invertible, rank(X Z X^{-1} - Z + I) = 1.
struct CMPairTrig {
    ScalarMatrix X, Z;
    std::size_t size() const { return X.rows(); }
};

bool is_rational_cm(const ScalarMatrix& X, const ScalarMatrix& Z);
bool is_trig_cm(const ScalarMatrix& X, const ScalarMatrix& Z);
/// rank(X Z - Y X) = 1.
bool shifted_rank_check(const ScalarMatrix& X, const ScalarMatrix& Y, const ScalarMatrix& Z);

/// X = I + Zt^T, Z = Xt^T (I + Zt^T). Throws when I + Zt is singular.
CMPairTrig trig_from_rational(const CMPairRational& p);

/// det(I - (xI - X)^{-1} (zI - Z)^{-1}) in (x, z).
RatFunc rational_wave(const CMPairRational& p);
/// det(I - X (wI - X)^{-1} (zI - Z)^{-1}) in (w, z).
RatFunc trig_wave(const CMPairTrig& p);
/// det(I + (X - n (I + Z)^{-1})^{-1} (zI - Z)^{-1}) in (n, z).
RatFunc discrete_wave_cm(const CMPairRational& p);
/// det(I - u X).
RatFunc tau_stationary(const CMPairTrig& p);
/// det(I - u X M) / det(I - u X) with M = (zI - Z + I)(zI - Z)^{-1}, returned in (w, z).
RatFunc sato_quotient(const CMPairTrig& p);

/// Both waves of the pair agree after (x, z) -> (z, x) on the transposed swap (Z^T, X^T).
bool involution_check(const CMPairRational& p);

/// Darboux bundle read off from trig_wave with f = det(zI - Z), h = f det(zI - Z + I).
/// Throws Error(Inconsistent) when h is not right-divisible by P.
DarbouxTransform reconstruct_transform(const CMPairTrig& p);

CMPairRational conjugate(const CMPairRational& p, const ScalarMatrix& g);
CMPairTrig conjugate(const CMPairTrig& p, const ScalarMatrix& g);

// Float side.

using TimeVector = std::vector<std::complex<double>>;  // t_1, t_2, ...

/// det(X - sum k t_k Z^{k-1}), or with - n (I + Z)^{-1} added when n is given.
std::complex<double> tau_rational_numeric(const CMPairRational& p, const TimeVector& t,
                                          std::optional<double> n = std::nullopt);
/// det(I - X exp(sum t_k ((Z - I)^k - Z^k))).
std::complex<double> tau_trig_numeric(const CMPairTrig& p, const TimeVector& t);

double spectral_radius(const ScalarMatrix& m);

struct ShiftReport {
    double difference = 0;
    double radius = 0;
    bool ok = false;
};
/// Compares the shifted-time determinant (t_k + (-1)^{k+1} n / k, k <= K) with the
/// closed form carrying -n (I + Z)^{-1}. Throws when the spectral radius of Z is >= 1.
ShiftReport verify_shift_property(const CMPairRational& p, long n, unsigned K, double tol,
                                  const TimeVector& t = {});

// Samplers.

/// Diagonal X with distinct entries, Z_ij = 1/(x_i - x_j) off the diagonal, random diagonal;
/// I + Z invertible. Optionally conjugated by a random invertible matrix.
CMPairRational random_rational_pair(Rng& rng, std::size_t n, bool conjugated = true);
/// As above with the spectral radius of Z below max_radius.
CMPairRational random_contractive_pair(Rng& rng, std::size_t n, double max_radius = 0.7);
ScalarMatrix random_invertible(Rng& rng, std::size_t n);

} // namespace trigdarboux
