#include <cmath>

#include "bispectral.hpp"
#include "calogero_moser.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace trigdarboux;
using namespace trigdarboux::testing;

namespace {

ScalarMatrix one_by_one(const GaussianRational& c) { return ScalarMatrix(1, 1, {c}); }

const GaussianRational c0(mpq_class(1, 3), mpq_class(0));
const GaussianRational a0(2);

RatFunc swap_to_trig_variables(const RatFunc& sigma) {
    // n <- z, z <- w - 1
    return sigma.substitute({{Var::n, X(Var::z)}, {Var::z, X(Var::w) - RatFunc(1)}});
}

} // namespace

TEST_CASE("rank conditions") {
    CHECK(is_trig_cm(one_by_one(a0), one_by_one(c0)));
    CHECK(is_rational_cm(ScalarMatrix(0, 0), ScalarMatrix(0, 0)));
    CHECK(is_trig_cm(ScalarMatrix(0, 0), ScalarMatrix(0, 0)));
    CHECK_FALSE(is_trig_cm(one_by_one(GaussianRational(0)), one_by_one(c0)));
    CHECK_THROWS_AS(is_rational_cm(ScalarMatrix(2, 2), ScalarMatrix(1, 1)), Error);

    Rng rng(5);
    for (std::size_t n = 1; n <= 3; ++n) {
        CMPairRational p = random_rational_pair(rng, n, false);
        ScalarMatrix comm = p.X * p.Z - p.Z * p.X + ScalarMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(comm(i, j) == GaussianRational(1));
        CHECK(is_rational_cm(p.X, p.Z));
    }
}

TEST_CASE("rank condition on e^Z X e^{-Z} - X agrees with the trigonometric test") {
    Rng rng(6);
    for (std::size_t n = 1; n <= 3; ++n) {
        CMPairTrig t = trig_from_rational(random_rational_pair(rng, n));
        ScalarMatrix y = t.Z - ScalarMatrix::identity(n);
        CHECK(shifted_rank_check(t.X, y, t.Z) == is_trig_cm(t.X, t.Z));
        CHECK(shifted_rank_check(t.X, y, t.Z));
        ScalarMatrix zx = t.X * t.Z - y * t.X;
        CHECK(rank(zx) == rank(t.X * t.Z * inverse(t.X) - t.Z + ScalarMatrix::identity(n)));
    }
    CHECK_FALSE(shifted_rank_check(ScalarMatrix(2, 2), ScalarMatrix(2, 2), ScalarMatrix(2, 2)));
    CHECK(shifted_rank_check(one_by_one(a0), one_by_one(c0 - GaussianRational(1)), one_by_one(c0)));
}

TEST_CASE("rational to trigonometric map") {
    GaussianRational x0(3), z0(mpq_class(1, 2), mpq_class(0));
    CMPairTrig t = trig_from_rational({one_by_one(x0), one_by_one(z0)});
    CHECK(t.X == one_by_one(GaussianRational(1) + z0));
    CHECK(t.Z == one_by_one(x0 * (GaussianRational(1) + z0)));
    CHECK(trig_from_rational({ScalarMatrix(0, 0), ScalarMatrix(0, 0)}).X.rows() == 0);
    CHECK_THROWS_AS(trig_from_rational({one_by_one(x0), one_by_one(GaussianRational(-1))}), Error);

    Rng rng(7);
    for (std::size_t n = 2; n <= 3; ++n)
        for (int k = 0; k < 3; ++k) {
            CMPairTrig tt = trig_from_rational(random_rational_pair(rng, n));
            CHECK(is_trig_cm(tt.X, tt.Z));
        }
}

TEST_CASE("determinant waves for one particle") {
    GaussianRational x0(3), z0(mpq_class(1, 2), mpq_class(0));
    RatFunc x = X(Var::x), z = X(Var::z), w = X(Var::w), n = X(Var::n);
    CMPairRational p{one_by_one(x0), one_by_one(z0)};
    CHECK(rational_wave(p) == RatFunc(1) - (RatFunc(1) / ((x - RatFunc(x0)) * (z - RatFunc(z0)))));
    CHECK(discrete_wave_cm(p) ==
          RatFunc(1) + RatFunc(1) / ((RatFunc(x0) - n / RatFunc(GaussianRational(1) + z0)) * (z - RatFunc(z0))));

    CMPairTrig t{one_by_one(a0), one_by_one(c0)};
    RatFunc expected = ((w - RatFunc(a0)) * (z - RatFunc(c0)) - RatFunc(a0)) / ((w - RatFunc(a0)) * (z - RatFunc(c0)));
    CHECK(trig_wave(t) == expected);
    CHECK(sato_quotient(t) == expected);
    CHECK(tau_stationary(t) == RatFunc(1) - RatFunc(a0) * X(Var::u));

    // Cross-module: equals the wave of the single-step Darboux transform.
    DarbouxTransform d = build_trig(SpectralData({{c0, {1, 1}}}), {{0, {{0, 0, GaussianRational(1)}, {0, 1, -a0}}}});
    CHECK(wave_in_w(d) == expected);

    CMPairRational empty{ScalarMatrix(0, 0), ScalarMatrix(0, 0)};
    CHECK(rational_wave(empty) == RatFunc(1));
    CHECK(discrete_wave_cm(empty) == RatFunc(1));
    CHECK(trig_wave({ScalarMatrix(0, 0), ScalarMatrix(0, 0)}) == RatFunc(1));
    CHECK(sato_quotient({ScalarMatrix(0, 0), ScalarMatrix(0, 0)}) == RatFunc(1));
}

TEST_CASE("waves are conjugation invariant and normalized") {
    Rng rng(8);
    for (std::size_t n = 1; n <= 3; ++n) {
        CMPairRational p = random_rational_pair(rng, n, false);
        ScalarMatrix g = random_invertible(rng, n);
        CHECK(rational_wave(p) == rational_wave(conjugate(p, g)));
        CHECK(discrete_wave_cm(p) == discrete_wave_cm(conjugate(p, g)));
        CMPairTrig t = trig_from_rational(p);
        RatFunc rho = trig_wave(t);
        CHECK(rho == trig_wave(conjugate(t, g)));
        CHECK(degree_balanced(rho, Var::w));
        CHECK(degree_balanced(discrete_wave_cm(p), Var::n));
    }
}

TEST_CASE("swap identity, Sato quotient and involution on random pairs") {
    Rng rng(9);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k < 2; ++k) {
            CMPairRational p = random_rational_pair(rng, n);
            CMPairTrig t = trig_from_rational(p);
            RatFunc rho = trig_wave(t);
            CHECK(rho == swap_to_trig_variables(discrete_wave_cm(p)));
            CHECK(sato_quotient(t) == rho);
            CHECK(involution_check(p));
        }
}

TEST_CASE("reconstruction from a trigonometric pair") {
    CMPairTrig t{one_by_one(a0), one_by_one(c0)};
    DarbouxTransform d = reconstruct_transform(t);
    RatFunc frac = RatFunc(a0) * X(Var::u) / (RatFunc(1) - RatFunc(a0) * X(Var::u));
    CHECK(d.P == DiffOp({-RatFunc(c0) - frac, RatFunc(1)}));
    CHECK(d.f == X(Var::z).num() - MultiPoly(c0));
    CHECK(d.g == X(Var::z).num() - MultiPoly(c0 - GaussianRational(1)));

    DarbouxTransform id = reconstruct_transform({ScalarMatrix(0, 0), ScalarMatrix(0, 0)});
    CHECK(id.P == DiffOp::identity());
    CHECK(id.Q == DiffOp::identity());

    Rng rng(10);
    for (int k = 0; k < 3; ++k) {
        CMPairTrig tt = trig_from_rational(random_rational_pair(rng, 2));
        DarbouxTransform r = reconstruct_transform(tt);
        CHECK(check_factorization(r));
        CHECK(check_eigen(r));
        CHECK(check_normalization(r));
        CHECK(u_to_w(r.psi.rho) == trig_wave(tt));
        CHECK(check_orthogonality(r, 4, 4));
        CHECK(verify_difference_eigen(r));
    }
}

TEST_CASE("float tau functions") {
    Rng rng(11);
    CMPairRational p = random_rational_pair(rng, 2);
    std::complex<double> dx = det(p.X).to_complex();
    CHECK(std::abs(tau_rational_numeric(p, {}) - dx) < 1e-12);
    CHECK(std::abs(tau_rational_numeric(p, {0.0, 0.0}, 0.0) - dx) < 1e-12);

    // Closed form with t = (t1) against the exact determinant.
    GaussianRational t1(mpq_class(1, 3), mpq_class(0)), n(2);
    ScalarMatrix m = p.X - n * inverse(ScalarMatrix::identity(2) + p.Z) - t1 * ScalarMatrix::identity(2);
    CHECK(std::abs(tau_rational_numeric(p, {t1.to_complex()}, 2.0) - det(m).to_complex()) < 1e-9);

    // Trigonometric tau at t = (x, 0, ...) against det(I - e^{-x} X).
    CMPairTrig t = trig_from_rational(p);
    RatFunc exact = tau_stationary(t);
    for (double x : {-0.7, 0.0, 0.4, 1.3}) {
        std::complex<double> val = exact.evaluate_float({{Var::u, std::exp(-x)}});
        CHECK(std::abs(tau_trig_numeric(t, {x}) - val) < 1e-9);
        CHECK(std::abs(tau_trig_numeric(t, {x, 0.0, 0.0}) - val) < 1e-9);
    }
}

TEST_CASE("shift property") {
    CMPairRational p{one_by_one(GaussianRational(3)), one_by_one(GaussianRational(mpq_class(1, 2), mpq_class(0)))};
    ShiftReport r = verify_shift_property(p, 2, 60, 1e-9);
    CHECK(r.ok);
    CHECK(r.difference < 1e-12);
    // n / (1 + z0) by hand: det(3 - 2/(3/2)) = 5/3
    CHECK(std::abs(tau_rational_numeric(p, {}, 2.0) - std::complex<double>(5.0 / 3.0)) < 1e-12);
    ShiftReport zero = verify_shift_property(p, 0, 5, 1e-9, {0.25, -0.5});
    CHECK(zero.ok);
    CHECK(zero.difference == 0);

    Rng rng(12);
    for (int k = 0; k < 3; ++k) {
        CMPairRational q = random_contractive_pair(rng, 2);
        CHECK(spectral_radius(q.Z) < 0.7);
        CHECK(verify_shift_property(q, 3, 60, 1e-9, {0.1, 0.2}).ok);
    }
    CMPairRational big{one_by_one(GaussianRational(1)), one_by_one(GaussianRational(2))};
    CHECK_THROWS_AS(verify_shift_property(big, 1, 60, 1e-9), Error);
}
