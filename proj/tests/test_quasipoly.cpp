#include "doctest.h"

#include "quasipoly.hpp"
#include "test_support.hpp"

using namespace trigdarboux;
using namespace trigdarboux::testing;

namespace {

// (d - mu) applied directly from the definition of the derivative.
QuasiPoly apply_factor(const QuasiPoly& f, const GaussianRational& mu) { return qp_derivative(f) - mu * f; }

QuasiPoly apply_h(QuasiPoly f, const SpectralData& data) {
    for (const auto& g : data.groups())
        for (std::size_t j = 0; j < g.mult.size(); ++j)
            for (unsigned m = 0; m < g.mult[j]; ++m) f = apply_factor(f, g.lambda - GaussianRational(static_cast<long>(j)));
    return f;
}

QuasiPoly random_qp(Gen& g, const std::vector<GaussianRational>& exps) {
    QuasiPoly f;
    for (const auto& e : exps)
        if (g.coin()) f += QuasiPoly(e, g.poly({Var::x}, 2, 3));
    return f;
}

KernelChainSpec random_chain(Gen& g, const SpectralData& data) {
    KernelChainSpec spec;
    spec.r = static_cast<std::size_t>(g.integer(0, static_cast<long>(data.size()) - 1));
    const auto& mult = data.groups()[spec.r].mult;
    for (unsigned j = 0; j < mult.size(); ++j)
        for (unsigned k = 0; k < mult[j]; ++k)
            if (g.coin()) spec.terms.push_back({k, j, g.nonzero_scalar()});
    if (spec.terms.empty()) spec.terms.push_back({0, 0, GaussianRational(1)});
    return spec;
}

} // namespace

TEST_CASE("quasi-polynomial derivative") {
    GaussianRational lambda(mpq_class(2, 3), mpq_class(1));
    auto xe = QuasiPoly::monomial(lambda, 1);
    CHECK(qp_derivative(xe) == QuasiPoly(lambda, MultiPoly(1) + MultiPoly::var(Var::x) * lambda));
    CHECK(qp_derivative(QuasiPoly::monomial(0)).is_zero());

    Gen g(101);
    std::vector<GaussianRational> exps{0, 1, GaussianRational(mpq_class(1, 2)), GaussianRational(0, 1)};
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_qp(g, exps), h = random_qp(g, exps);
        CHECK(qp_derivative(f * h) == qp_derivative(f) * h + f * qp_derivative(h));
        auto c = g.scalar();
        CHECK(qp_derivative(f + c * h) == qp_derivative(f) + c * qp_derivative(h));
    }
}

TEST_CASE("wronskian") {
    GaussianRational a(3), b(mpq_class(-1, 2), mpq_class(2));
    auto ea = QuasiPoly::monomial(a), eb = QuasiPoly::monomial(b);
    CHECK(wronskian({ea, eb}) == QuasiPoly::monomial(a + b, 0, b - a));
    CHECK(wronskian({ea}) == ea);
    CHECK(wronskian({ea, ea}).is_zero());

    Gen g(7);
    std::vector<GaussianRational> exps{0, -1, GaussianRational(mpq_class(1, 3))};
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<QuasiPoly> fs{random_qp(g, exps), random_qp(g, exps), random_qp(g, exps)};
        auto w = wronskian(fs);
        std::swap(fs[0], fs[2]);
        CHECK(wronskian(fs) == GaussianRational(-1) * w);
        auto extra = random_qp(g, exps);
        auto c = g.scalar();
        std::vector<QuasiPoly> f1 = fs, f2 = fs, f3 = fs;
        f2[1] = extra;
        f3[1] = fs[1] + c * extra;
        CHECK(wronskian(f3) == wronskian(f1) + c * wronskian(f2));
    }
}

TEST_CASE("lowering") {
    GaussianRational lambda(5);
    CHECK(lowering(QuasiPoly::monomial(lambda, 2)) == QuasiPoly::monomial(lambda, 1, 2));
    CHECK(lowering(QuasiPoly::monomial(lambda)).is_zero());
    QuasiPoly f = QuasiPoly::monomial(lambda, 3);
    for (int i = 0; i < 3; ++i) f = lowering(f);
    CHECK(!f.is_zero());
    CHECK(lowering(f).is_zero());
}

TEST_CASE("chain expansion") {
    GaussianRational lambda(mpq_class(1, 3)), a(2);
    SpectralData data({{lambda, {2, 1}}});
    KernelChainSpec spec{0, {{1, 0, 1}, {0, 1, -a}}};
    CHECK(spec.depth() == 1);
    auto out = chain_expand(spec, data);
    REQUIRE(out.size() == 2);
    // hand differentiation of F = y e^{lambda x} - a e^{(lambda-1)x}
    CHECK(out[0] == QuasiPoly::monomial(lambda, 1) - QuasiPoly::monomial(lambda - 1, 0, a));
    CHECK(out[1] == QuasiPoly::monomial(lambda));
    for (const auto& f : out) CHECK(apply_h(f, data).is_zero());

    auto single = chain_expand({0, {{0, 0, 1}}}, data);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == QuasiPoly::monomial(lambda));

    CHECK_THROWS_AS(chain_expand({0, {{2, 0, 1}}}, data), Error);
    CHECK_THROWS_AS(chain_expand({0, {{0, 2, 1}}}, data), Error);
    CHECK_THROWS_AS(chain_expand({1, {{0, 0, 1}}}, data), Error);
}

TEST_CASE("chain outputs satisfy the lowering identity and lie in ker h") {
    Gen g(2024);
    for (int trial = 0; trial < 40; ++trial) {
        SpectralData data({{GaussianRational(mpq_class(1, 2), mpq_class(g.integer(-2, 2))), {3, 2, 1}},
                           {GaussianRational(mpq_class(1, 3)), {2, 1}}});
        auto spec = random_chain(g, data);
        auto out = chain_expand(spec, data);
        REQUIRE(out.size() == spec.depth() + 1);
        for (std::size_t l = 0; l < out.size(); ++l) {
            CHECK(apply_h(out[l], data).is_zero());
            QuasiPoly next = l + 1 < out.size() ? out[l + 1] : QuasiPoly();
            CHECK(lowering(out[l]) == GaussianRational(static_cast<long>(l + 1)) * next);
        }
    }
}

TEST_CASE("base exponent factorization") {
    GaussianRational c(mpq_class(1, 2)), a(3);
    auto f = QuasiPoly::monomial(c) - QuasiPoly::monomial(c - 1, 0, a);
    auto fac = factor_base_exponent(f);
    CHECK(fac.mu == c);
    CHECK(fac.poly == MultiPoly(1) - MultiPoly::var(Var::u) * a);
    auto xf = factor_base_exponent(QuasiPoly::monomial(c, 1));
    CHECK(xf.mu == c);
    CHECK(xf.poly == MultiPoly::var(Var::x));
    CHECK_THROWS_AS(factor_base_exponent(QuasiPoly::monomial(c) + QuasiPoly::monomial(GaussianRational(0, 1))), Error);

    Gen g(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto q = random_qp(g, {c, c - 1, c - 3, c + 2});
        if (q.is_zero()) continue;
        auto r = factor_base_exponent(q);
        CHECK(from_base_factorization(r.mu, r.poly) == q);
    }
}

TEST_CASE("spectral data validation") {
    CHECK_THROWS_AS(SpectralData({{GaussianRational(1), {1}}, {GaussianRational(2), {1}}}), Error);
    CHECK_THROWS_AS(SpectralData({{GaussianRational(1), {0, 1}}}), Error);
    CHECK_NOTHROW(SpectralData({{GaussianRational(1), {1}}, {GaussianRational(mpq_class(3, 2)), {1}}}));
    SpectralData d({{GaussianRational(2), {1, 1}}});
    auto z = MultiPoly::var(Var::z);
    CHECK(d.h_polynomial() == (z - MultiPoly(2)) * (z - MultiPoly(1)));
    CHECK(d.locate(GaussianRational(1)) == std::make_pair(std::size_t{0}, 1u));
    CHECK(!d.locate(GaussianRational(0)).has_value());
}
