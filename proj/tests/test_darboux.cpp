#include "corpus.hpp"
#include "darboux.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace trigdarboux;
using namespace trigdarboux::testing;

namespace {

const GaussianRational c0(mpq_class(1, 3), mpq_class(0));
const GaussianRational a0(2);

SpectralData one_step(unsigned m0 = 1) { return SpectralData({{c0, {m0, 1}}}); }

KernelChainSpec simple_chain() { return {0, {{0, 0, GaussianRational(1)}, {0, 1, -a0}}}; }

RatFunc frac() { return RatFunc(a0) * X(Var::u) / (RatFunc(1) - RatFunc(a0) * X(Var::u)); }

MultiPoly zlin(const GaussianRational& shift) { return P(Var::z) - MultiPoly(shift); }

} // namespace

TEST_CASE("single-step transform") {
    DarbouxTransform t = build_trig(one_step(), {simple_chain()});
    CHECK(t.P == DiffOp({-RatFunc(c0) - frac(), RatFunc(1)}));
    CHECK(t.Q == DiffOp({-RatFunc(c0) + RatFunc(1) + frac(), RatFunc(1)}));
    CHECK(t.f == zlin(c0));
    CHECK(t.g == zlin(c0 - GaussianRational(1)));
    CHECK(t.psi.rho == (X(Var::z) - RatFunc(c0) - frac()) / (X(Var::z) - RatFunc(c0)));
    CHECK(t.theta == P(Var::w) - MultiPoly(a0));
    CHECK(t.nu == P(Var::w) - MultiPoly(a0));
    RatFunc w = X(Var::w);
    CHECK(t.Pbar == DiffOp({-RatFunc(c0) * (w - RatFunc(a0)) - RatFunc(a0), w - RatFunc(a0)}));
    CHECK(t.Qbar ==
          DiffOp({w + (RatFunc(1) - RatFunc(c0)) * (w - RatFunc(a0)) + RatFunc(a0), w - RatFunc(a0)}));

    // Independent oracles: P kills the kernel element, Q P = h, rho(u = 0) = 1.
    QuasiPoly phi = QuasiPoly::monomial(c0) - a0 * QuasiPoly::monomial(c0 - GaussianRational(1));
    CHECK(annihilator({phi}) == t.P);
    CHECK(check_factorization(t));
    CHECK(check_eigen(t));
    CHECK(check_normalization(t));
    REQUIRE(t.normalized_basis.size() == 1);
    CHECK(t.normalized_basis[0].j == 0);
    CHECK(t.normalized_basis[0].k == 0);
}

TEST_CASE("identity transform") {
    DarbouxTransform t = build_trig(SpectralData(), {});
    CHECK(t.P == DiffOp::identity());
    CHECK(t.Q == DiffOp::identity());
    CHECK(t.f == MultiPoly(1));
    CHECK(t.g == MultiPoly(1));
    CHECK(t.psi.rho == RatFunc(1));
    CHECK(t.psi_star.rho == RatFunc(1));
    // The negative control still fires when rho* = 1.
    CHECK(check_orthogonality(t, 0, 0));
    CHECK_FALSE(check_orthogonality(perturbed_dual(t), 0, 0));
    CHECK(check_orthogonality(t, 3, 3));
    InclusionReport inc = check_grassmannian_inclusions(t, 3);
    CHECK(inc.ok);
    CHECK(inc.codimension == 0);

    // With nonempty data and no chains, the whole of h moves into Q.
    DarbouxTransform e = build_trig(one_step(), {});
    CHECK(e.P == DiffOp::identity());
    CHECK(e.Q == e.h.to_diffop());
    CHECK(e.g == e.h.symbol());
}

TEST_CASE("depth-one chain") {
    SpectralData data = one_step(2);
    KernelChainSpec chain{0, {{1, 0, GaussianRational(1)}, {0, 1, -a0}}};
    DarbouxTransform t = build_trig(data, {chain});
    CHECK(t.P.order() == 2);
    CHECK(t.P.free_of(Var::x));
    CHECK(t.Q.order() == 1);
    CHECK(t.Q * t.P == ConstCoeffOp(zlin(c0).pow(2) * zlin(c0 - GaussianRational(1))).to_diffop());
    CHECK(t.f == zlin(c0).pow(2));
    CHECK(check_eigen(t));
    CHECK(check_normalization(t));
    CHECK(check_orthogonality(t, 4, 4));
}

TEST_CASE("classifier examples") {
    GaussianRational lam(mpq_class(1, 4), mpq_class(0)), mu(mpq_class(1, 2), mpq_class(1));
    SpectralData two({{lam, {1}}, {mu, {1}}});
    CHECK_FALSE(classify_trig({QuasiPoly::monomial(lam) + QuasiPoly::monomial(mu)}, two));
    CHECK(classify_trig({QuasiPoly::monomial(lam), QuasiPoly::monomial(mu)}, two));

    SpectralData data = one_step(2);
    KernelChainSpec chain{0, {{1, 0, GaussianRational(1)}, {0, 1, -a0}}};
    CHECK(classify_trig(chain_expand(chain, data), data));

    SpectralData sq({{lam, {2}}});
    QuasiPoly xe = QuasiPoly::monomial(lam, 1);
    CHECK_FALSE(classify_trig({xe}, sq));
    // Cross-check: the annihilator of {x e^{lam x}} depends on x.
    DiffOp a = annihilator({xe});
    CHECK_FALSE(a.free_of(Var::x));
    CHECK(a == DiffOp({-(RatFunc(1) + RatFunc(lam) * X(Var::x)) / X(Var::x), RatFunc(1)}));

    CHECK_THROWS_AS(classify_trig({QuasiPoly::monomial(lam + GaussianRational(1))}, sq), Error);
}

TEST_CASE("chain basis invariance") {
    SpectralData data = one_step(2);
    KernelChainSpec a{0, {{1, 0, GaussianRational(1)}, {0, 1, -a0}}};
    KernelChainSpec b{0, {{1, 0, GaussianRational(3)}, {0, 1, GaussianRational(-3) * a0}, {0, 0, GaussianRational(5)}}};
    DarbouxTransform ta = build_trig(data, {a}), tb = build_trig(data, {b});
    CHECK(ta.P == tb.P);
    CHECK(ta.f == tb.f);
    CHECK(ta.psi.rho == tb.psi.rho);
}

TEST_CASE("orthogonality and inclusions on the single-step transform") {
    DarbouxTransform t = build_trig(one_step(), {simple_chain()});
    CHECK(check_orthogonality(t, 4, 4));
    CHECK_FALSE(check_orthogonality(perturbed_dual(t), 4, 4));
    InclusionReport inc = check_grassmannian_inclusions(t, 5);
    CHECK(inc.f_clears);
    CHECK(inc.g_inside);
    CHECK(inc.codimension == 1);
    CHECK(inc.ok);
}

TEST_CASE("framed derivatives agree with symbolic differentiation") {
    DarbouxTransform t = build_trig(one_step(), {simple_chain()});
    Basepoint at{GaussianRational(2), GaussianRational(mpq_class(1, 3), mpq_class(0))};
    auto fast = framed_derivatives_at(t.psi, 3, at);
    RatFunc cur = t.psi.rho;
    for (unsigned i = 0; i <= 3; ++i) {
        CHECK(fast[i] == cur.evaluate_partial({{Var::x, at.x}, {Var::u, at.u}}));
        cur = derivation(cur) + X(Var::z) * cur;
    }
    RatFunc x_wave = X(Var::x) * X(Var::z) / (X(Var::x) + RatFunc(1));
    auto fx = framed_derivatives_at({x_wave, -1}, 2, at);
    RatFunc sym = derivation(x_wave) - X(Var::z) * x_wave;
    CHECK(fx[1] == sym.evaluate_partial({{Var::x, at.x}, {Var::u, at.u}}));
}

TEST_CASE("adelic construction") {
    GaussianRational lam(mpq_class(2, 3), mpq_class(0));
    DarbouxTransform t1 = build_adelic({{MultiPoly(1), lam}});
    CHECK(t1.P == DiffOp({-RatFunc(lam), RatFunc(1)}));

    QuasiPoly f1 = adelic_kernel_element({P(Var::s), lam});
    CHECK(f1 == (GaussianRational(1) + lam) * QuasiPoly::monomial(lam, 1));
    DarbouxTransform t2 = build_adelic({{P(Var::s), lam}});
    CHECK(t2.P == DiffOp({-RatFunc(lam) - X(Var::x).inverse(), RatFunc(1)}));
    CHECK(t2.f == zlin(lam));
    CHECK(check_factorization(t2));
    CHECK(check_eigen(t2));
    CHECK(check_normalization(t2));
    CHECK(check_orthogonality(t2, 3, 3));

    GaussianRational mu(mpq_class(-1, 2), mpq_class(1));
    DarbouxTransform t3 = build_adelic({{P(Var::s), lam}, {P(Var::s) + MultiPoly(2), mu}});
    CHECK(t3.P.order() == 2);
    CHECK_FALSE(t3.P.free_of(Var::x));
    CHECK(t3.P.free_of(Var::u));
    CHECK(check_factorization(t3));
    CHECK(check_eigen(t3));
    CHECK(check_orthogonality(t3, 3, 3));

    CHECK_THROWS_AS(build_adelic({{P(Var::s), GaussianRational(-1)}}), Error);
}

TEST_CASE("randomized trigonometric corpus") {
    Rng rng(2024);
    for (int n = 0; n < 12; ++n) {
        TrigSpec spec = random_trig_spec(rng);
        DarbouxTransform t = build_trig(spec.data, spec.chains);
        INFO("P = " << t.P.to_string());
        CHECK(t.P.free_of(Var::x));
        CHECK(t.Q.free_of(Var::x));
        CHECK(check_factorization(t));
        CHECK(check_eigen(t));
        CHECK(check_normalization(t));
        const unsigned k2 = 2 * static_cast<unsigned>(t.P.order());
        CHECK(check_orthogonality(t, k2, k2));
        std::vector<QuasiPoly> basis;
        for (const auto& c : spec.chains) {
            auto e = chain_expand(c, spec.data);
            basis.insert(basis.end(), e.begin(), e.end());
        }
        CHECK(classify_trig(basis, spec.data));
    }
}

TEST_CASE("classifier agrees with x-freeness of the annihilator") {
    Rng rng(77);
    int violating = 0;
    for (int n = 0; n < 20; ++n) {
        SpectralData data = random_spectral_data(rng);
        bool rich = false;
        for (const auto& g : data.groups())
            for (unsigned m : g.mult) rich = rich || m >= 2;
        if (!rich) continue;
        auto basis = random_violating_kernel(rng, data);
        bool oracle = annihilator(basis).free_of(Var::x);
        CHECK(classify_trig(basis, data) == oracle);
        violating += oracle ? 0 : 1;
    }
    CHECK(violating > 0);
}
