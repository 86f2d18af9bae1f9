#include "doctest.h"

#include <functional>
#include <numeric>

#include "exact/serialize.hpp"
#include "test_support.hpp"

using namespace trigdarboux;
using namespace trigdarboux::testing;

namespace {

// Leibniz expansion, independent of the elimination code.
template <class T>
T leibniz_det(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    T total(0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        T term(1);
        for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
        total = inversions % 2 ? total - term : total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace

TEST_CASE("gaussian rationals satisfy the field axioms") {
    Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = g.scalar(), b = g.scalar(), c = g.scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
    }
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
    CHECK(GaussianRational::parse("6/4", "-2/4") == GaussianRational(mpq_class(3, 2), mpq_class(-1, 2)));
    CHECK_THROWS_AS(GaussianRational::parse("1/0"), Error);
    CHECK_THROWS_AS(GaussianRational(0).inverse(), PoleError);
}

TEST_CASE("polynomial gcd") {
    const auto x = P(Var::x), u = P(Var::u), z = P(Var::z);
    // normalized to leading coefficient 1: u > x in the term order, so x - u becomes u - x
    CHECK(poly_gcd(x * x - u * u, x - u) == (x - u).monic());
    CHECK((x - u).monic() == u - x);
    CHECK(poly_gcd(MultiPoly(3) * x + MultiPoly(6), MultiPoly()) == x + 2);
    CHECK(poly_gcd(MultiPoly(), MultiPoly()).is_zero());
    CHECK(poly_gcd(x + 1, MultiPoly(7)) == MultiPoly(1));

    Gen g(7);
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly f = g.poly({Var::x, Var::u, Var::z}, 2, 3);
        if (f.is_constant()) continue;
        MultiPoly p = g.poly({Var::x, Var::u}, 2, 3), q = g.poly({Var::u, Var::z}, 2, 3);
        MultiPoly a = f * p, b = f * q;
        MultiPoly d = poly_gcd(a, b);
        CAPTURE(f.to_string());
        CHECK(d.leading_coeff().is_one());
        CHECK(divide_exact(a, d).has_value());
        CHECK(divide_exact(b, d).has_value());
        CHECK(divide_exact(d, f).has_value());
    }
    // Univariate over Q(i).
    auto i = GaussianRational::i();
    CHECK(poly_gcd((z - i) * (z + 2), (z - i) * (z - 3)) == z - i);
}

TEST_CASE("rational function reduction") {
    const auto x = P(Var::x), u = P(Var::u);
    auto r = RatFunc::make(x * x - u * u, x - u);
    CHECK(r.num() == x + u);
    CHECK(r.den() == MultiPoly(1));
    auto zero = RatFunc::make(MultiPoly(), x + 1);
    CHECK(zero.is_zero());
    CHECK(zero.den() == MultiPoly(1));
    CHECK_THROWS_AS(RatFunc::make(x, MultiPoly()), PoleError);

    Gen g(5);
    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly p = g.poly({Var::x, Var::u}, 2, 3), q = g.poly({Var::x, Var::u}, 2, 3),
                  s = g.poly({Var::x, Var::u}, 2, 3);
        if (p.is_zero() || s.is_zero()) continue;
        RatFunc f = RatFunc::make(p * q, p * s);
        CHECK(poly_gcd(f.num(), f.den()).is_constant());
        CHECK(f.den().leading_coeff().is_one());
        CHECK(f.num() * (p * s) == f.den() * (p * q));
    }
}

TEST_CASE("rational function arithmetic keeps the invariants") {
    Gen g(9);
    auto rnd = [&] {
        MultiPoly d;
        do d = g.poly({Var::u, Var::z}, 2, 3);
        while (d.is_zero());
        return RatFunc::make(g.poly({Var::u, Var::z}, 2, 3), d);
    };
    for (int trial = 0; trial < 30; ++trial) {
        RatFunc a = rnd(), b = rnd(), c = rnd();
        for (const RatFunc& r : {a + b, a * b, a - c, (a + b) * c}) {
            CHECK(poly_gcd(r.num(), r.den()).is_constant());
            CHECK(r.den().leading_coeff().is_one());
        }
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("determinants") {
    ScalarMatrix m(2, 2, {2, 3, 5, 7});
    CHECK(det(m) == GaussianRational(2 * 7 - 3 * 5));
    CHECK(det(ScalarMatrix(0, 0)) == GaussianRational(1));
    CHECK(det(RatMatrix(0, 0)) == RatFunc(1));
    CHECK_THROWS_AS(det(ScalarMatrix(2, 3)), Error);

    Gen g(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = g.matrix(3), b = g.matrix(3);
        CHECK(det(a * b) == det(a) * det(b));
        CHECK(det(a.transpose()) == det(a));
        CHECK(det(a) == leibniz_det(a));
    }
    for (int trial = 0; trial < 10; ++trial) {
        PolyMatrix pm(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) pm(i, j) = g.poly({Var::x, Var::u}, 2, 2);
        CHECK(det(pm) == leibniz_det(pm));
    }
    const auto w = X(Var::w), z = X(Var::z);
    RatMatrix rm(2, 2, {RatFunc(1) / (w - 1), z, RatFunc(2), RatFunc(1) / (z * w)});
    CHECK(det(rm) == leibniz_det(rm));
    CHECK(det(rm) == RatFunc(1) / ((w - 1) * z * w) - 2 * z);
}

TEST_CASE("rank") {
    CHECK(rank(ScalarMatrix(2, 2, {1, 1, 1, 1})) == 1);
    CHECK(rank(ScalarMatrix::identity(4)) == 4);
    ScalarMatrix ones(3, 3, std::vector<GaussianRational>(9, GaussianRational(1)));
    CHECK(rank(ones) == 1);
    Gen g(17);
    for (int trial = 0; trial < 20; ++trial) {
        ScalarMatrix a(3, 3);
        // rank <= 2 by construction: third row a combination of the first two
        for (std::size_t j = 0; j < 3; ++j) {
            a(0, j) = g.scalar();
            a(1, j) = g.scalar();
        }
        auto c0 = g.scalar(), c1 = g.scalar();
        for (std::size_t j = 0; j < 3; ++j) a(2, j) = c0 * a(0, j) + c1 * a(1, j);
        auto s = g.invertible(3), t = g.invertible(3);
        CHECK(rank(s * a * t) == rank(a));
        CHECK(rank(a) <= 2);
    }
}

TEST_CASE("inverse") {
    Gen g(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = g.invertible(3);
        CHECK(a * inverse(a) == ScalarMatrix::identity(3));
    }
    CHECK_THROWS_AS(inverse(ScalarMatrix(2, 2, {1, 2, 2, 4})), Error);
    const auto w = X(Var::w);
    RatMatrix m(2, 2, {w, RatFunc(1), RatFunc(1), w});
    CHECK(m * inverse(m) == RatMatrix::identity(2));
}

TEST_CASE("residue at infinity") {
    const auto z = X(Var::z);
    GaussianRational a(3), b(mpq_class(-1, 2));
    CHECK(residue_at_infinity(RatFunc(1) / (z - RatFunc(a))) == GaussianRational(1));
    CHECK(residue_at_infinity(z * z + 3 * z).is_zero());
    CHECK(residue_at_infinity(z / ((z - RatFunc(a)) * (z - RatFunc(b)))) == GaussianRational(1));
    CHECK_THROWS_AS(residue_at_infinity(z / (z - X(Var::u))), Error);

    // Partial-fraction oracle: with simple poles a_i, the z^{-1} coefficient at
    // infinity equals sum_i N(a_i)/D'(a_i).
    Gen g(31);
    for (int trial = 0; trial < 25; ++trial) {
        int npoles = static_cast<int>(g.integer(1, 4));
        std::vector<GaussianRational> poles;
        while (static_cast<int>(poles.size()) < npoles) {
            auto p = g.scalar();
            if (std::find(poles.begin(), poles.end(), p) == poles.end()) poles.push_back(p);
        }
        MultiPoly den(1);
        for (const auto& p : poles) den *= MultiPoly::var(Var::z) - MultiPoly(p);
        MultiPoly num = g.poly({Var::z}, static_cast<unsigned>(npoles + 1), 4);
        if (num.is_zero()) continue;
        // strip the polynomial part so only the proper part matters for the oracle
        RatFunc f = RatFunc::make(num, den);
        GaussianRational oracle(0);
        MultiPoly dprime = den.derivative(Var::z);
        for (const auto& p : poles)
            oracle += num.evaluate(Var::z, p).constant_value() / dprime.evaluate(Var::z, p).constant_value();
        CHECK(residue_at_infinity(f) == oracle);
        // derivative has zero residue; linearity
        CHECK(residue_at_infinity(f.derivative(Var::z)).is_zero());
        CHECK(residue_at_infinity(f + f * RatFunc(GaussianRational(2))) == oracle * GaussianRational(3));
    }
}

TEST_CASE("evaluation") {
    const auto x = X(Var::x), u = X(Var::u);
    CHECK((x + u).evaluate(Assignment{{Var::x, 1}, {Var::u, 2}}) == GaussianRational(3));
    CHECK_THROWS_AS((RatFunc(1) / (x - 1)).evaluate(Assignment{{Var::x, 1}}), PoleError);
    try {
        (RatFunc(1) / (x - 1)).evaluate(Assignment{{Var::x, 1}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Pole);
    }

    Gen g(41);
    for (int trial = 0; trial < 20; ++trial) {
        RatFunc f = RatFunc::make(g.poly({Var::x, Var::z}, 3, 4), g.poly({Var::x, Var::z}, 2, 3) + MultiPoly(100));
        auto xv = g.scalar(), zv = g.scalar();
        GaussianRational exact;
        try {
            exact = f.evaluate({{Var::x, xv}, {Var::z, zv}});
        } catch (const PoleError&) {
            continue;
        }
        auto fl = f.evaluate_float(FloatAssignment{{Var::x, xv.to_complex()}, {Var::z, zv.to_complex()}});
        CHECK(std::abs(fl - exact.to_complex()) < 1e-12 * std::max(1.0, std::abs(exact.to_complex())));
    }
}

TEST_CASE("substitution") {
    const auto w = X(Var::w), z = X(Var::z), n = X(Var::n), u = X(Var::u);
    RatFunc rho = (z - 2 - RatFunc(3) / (w - 3)) / (z - 2);
    // simultaneous: z -> n, w -> 1 + z
    RatFunc sigma = rho.substitute({{Var::z, n}, {Var::w, 1 + z}});
    CHECK(sigma == (n - 2 - RatFunc(3) / (z - 2)) / (n - 2));
    CHECK((RatFunc(1) / u).substitute({{Var::u, RatFunc(1) / w}}) == w);
}

TEST_CASE("json round trip") {
    Gen g(2);
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly p = g.poly({Var::x, Var::u, Var::z}, 3, 5);
        CHECK(io::poly_from_json(io::to_json(p)) == p);
        auto m = g.matrix(2);
        CHECK(io::matrix_from_json(io::to_json(m)) == m);
    }
    auto c = GaussianRational(mpq_class(-3, 7), mpq_class(1, 2));
    auto j = io::to_json(c);
    CHECK(j["re"] == "-3/7");
    CHECK(j["im"] == "1/2");
    CHECK(io::scalar_from_json(j) == c);
}
