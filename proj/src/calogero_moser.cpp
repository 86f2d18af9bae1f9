#include "calogero_moser.hpp"

#include "errors.hpp"

namespace trigdarboux {

namespace {

void require_square_pair(const ScalarMatrix& a, const ScalarMatrix& b) {
    require(a.is_square() && b.is_square() && a.rows() == b.rows(), "matrix pair must be square and of equal size");
}

PolyMatrix to_poly(const ScalarMatrix& m) { return m.map([](const GaussianRational& c) { return MultiPoly(c); }); }

// v I - M as a polynomial matrix.
PolyMatrix shifted_identity(Var v, const ScalarMatrix& m) {
    PolyMatrix out = to_poly(GaussianRational(-1) * m);
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) += MultiPoly::var(v);
    return out;
}

} // namespace

bool is_rational_cm(const ScalarMatrix& X, const ScalarMatrix& Z) {
    require_square_pair(X, Z);
    if (X.rows() == 0) return true;
    return rank(X * Z - Z * X + ScalarMatrix::identity(X.rows())) == 1;
}

bool is_trig_cm(const ScalarMatrix& X, const ScalarMatrix& Z) {
    require_square_pair(X, Z);
    if (X.rows() == 0) return true;
    if (det(X).is_zero()) return false;
    return rank(X * Z * inverse(X) - Z + ScalarMatrix::identity(X.rows())) == 1;
}

bool shifted_rank_check(const ScalarMatrix& X, const ScalarMatrix& Y, const ScalarMatrix& Z) {
    require_square_pair(X, Z);
    require_square_pair(X, Y);
    return rank(X * Z - Y * X) == 1;
}

CMPairTrig trig_from_rational(const CMPairRational& p) {
    require_square_pair(p.X, p.Z);
    const std::size_t n = p.size();
    ScalarMatrix one_plus = ScalarMatrix::identity(n) + p.Z.transpose();
    if (det(one_plus).is_zero()) fail(ErrorKind::InvalidInput, "I + Z is singular; no trigonometric image");
    return {one_plus, p.X.transpose() * one_plus};
}

RatFunc rational_wave(const CMPairRational& p) {
    require_square_pair(p.X, p.Z);
    // I - A^{-1} B^{-1} = (B A - I)(B A)^{-1}
    PolyMatrix a = shifted_identity(Var::x, p.X), b = shifted_identity(Var::z, p.Z);
    PolyMatrix m = b * a - PolyMatrix::identity(p.size());
    return RatFunc::make(det(m), det(a) * det(b));
}

RatFunc trig_wave(const CMPairTrig& p) {
    require_square_pair(p.X, p.Z);
    // I - X A^{-1} B^{-1} = (B A - X)(B A)^{-1}
    PolyMatrix a = shifted_identity(Var::w, p.X), b = shifted_identity(Var::z, p.Z);
    PolyMatrix m = b * a - to_poly(p.X);
    return RatFunc::make(det(m), det(a) * det(b));
}

RatFunc discrete_wave_cm(const CMPairRational& p) {
    require_square_pair(p.X, p.Z);
    const std::size_t n = p.size();
    ScalarMatrix one_plus = ScalarMatrix::identity(n) + p.Z;
    if (det(one_plus).is_zero()) fail(ErrorKind::InvalidInput, "I + Z is singular");
    // C = X - n (I + Z)^{-1};  I + C^{-1} B^{-1} = (B C + I)(B C)^{-1}
    PolyMatrix c = to_poly(p.X) - to_poly(inverse(one_plus)).map([](const MultiPoly& e) { return e * MultiPoly::var(Var::n); });
    PolyMatrix b = shifted_identity(Var::z, p.Z);
    return RatFunc::make(det(b * c + PolyMatrix::identity(n)), det(b) * det(c));
}

RatFunc tau_stationary(const CMPairTrig& p) {
    const MultiPoly u = MultiPoly::var(Var::u);
    PolyMatrix m = PolyMatrix::identity(p.size()) - to_poly(p.X).map([&](const MultiPoly& e) { return e * u; });
    return RatFunc(det(m));
}

RatFunc sato_quotient(const CMPairTrig& p) {
    require_square_pair(p.X, p.Z);
    const std::size_t n = p.size();
    RatMatrix zi = RatMatrix::scalar(n, RatFunc::var(Var::z)) - to_rat(p.Z);
    RatMatrix shift = (zi + RatMatrix::identity(n)) * inverse(zi);
    RatMatrix ux = to_rat(p.X).map([](const RatFunc& e) { return e * RatFunc::var(Var::u); });
    RatFunc top = det(RatMatrix::identity(n) - ux * shift);
    RatFunc quotient = top / tau_stationary(p);
    return u_to_w(quotient);
}

bool involution_check(const CMPairRational& p) {
    CMPairRational swapped{p.Z.transpose(), p.X.transpose()};
    if (!is_rational_cm(p.X, p.Z) || !is_rational_cm(swapped.X, swapped.Z))
        fail(ErrorKind::InvalidInput, "pair fails the rational rank condition");
    RatFunc a = rational_wave(p);
    RatFunc b = rational_wave(swapped).substitute({{Var::x, RatFunc::var(Var::z)}, {Var::z, RatFunc::var(Var::x)}});
    return a == b;
}

DarbouxTransform reconstruct_transform(const CMPairTrig& p) {
    require_square_pair(p.X, p.Z);
    const std::size_t n = p.size();
    const MultiPoly f = det(shifted_identity(Var::z, p.Z));
    const MultiPoly h = f * det(shifted_identity(Var::z, p.Z - ScalarMatrix::identity(n)));
    RatFunc symbol = RatFunc(f) * trig_wave(p);
    if (symbol.den().uses(Var::z))
        fail(ErrorKind::Inconsistent, "det(zI - Z) does not clear the z-denominator of the wave");
    std::vector<RatFunc> coeffs;
    for (unsigned k = 0; k <= symbol.num().degree(Var::z); ++k)
        coeffs.push_back(w_to_u(RatFunc::make(symbol.num().coefficient(Var::z, k), symbol.den())));
    DiffOp P(std::move(coeffs));
    if (!P.is_monic()) fail(ErrorKind::Inconsistent, "reconstructed P is not monic: " + P.to_string());
    try {
        return assemble(DarbouxTransform::Kind::Reconstructed, P, f, ConstCoeffOp(h));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Inconsistent) fail(ErrorKind::Inconsistent, std::string("h-candidate refuted: ") + e.what());
        throw;
    }
}

CMPairRational conjugate(const CMPairRational& p, const ScalarMatrix& g) {
    ScalarMatrix gi = inverse(g);
    return {g * p.X * gi, g * p.Z * gi};
}

CMPairTrig conjugate(const CMPairTrig& p, const ScalarMatrix& g) {
    ScalarMatrix gi = inverse(g);
    return {g * p.X * gi, g * p.Z * gi};
}

ScalarMatrix random_invertible(Rng& rng, std::size_t n) {
    std::uniform_int_distribution<long> entry(-2, 2);
    while (true) {
        ScalarMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = GaussianRational(entry(rng));
        if (!det(g).is_zero()) return g;
    }
}

CMPairRational random_rational_pair(Rng& rng, std::size_t n, bool conjugated) {
    while (true) {
        std::vector<GaussianRational> xs;
        while (xs.size() < n) {
            GaussianRational x = random_scalar(rng, 4, 2, false);
            bool fresh = true;
            for (const auto& y : xs) fresh = fresh && !(x == y);
            if (fresh) xs.push_back(x);
        }
        CMPairRational p{ScalarMatrix(n, n), ScalarMatrix(n, n)};
        for (std::size_t i = 0; i < n; ++i) {
            p.X(i, i) = xs[i];
            p.Z(i, i) = random_scalar(rng, 2, 2);
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) p.Z(i, j) = (xs[i] - xs[j]).inverse();
        }
        if (det(ScalarMatrix::identity(n) + p.Z).is_zero()) continue;
        return conjugated && n > 0 ? conjugate(p, random_invertible(rng, n)) : p;
    }
}

CMPairRational random_contractive_pair(Rng& rng, std::size_t n, double max_radius) {
    std::uniform_int_distribution<long> offset(0, 3), diag(-1, 1);
    while (true) {
        CMPairRational p{ScalarMatrix(n, n), ScalarMatrix(n, n)};
        std::vector<GaussianRational> xs;
        for (std::size_t i = 0; i < n; ++i)
            xs.emplace_back(mpq_class(static_cast<long>(6 * i) * 2 + offset(rng), 2), mpq_class(0));
        for (std::size_t i = 0; i < n; ++i) {
            p.X(i, i) = xs[i];
            p.Z(i, i) = GaussianRational(mpq_class(diag(rng), 5), mpq_class(diag(rng), 5));
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) p.Z(i, j) = (xs[i] - xs[j]).inverse();
        }
        if (n > 0) p = conjugate(p, random_invertible(rng, n));
        if (spectral_radius(p.Z) < max_radius) return p;
    }
}

} // namespace trigdarboux
