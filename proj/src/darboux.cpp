#include "darboux.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "exact/matrix.hpp"

namespace trigdarboux {

RatFunc u_to_w(const RatFunc& r) {
    if (!r.uses(Var::u)) return r;
    return r.substitute({{Var::u, RatFunc::var(Var::w).inverse()}});
}

RatFunc w_to_u(const RatFunc& r) {
    if (!r.uses(Var::w)) return r;
    return r.substitute({{Var::w, RatFunc::var(Var::u).inverse()}});
}

DiffOp u_to_w(const DiffOp& a) {
    std::vector<RatFunc> c;
    for (const auto& x : a.coeffs()) c.push_back(u_to_w(x));
    return DiffOp(std::move(c));
}

namespace {

GaussianRational x_coefficient(const MultiPoly& p, unsigned k) {
    return p.coefficient(Var::x, k).constant_term();
}

QuasiPoly from_row(const ScalarMatrix& m, std::size_t row,
                   const std::vector<std::pair<GaussianRational, unsigned>>& keys) {
    QuasiPoly out;
    for (std::size_t c = 0; c < keys.size(); ++c)
        if (!m(row, c).is_zero()) out += QuasiPoly::monomial(keys[c].first, keys[c].second, m(row, c));
    return out;
}

// The component of f whose exponents lie on lattice r.
QuasiPoly lattice_component(const QuasiPoly& f, std::size_t r, const SpectralData& data) {
    QuasiPoly out;
    for (const auto& [lambda, p] : f.parts())
        if (data.lattice_of(lambda) == r) out += QuasiPoly(lambda, p);
    return out;
}

// lim_{v -> infinity} of r is 1, read from the leading v-coefficients.
bool tends_to_one(const RatFunc& r, Var v) {
    const unsigned d = r.num().degree(v);
    if (d != r.den().degree(v)) return false;
    return r.num().coefficient(v, d) == r.den().coefficient(v, d);
}

MultiPoly lcm_of_denominators(const DiffOp& a) {
    MultiPoly out(1);
    for (const auto& c : a.coeffs()) out = poly_lcm(out, c.den());
    return out.monic();
}

DiffOp times_polynomial(const MultiPoly& p, const DiffOp& a) {
    DiffOp out = RatFunc(p) * a;
    for (const auto& c : out.coeffs())
        if (!c.is_polynomial())
            fail(ErrorKind::Inconsistent, "clearing denominators left a non-polynomial coefficient " + c.to_string());
    return out;
}

// Series of rho(x0 + e, u0 exp(-e), z) in e up to order len-1; coefficients are polynomials in z.
std::vector<MultiPoly> point_series(const MultiPoly& p, const Basepoint& at, unsigned len) {
    require((p.var_mask() & ~((1u << static_cast<int>(Var::x)) | (1u << static_cast<int>(Var::u)) |
                              (1u << static_cast<int>(Var::z)))) == 0,
            "reduced waves must involve only x, u and z");
    std::vector<GaussianRational> inv_fact(len);
    inv_fact[0] = GaussianRational(1);
    for (unsigned m = 1; m < len; ++m) inv_fact[m] = inv_fact[m - 1] * GaussianRational(static_cast<long>(m)).inverse();

    std::vector<MultiPoly> out(len);
    for (const auto& [mono, c] : p.terms()) {
        const unsigned a = mono[Var::x], b = mono[Var::u];
        // (x0 + e)^a
        std::vector<GaussianRational> s(len);
        for (unsigned m = 0; m <= std::min(a, len - 1); ++m)
            s[m] = binomial(a, m) * pow(at.x, a - m);
        if (b > 0) {
            // u0^b exp(-b e)
            std::vector<GaussianRational> e(len), prod(len);
            GaussianRational nb(-static_cast<long>(b));
            for (unsigned m = 0; m < len; ++m) e[m] = pow(nb, m) * inv_fact[m];
            for (unsigned i = 0; i < len; ++i) {
                if (s[i].is_zero()) continue;
                for (unsigned j = 0; i + j < len; ++j) prod[i + j] += s[i] * e[j];
            }
            GaussianRational scale = pow(at.u, b) * c;
            for (auto& v : prod) v *= scale;
            s = std::move(prod);
        } else {
            for (auto& v : s) v *= c;
        }
        const MultiPoly zpow = MultiPoly::var(Var::z, mono[Var::z]);
        for (unsigned m = 0; m < len; ++m)
            if (!s[m].is_zero()) out[m] += zpow * s[m];
    }
    return out;
}

std::vector<GaussianRational> basepoint_candidates(unsigned count) {
    std::vector<GaussianRational> out{GaussianRational(1)};
    for (long k = 2; out.size() < count; ++k) {
        out.emplace_back(k);
        out.emplace_back(mpq_class(1, k), mpq_class(0));
    }
    out.resize(count);
    return out;
}

bool regular_at(const RatFunc& r, const Basepoint& at) {
    MultiPoly den = r.den().evaluate(Var::x, at.x).evaluate(Var::u, at.u);
    return !den.is_zero();
}

} // namespace

Coordinates coordinates(const std::vector<QuasiPoly>& fs) {
    std::set<std::pair<GaussianRational, unsigned>> keyset;
    for (const auto& f : fs)
        for (const auto& [lambda, p] : f.parts())
            for (const auto& [m, c] : p.terms()) keyset.emplace(lambda, m[Var::x]);
    Coordinates out;
    out.keys.assign(keyset.begin(), keyset.end());
    out.rows = ScalarMatrix(fs.size(), out.keys.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t c = 0; c < out.keys.size(); ++c) {
            auto it = fs[i].parts().find(out.keys[c].first);
            if (it != fs[i].parts().end()) out.rows(i, c) = x_coefficient(it->second, out.keys[c].second);
        }
    return out;
}

std::size_t span_dimension(const std::vector<QuasiPoly>& fs) {
    if (fs.empty()) return 0;
    return rank(coordinates(fs).rows);
}

bool in_span(const std::vector<QuasiPoly>& fs, const QuasiPoly& target) {
    if (target.is_zero()) return true;
    std::vector<QuasiPoly> ext = fs;
    ext.push_back(target);
    return span_dimension(ext) == span_dimension(fs);
}

std::vector<NormalizedElement> normalize_basis(const std::vector<QuasiPoly>& basis, const SpectralData& data) {
    if (basis.empty()) return {};
    Coordinates coords = coordinates(basis);
    struct Key {
        std::size_t r;
        unsigned j, k;
        std::size_t column;
    };
    std::vector<Key> order;
    for (std::size_t c = 0; c < coords.keys.size(); ++c) {
        auto loc = data.locate(coords.keys[c].first);
        if (!loc)
            fail(ErrorKind::InvalidInput,
                 "exponent " + coords.keys[c].first.to_string() + " lies outside the spectral data");
        order.push_back({loc->first, loc->second, coords.keys[c].second, c});
    }
    std::sort(order.begin(), order.end(), [](const Key& a, const Key& b) {
        if (a.r != b.r) return a.r < b.r;
        if (a.j != b.j) return a.j < b.j;
        return a.k > b.k;
    });
    ScalarMatrix m(basis.size(), order.size());
    std::vector<std::pair<GaussianRational, unsigned>> keys;
    for (std::size_t c = 0; c < order.size(); ++c) {
        keys.push_back(coords.keys[order[c].column]);
        for (std::size_t i = 0; i < basis.size(); ++i) m(i, c) = coords.rows(i, order[c].column);
    }
    std::vector<std::size_t> pivots = row_reduce(m);
    if (pivots.size() < basis.size()) fail(ErrorKind::DependentBasis, "kernel basis is linearly dependent");
    std::vector<NormalizedElement> out;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        out.push_back({from_row(m, i, keys), order[pivots[i]].r, order[pivots[i]].j, order[pivots[i]].k});
    return out;
}

MultiPoly normalization_polynomial(const std::vector<NormalizedElement>& basis, const SpectralData& data) {
    MultiPoly f(1);
    for (const auto& e : basis)
        f *= MultiPoly::var(Var::z) - MultiPoly(data.groups()[e.r].lambda) + MultiPoly(static_cast<long>(e.j));
    return f;
}

WavePair wave_and_dual(const DiffOp& P, const DiffOp& Q, const MultiPoly& f, const MultiPoly& g) {
    RatFunc rho = apply_to_exp(P) / RatFunc(f);
    RatFunc star = apply_to_exp(adjoint(Q)).substitute({{Var::z, -RatFunc::var(Var::z)}}) / RatFunc(g);
    return {{rho, 1}, {star, -1}};
}

DarbouxTransform assemble(DarbouxTransform::Kind kind, const DiffOp& P, const MultiPoly& f, const ConstCoeffOp& h) {
    require(P.is_monic(), "P must be monic");
    DarbouxTransform t;
    t.kind = kind;
    t.P = P;
    t.h = h;
    t.f = f;
    Division div = right_divide(h.to_diffop(), P);
    if (!div.remainder.is_zero())
        fail(ErrorKind::Inconsistent, "h is not right-divisible by P; remainder " + div.remainder.to_string());
    t.Q = div.quotient;
    auto g = divide_exact(h.symbol(), f);
    if (!g) fail(ErrorKind::Inconsistent, "f = " + f.to_string() + " does not divide h = " + h.symbol().to_string());
    t.g = *g;
    auto waves = wave_and_dual(t.P, t.Q, t.f, t.g);
    t.psi = waves.psi;
    t.psi_star = waves.psi_star;

    if (t.P.free_of(Var::x) && t.Q.free_of(Var::x)) {
        DiffOp pw = u_to_w(t.P);
        t.theta = lcm_of_denominators(pw);
        t.Pbar = times_polynomial(t.theta, pw);
        // Q = Qbar o nu^{-1}: clear the adjoint on the left, then take the adjoint back.
        DiffOp qstar = adjoint(u_to_w(t.Q));
        t.nu = lcm_of_denominators(qstar);
        t.Qbar = adjoint(times_polynomial(t.nu, qstar));
    }
    return t;
}

DarbouxTransform build_trig(const SpectralData& data, const std::vector<KernelChainSpec>& chains) {
    std::vector<QuasiPoly> basis;
    for (const auto& chain : chains) {
        auto part = chain_expand(chain, data);
        basis.insert(basis.end(), part.begin(), part.end());
    }
    ConstCoeffOp h(data.h_polynomial());
    auto normalized = normalize_basis(basis, data);
    std::vector<QuasiPoly> kernel;
    for (const auto& e : normalized) kernel.push_back(e.phi);
    DiffOp P = annihilator(kernel);
    if (!P.free_of(Var::x))
        fail(ErrorKind::NotTrigonometric, "chain kernel produced x-dependent coefficients: " + P.to_string());
    DarbouxTransform t = assemble(DarbouxTransform::Kind::Trigonometric, P, normalization_polynomial(normalized, data), h);
    t.data = data;
    t.normalized_basis = std::move(normalized);
    return t;
}

bool classify_trig(const std::vector<QuasiPoly>& basis, const SpectralData& data) {
    ConstCoeffOp h(data.h_polynomial());
    for (const auto& phi : basis)
        if (!h.apply(phi).is_zero())
            fail(ErrorKind::InvalidInput, "basis element " + phi.to_string() + " is not in the kernel of h");
    for (const auto& phi : basis) {
        for (std::size_t r = 0; r < data.size(); ++r)
            if (!in_span(basis, lattice_component(phi, r, data))) return false;
        if (!in_span(basis, lowering(phi))) return false;
    }
    return true;
}

bool check_factorization(const DarbouxTransform& t) {
    if (!(t.Q * t.P == t.h.to_diffop())) return false;
    if (!(t.f * t.g == t.h.symbol())) return false;
    return static_cast<int>(t.f.degree(Var::z)) == t.P.order();
}

bool check_eigen(const DarbouxTransform& t) {
    ReducedWave lhs = apply_framed(t.P * t.Q, t.psi);
    return lhs.rho == RatFunc(t.f * t.g) * t.psi.rho;
}

bool check_normalization(const DarbouxTransform& t) {
    if (t.psi.rho.uses(Var::x)) return tends_to_one(t.psi.rho, Var::x);
    try {
        return t.psi.rho.evaluate_partial({{Var::u, GaussianRational(0)}}) == RatFunc(1);
    } catch (const PoleError&) {
        return false;
    }
}

Basepoint find_basepoint(const DarbouxTransform& t, unsigned search) {
    for (const auto& c : basepoint_candidates(search)) {
        Basepoint at{c, c};
        if (regular_at(t.psi.rho, at) && regular_at(t.psi_star.rho, at)) return at;
    }
    fail(ErrorKind::Pole, "no pole-free basepoint among the first " + std::to_string(search) + " candidates");
}

std::vector<RatFunc> framed_derivatives_at(const ReducedWave& w, unsigned count, const Basepoint& at) {
    const unsigned len = count + 1;
    auto num = point_series(w.rho.num(), at, len);
    auto den = point_series(w.rho.den(), at, len);
    if (den[0].is_zero()) fail(ErrorKind::Pole, "reduced wave has a pole at the basepoint");
    // s = num / den as a series in e; D^l rho at the point is l! s_l.
    std::vector<RatFunc> s(len);
    const RatFunc d0(den[0]);
    for (unsigned m = 0; m < len; ++m) {
        RatFunc acc(num[m]);
        for (unsigned l = 1; l <= m; ++l)
            if (!den[l].is_zero()) acc -= RatFunc(den[l]) * s[m - l];
        s[m] = acc / d0;
    }
    std::vector<RatFunc> dl(len);
    GaussianRational fact(1);
    for (unsigned l = 0; l < len; ++l) {
        if (l > 0) fact *= GaussianRational(static_cast<long>(l));
        dl[l] = RatFunc(fact) * s[l];
    }
    const MultiPoly fz = MultiPoly::var(Var::z) * GaussianRational(w.frame);
    std::vector<RatFunc> out(len);
    for (unsigned i = 0; i < len; ++i) {
        RatFunc acc;
        for (unsigned l = 0; l <= i; ++l)
            if (!dl[l].is_zero()) acc += RatFunc(binomial(i, l) * fz.pow(i - l)) * dl[l];
        out[i] = acc;
    }
    return out;
}

bool check_orthogonality(const DarbouxTransform& t, unsigned imax, unsigned jmax, const Basepoint& at) {
    auto v = framed_derivatives_at(t.psi, imax, at);
    auto vs = framed_derivatives_at(t.psi_star, jmax, at);
    for (unsigned i = 0; i <= imax; ++i)
        for (unsigned j = 0; j <= jmax; ++j)
            if (!residue_at_infinity(v[i] * vs[j]).is_zero()) return false;
    return true;
}

bool check_orthogonality(const DarbouxTransform& t, unsigned imax, unsigned jmax) {
    return check_orthogonality(t, imax, jmax, find_basepoint(t));
}

DarbouxTransform perturbed_dual(const DarbouxTransform& t) {
    DarbouxTransform out = t;
    const RatFunc z = RatFunc::var(Var::z);
    out.psi_star.rho = t.psi_star.rho * (z + RatFunc(1)) / z;
    return out;
}

InclusionReport check_grassmannian_inclusions(const DarbouxTransform& t, unsigned degree_bound) {
    InclusionReport rep;
    const Basepoint at = find_basepoint(t);
    const unsigned K = t.f.degree(Var::z);
    const unsigned window = t.h.degree() + degree_bound;
    auto v = framed_derivatives_at(t.psi, window, at);

    // f v_i as polynomials in z.
    std::vector<MultiPoly> fv;
    rep.f_clears = true;
    for (const auto& vi : v) {
        RatFunc p = RatFunc(t.f) * vi;
        if (!p.is_polynomial()) {
            rep.f_clears = false;
            break;
        }
        fv.push_back(p.num() * p.den().constant_value().inverse());
    }
    if (!rep.f_clears) return rep;

    const unsigned top = K + window;
    auto to_row = [&](ScalarMatrix& m, std::size_t row, const MultiPoly& p) {
        auto coeffs = p.as_univariate(Var::z);
        for (std::size_t d = 0; d < coeffs.size() && d <= top; ++d) m(row, d) = coeffs[d].constant_term();
    };
    ScalarMatrix span(fv.size(), top + 1);
    for (std::size_t i = 0; i < fv.size(); ++i) {
        if (fv[i].degree(Var::z) > top) return rep;
        to_row(span, i, fv[i]);
    }
    const std::size_t r = rank(span);

    // f g z^k = h z^k must lie in span{f v_i}.
    rep.g_inside = true;
    const MultiPoly hz = t.h.symbol();
    for (unsigned k = 0; k <= degree_bound; ++k) {
        ScalarMatrix ext(fv.size() + 1, top + 1);
        for (std::size_t i = 0; i < fv.size(); ++i)
            for (std::size_t d = 0; d <= top; ++d) ext(i, d) = span(i, d);
        to_row(ext, fv.size(), hz.shifted(Monomial::of(Var::z, k)));
        if (rank(ext) != r) {
            rep.g_inside = false;
            break;
        }
    }
    rep.codimension = (top + 1) - r;
    rep.ok = rep.f_clears && rep.g_inside && rep.codimension == K;
    return rep;
}

QuasiPoly adelic_kernel_element(const AdelicPoint& point) {
    require((point.p.var_mask() & ~(1u << static_cast<int>(Var::s))) == 0, "adelic condition must be a polynomial in s");
    const MultiPoly x = MultiPoly::var(Var::x), one_plus_z = MultiPoly::var(Var::z) + MultiPoly(1);
    // (1+z) d/dz on e^{xz} q  ->  e^{xz} (1+z)(x q + dq/dz)
    MultiPoly q(1), acc;
    auto coeffs = point.p.as_univariate(Var::s);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) q = one_plus_z * (x * q + q.derivative(Var::z));
        if (!coeffs[k].is_zero()) acc += q * coeffs[k].constant_term();
    }
    return QuasiPoly(point.lambda, acc.evaluate(Var::z, point.lambda));
}

DarbouxTransform build_adelic(const std::vector<AdelicPoint>& points) {
    std::vector<QuasiPoly> basis;
    MultiPoly h(1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].lambda == GaussianRational(-1)) fail(ErrorKind::InvalidInput, "adelic point lambda = -1");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i].lambda == points[j].lambda)
                fail(ErrorKind::InvalidInput, "adelic points must have distinct lambda");
        QuasiPoly e = adelic_kernel_element(points[i]);
        if (e.is_zero())
            fail(ErrorKind::DependentBasis, "adelic condition at " + points[i].lambda.to_string() + " gives zero");
        basis.push_back(e);
        h *= (MultiPoly::var(Var::z) - MultiPoly(points[i].lambda)).pow(e.x_degree() + 1);
    }
    DiffOp P = annihilator(basis);
    // f is the symbol of P in the limit x -> infinity.
    std::vector<Term> fterms;
    for (std::size_t k = 0; k < P.coeffs().size(); ++k) {
        const RatFunc& a = P.coeff(k);
        const unsigned dn = a.num().degree(Var::x), dd = a.den().degree(Var::x);
        if (a.is_zero() || dn < dd) continue;
        if (dn > dd) fail(ErrorKind::Inconsistent, "coefficient " + a.to_string() + " grows as x -> infinity");
        GaussianRational lim = a.num().coefficient(Var::x, dn).constant_value() /
                               a.den().coefficient(Var::x, dd).constant_value();
        fterms.emplace_back(Monomial::of(Var::z, static_cast<unsigned>(k)), lim);
    }
    MultiPoly f = MultiPoly::from_terms(std::move(fterms));
    return assemble(DarbouxTransform::Kind::Adelic, P, f, ConstCoeffOp(h));
}

std::string kind_name(DarbouxTransform::Kind kind) {
    switch (kind) {
        case DarbouxTransform::Kind::Trigonometric: return "trigonometric";
        case DarbouxTransform::Kind::Adelic: return "adelic";
        case DarbouxTransform::Kind::Reconstructed: return "reconstructed";
    }
    return "unknown";
}

} // namespace trigdarboux
