#include "quasipoly.hpp"

#include <sstream>

#include "errors.hpp"

namespace trigdarboux {

QuasiPoly::QuasiPoly(const GaussianRational& lambda, const MultiPoly& p) {
    require((p.var_mask() & ~1u) == 0, "quasi-polynomial parts must be polynomials in x");
    add_part(lambda, p);
}

QuasiPoly QuasiPoly::monomial(const GaussianRational& lambda, unsigned k, const GaussianRational& coeff) {
    return QuasiPoly(lambda, MultiPoly::var(Var::x, k) * coeff);
}

void QuasiPoly::add_part(const GaussianRational& lambda, const MultiPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = parts_.emplace(lambda, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) parts_.erase(it);
    }
}

unsigned QuasiPoly::x_degree() const {
    unsigned d = 0;
    for (const auto& [lambda, p] : parts_) d = std::max(d, p.degree(Var::x));
    return d;
}

QuasiPoly& QuasiPoly::operator+=(const QuasiPoly& o) {
    for (const auto& [lambda, p] : o.parts_) add_part(lambda, p);
    return *this;
}

QuasiPoly& QuasiPoly::operator-=(const QuasiPoly& o) {
    for (const auto& [lambda, p] : o.parts_) add_part(lambda, -p);
    return *this;
}

QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b) {
    QuasiPoly r;
    for (const auto& [la, pa] : a.parts_)
        for (const auto& [lb, pb] : b.parts_) r.add_part(la + lb, pa * pb);
    return r;
}

QuasiPoly operator*(const GaussianRational& c, const QuasiPoly& a) {
    QuasiPoly r;
    for (const auto& [lambda, p] : a.parts_) r.add_part(lambda, p * c);
    return r;
}

std::string QuasiPoly::to_string() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [lambda, p] : parts_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.to_string() << ")";
        if (!lambda.is_zero()) os << "*e^(" << lambda.to_string() << "*x)";
    }
    return os.str();
}

QuasiPoly qp_derivative(const QuasiPoly& f) {
    QuasiPoly r;
    for (const auto& [lambda, p] : f.parts()) r += QuasiPoly(lambda, p.derivative(Var::x) + p * lambda);
    return r;
}

QuasiPoly qp_derivative(const QuasiPoly& f, unsigned times) {
    QuasiPoly r = f;
    for (unsigned i = 0; i < times; ++i) r = qp_derivative(r);
    return r;
}

QuasiPoly lowering(const QuasiPoly& f) {
    QuasiPoly r;
    for (const auto& [lambda, p] : f.parts()) r += QuasiPoly(lambda, p.derivative(Var::x));
    return r;
}

namespace {

// Laplace expansion along the first column; the ring has no exact division.
QuasiPoly laplace_det(const std::vector<std::vector<QuasiPoly>>& m, std::vector<bool>& used_rows, std::size_t col) {
    const std::size_t n = m.size();
    if (col == n) return QuasiPoly::monomial(0);
    QuasiPoly total;
    int sign = 1;
    for (std::size_t row = 0; row < n; ++row) {
        if (used_rows[row]) continue;
        if (!m[row][col].is_zero()) {
            used_rows[row] = true;
            QuasiPoly minor = laplace_det(m, used_rows, col + 1);
            used_rows[row] = false;
            QuasiPoly term = m[row][col] * minor;
            if (sign > 0) total += term;
            else total -= term;
        }
        sign = -sign;
    }
    return total;
}

} // namespace

QuasiPoly wronskian(const std::vector<QuasiPoly>& fs) {
    require(!fs.empty(), "wronskian of an empty list");
    const std::size_t n = fs.size();
    std::vector<std::vector<QuasiPoly>> m(n, std::vector<QuasiPoly>(n));
    for (std::size_t j = 0; j < n; ++j) {
        QuasiPoly d = fs[j];
        for (std::size_t i = 0; i < n; ++i) {
            m[i][j] = d;
            if (i + 1 < n) d = qp_derivative(d);
        }
    }
    std::vector<bool> used(n, false);
    return laplace_det(m, used, 0);
}

BaseFactorization factor_base_exponent(const QuasiPoly& f) {
    if (f.is_zero()) return {GaussianRational(0), MultiPoly()};
    // mu must dominate every exponent by a nonnegative integer
    const GaussianRational* mu = nullptr;
    for (const auto& [lambda, p] : f.parts()) {
        if (!mu || ((lambda - *mu).is_integer() && sgn((lambda - *mu).re()) > 0)) mu = &lambda;
    }
    MultiPoly out;
    for (const auto& [lambda, p] : f.parts()) {
        GaussianRational shift = *mu - lambda;
        if (!shift.is_integer() || sgn(shift.re()) < 0)
            fail(ErrorKind::InvalidInput, "exponents of " + f.to_string() + " do not lie on one integer-shift lattice");
        out += p.shifted(Monomial::of(Var::u, static_cast<unsigned>(shift.re().get_num().get_ui())));
    }
    return {*mu, out};
}

QuasiPoly from_base_factorization(const GaussianRational& mu, const MultiPoly& p) {
    require((p.var_mask() & ~0b11u) == 0, "base factorization must involve only x and u");
    QuasiPoly r;
    auto by_u = p.as_univariate(Var::u);
    for (std::size_t j = 0; j < by_u.size(); ++j) r += QuasiPoly(mu - GaussianRational(static_cast<long>(j)), by_u[j]);
    return r;
}

SpectralData::SpectralData(std::vector<SpectralGroup> groups) : groups_(std::move(groups)) {
    for (std::size_t r = 0; r < groups_.size(); ++r) {
        require(!groups_[r].mult.empty() && groups_[r].mult[0] > 0,
                "spectral group " + std::to_string(r) + " needs m_{r,0} > 0");
        for (std::size_t s = 0; s < r; ++s) {
            if ((groups_[r].lambda - groups_[s].lambda).is_integer())
                fail(ErrorKind::InvalidInput, "spectral groups " + std::to_string(s) + " and " + std::to_string(r) +
                                                  " violate lambda_r - lambda_s not in Z (" +
                                                  groups_[s].lambda.to_string() + ", " +
                                                  groups_[r].lambda.to_string() + ")");
        }
    }
}

MultiPoly SpectralData::h_polynomial(Var v) const {
    MultiPoly h(1);
    for (const auto& g : groups_)
        for (std::size_t j = 0; j < g.mult.size(); ++j) {
            MultiPoly factor = MultiPoly::var(v) - MultiPoly(g.lambda - GaussianRational(static_cast<long>(j)));
            h *= factor.pow(g.mult[j]);
        }
    return h;
}

unsigned SpectralData::degree() const {
    unsigned d = 0;
    for (const auto& g : groups_)
        for (auto m : g.mult) d += m;
    return d;
}

std::optional<std::pair<std::size_t, unsigned>> SpectralData::locate(const GaussianRational& mu) const {
    for (std::size_t r = 0; r < groups_.size(); ++r) {
        GaussianRational shift = groups_[r].lambda - mu;
        if (shift.is_integer() && sgn(shift.re()) >= 0 && shift.re() < static_cast<long>(groups_[r].mult.size()))
            return std::make_pair(r, static_cast<unsigned>(shift.re().get_num().get_ui()));
    }
    return std::nullopt;
}

std::optional<std::size_t> SpectralData::lattice_of(const GaussianRational& mu) const {
    for (std::size_t r = 0; r < groups_.size(); ++r)
        if ((groups_[r].lambda - mu).is_integer()) return r;
    return std::nullopt;
}

unsigned KernelChainSpec::depth() const {
    std::optional<unsigned> d;
    for (const auto& t : terms)
        if (!t.coeff.is_zero()) d = std::max(d.value_or(0), t.k);
    if (!d) fail(ErrorKind::InvalidInput, "kernel chain has no nonzero coefficient");
    return *d;
}

std::vector<QuasiPoly> chain_expand(const KernelChainSpec& spec, const SpectralData& data) {
    require(spec.r < data.size(), "chain references spectral group " + std::to_string(spec.r) + " which does not exist");
    const SpectralGroup& group = data.groups()[spec.r];
    std::map<GaussianRational, MultiPoly> generating;  // exponent -> polynomial in y
    for (const auto& t : spec.terms) {
        if (t.j >= group.mult.size() || t.k >= group.mult[t.j])
            fail(ErrorKind::InvalidInput, "chain term (k=" + std::to_string(t.k) + ", j=" + std::to_string(t.j) +
                                              ") exceeds the multiplicity bounds of group " + std::to_string(spec.r));
        generating[group.lambda - GaussianRational(static_cast<long>(t.j))] += MultiPoly::var(Var::y, t.k) * t.coeff;
    }
    const unsigned depth = spec.depth();
    std::vector<QuasiPoly> out;
    for (unsigned l = 0; l <= depth; ++l) {
        QuasiPoly psi;
        GaussianRational scale = factorial(l).inverse();
        for (auto& [mu, py] : generating) {
            MultiPoly d = py;
            for (unsigned i = 0; i < l; ++i) d = d.derivative(Var::y);
            psi += QuasiPoly(mu, d.rename({{Var::y, Var::x}}) * scale);
        }
        out.push_back(psi);
    }
    return out;
}

} // namespace trigdarboux
