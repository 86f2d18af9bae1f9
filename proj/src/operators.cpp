#include "operators.hpp"

#include <sstream>

#include "errors.hpp"
#include "exact/matrix.hpp"

namespace trigdarboux {

MultiPoly derivation(const MultiPoly& p) {
    std::vector<Term> out;
    for (const auto& [m, c] : p.terms()) {
        // x^a u^b w^e -> a x^{a-1} u^b w^e + (e - b) x^a u^b w^e
        unsigned a = m[Var::x];
        if (a > 0) {
            Monomial lower = m;
            lower.exp[static_cast<int>(Var::x)] = static_cast<std::uint16_t>(a - 1);
            out.emplace_back(lower, c * GaussianRational(static_cast<long>(a)));
        }
        long weight = static_cast<long>(m[Var::w]) - static_cast<long>(m[Var::u]);
        if (weight != 0) out.emplace_back(m, c * GaussianRational(weight));
    }
    return MultiPoly::from_terms(std::move(out));
}

RatFunc derivation(const RatFunc& r) {
    if (r.is_polynomial()) return RatFunc(derivation(r.num()) * r.den().constant_value().inverse());
    const MultiPoly& den = r.den();
    MultiPoly dd = derivation(den);
    if (dd.is_zero()) return RatFunc::make(derivation(r.num()), den);
    MultiPoly g = poly_gcd(den, dd);
    MultiPoly dg = divide_or_throw(den, g);
    MultiPoly top = derivation(r.num()) * dg - r.num() * divide_or_throw(dd, g);
    return RatFunc::make(top, den * dg);
}

namespace {

// D^0(a), ..., D^n(a)
std::vector<RatFunc> derivation_powers(const RatFunc& a, unsigned n) {
    std::vector<RatFunc> out{a};
    for (unsigned i = 0; i < n; ++i) out.push_back(out.back().is_zero() ? RatFunc() : derivation(out.back()));
    return out;
}

// d o A
DiffOp d_times(const DiffOp& a) {
    std::vector<RatFunc> out(a.coeffs().size() + 1);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        out[k] += derivation(a.coeff(k));
        out[k + 1] += a.coeff(k);
    }
    return DiffOp(std::move(out));
}

} // namespace

DiffOp::DiffOp(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        require(!c.uses(Var::z) && !c.uses(Var::n), "differential operator coefficients cannot involve z or n");
    trim();
}

void DiffOp::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DiffOp DiffOp::d(unsigned power) {
    std::vector<RatFunc> c(power + 1);
    c[power] = RatFunc(1);
    return DiffOp(std::move(c));
}

bool DiffOp::free_of(Var v) const {
    for (const auto& c : coeffs_)
        if (c.uses(v)) return false;
    return true;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const unsigned oa = static_cast<unsigned>(a.order());
    std::vector<RatFunc> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    // d^i o b_j = sum_l C(i,l) D^l(b_j) d^{i-l}
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        auto dpow = derivation_powers(b.coeffs_[j], oa);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t l = 0; l <= i; ++l) {
                if (dpow[l].is_zero()) continue;
                RatFunc term = a.coeffs_[i] * dpow[l];
                if (l > 0) term = RatFunc(binomial(static_cast<long>(i), static_cast<long>(l))) * term;
                out[i - l + j] += term;
            }
        }
    }
    return DiffOp(std::move(out));
}

DiffOp operator*(const RatFunc& c, const DiffOp& a) {
    std::vector<RatFunc> out;
    out.reserve(a.coeffs_.size());
    for (const auto& x : a.coeffs_) out.push_back(c * x);
    return DiffOp(std::move(out));
}

DiffOp DiffOp::substitute(const std::map<Var, RatFunc>& values) const {
    std::vector<RatFunc> out;
    for (const auto& c : coeffs_) out.push_back(c.substitute(values));
    return DiffOp(std::move(out));
}

std::string DiffOp::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[k].to_string() << ")";
        if (k > 0) os << "*d" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return os.str();
}

Division right_divide(const DiffOp& a, const DiffOp& b) {
    if (!b.is_monic())
        fail(ErrorKind::InvalidInput, "right_divide needs a monic divisor, got " + b.to_string());
    const int m = b.order();
    DiffOp rem = a;
    if (rem.order() < m) return {DiffOp(), rem};
    std::vector<DiffOp> shifted{b};  // d^s o b
    while (static_cast<int>(shifted.size()) <= rem.order() - m) shifted.push_back(d_times(shifted.back()));
    std::vector<RatFunc> q(static_cast<std::size_t>(rem.order() - m + 1));
    while (rem.order() >= m) {
        const int s = rem.order() - m;
        RatFunc c = rem.leading();
        q[static_cast<std::size_t>(s)] = c;
        DiffOp sub = c * shifted[static_cast<std::size_t>(s)];
        rem -= sub;
        if (rem.order() >= m + s) fail(ErrorKind::Inconsistent, "right division failed to cancel the leading term");
    }
    return {DiffOp(std::move(q)), rem};
}

DiffOp adjoint(const DiffOp& a) {
    if (a.is_zero()) return {};
    std::vector<RatFunc> out(a.coeffs().size());
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        auto dpow = derivation_powers(a.coeff(k), static_cast<unsigned>(k));
        RatFunc sign(k % 2 ? -1 : 1);
        for (std::size_t l = 0; l <= k; ++l) {
            if (dpow[l].is_zero()) continue;
            out[k - l] += sign * RatFunc(binomial(static_cast<long>(k), static_cast<long>(l))) * dpow[l];
        }
    }
    return DiffOp(std::move(out));
}

DiffOp annihilator(const std::vector<QuasiPoly>& basis) {
    const std::size_t k = basis.size();
    if (k == 0) return DiffOp::identity();
    // Column i holds the derivatives of phi_i with e^{mu_i x} factored out.
    PolyMatrix full(k + 1, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (basis[i].is_zero()) fail(ErrorKind::DependentBasis, "kernel basis contains zero");
        auto [mu, p] = factor_base_exponent(basis[i]);
        for (std::size_t d = 0; d <= k; ++d) {
            full(d, i) = p;
            p = derivation(p) + p * mu;
        }
    }
    auto minor_without_row = [&](std::size_t skip) {
        PolyMatrix m(k, k);
        for (std::size_t r = 0, out = 0; r <= k; ++r) {
            if (r == skip) continue;
            for (std::size_t c = 0; c < k; ++c) m(out, c) = full(r, c);
            ++out;
        }
        return det(m);
    };
    MultiPoly wr = minor_without_row(k);
    if (wr.is_zero()) fail(ErrorKind::DependentBasis, "kernel basis is linearly dependent (Wronskian vanishes)");
    std::vector<RatFunc> coeffs(k + 1);
    coeffs[k] = RatFunc(1);
    for (std::size_t d = 0; d < k; ++d) {
        MultiPoly minor = minor_without_row(d);
        if ((k + d) % 2) minor = -minor;
        coeffs[d] = RatFunc::make(minor, wr);
    }
    return DiffOp(std::move(coeffs));
}

ConstCoeffOp::ConstCoeffOp(const MultiPoly& symbol, Var v) {
    require((symbol.var_mask() & ~(1u << static_cast<int>(v))) == 0, "constant-coefficient symbol must be univariate");
    for (const auto& c : symbol.as_univariate(v)) coeffs_.push_back(c.constant_term());
}

MultiPoly ConstCoeffOp::symbol(Var v) const {
    std::vector<Term> t;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        t.emplace_back(Monomial::of(v, static_cast<unsigned>(k)), coeffs_[k]);
    return MultiPoly::from_terms(std::move(t));
}

DiffOp ConstCoeffOp::to_diffop() const {
    std::vector<RatFunc> c;
    for (const auto& x : coeffs_) c.emplace_back(x);
    return DiffOp(std::move(c));
}

QuasiPoly ConstCoeffOp::apply(const QuasiPoly& f) const {
    QuasiPoly out, d = f;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!coeffs_[k].is_zero()) out += coeffs_[k] * d;
        if (k + 1 < coeffs_.size()) d = qp_derivative(d);
    }
    return out;
}

RatFunc apply_to_exp(const DiffOp& a) {
    // Put everything over the lcm of the coefficient denominators: one reduction.
    MultiPoly common(1);
    for (const auto& c : a.coeffs()) common = poly_lcm(common, c.den());
    MultiPoly num;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        const RatFunc& c = a.coeff(k);
        if (c.is_zero()) continue;
        num += (c.num() * divide_or_throw(common, c.den())).shifted(Monomial::of(Var::z, static_cast<unsigned>(k)));
    }
    return RatFunc::make(num, common);
}

ReducedWave apply_framed(const DiffOp& a, const ReducedWave& w) {
    if (a.is_zero()) return {RatFunc(), w.frame};
    // (D + frame z)^k (N/d) = N_k / d^{k+1}, kept unreduced; one reduction at the end.
    const MultiPoly z = MultiPoly::var(Var::z) * MultiPoly(GaussianRational(w.frame));
    const MultiPoly& d = w.rho.den();
    const MultiPoly dd = derivation(d);
    const std::size_t top = a.coeffs().size() - 1;
    MultiPoly coeff_den(1);
    for (const auto& c : a.coeffs()) coeff_den = poly_lcm(coeff_den, c.den());
    std::vector<MultiPoly> dpow{MultiPoly(1)};
    for (std::size_t k = 0; k < top; ++k) dpow.push_back(dpow.back() * d);

    MultiPoly acc, cur = w.rho.num();
    for (std::size_t k = 0; k <= top; ++k) {
        const RatFunc& c = a.coeff(k);
        if (!c.is_zero()) acc += c.num() * divide_or_throw(coeff_den, c.den()) * cur * dpow[top - k];
        if (k < top) {
            // D(N / d^{k+1}) = (D N d - (k+1) N D d) / d^{k+2}
            MultiPoly next = derivation(cur) * d - MultiPoly(GaussianRational(static_cast<long>(k + 1))) * cur * dd + z * cur * d;
            cur = std::move(next);
        }
    }
    return {RatFunc::make(acc, coeff_den * dpow[top] * d), w.frame};
}

DifferenceOp::DifferenceOp(Var variable, std::map<unsigned, RatFunc> coeffs, Basis basis)
    : var_(variable), basis_(basis) {
    require(variable == Var::z || variable == Var::n, "difference operators act on z or n");
    for (auto& [m, c] : coeffs)
        if (!c.is_zero()) coeffs_.emplace(m, std::move(c));
}

DifferenceOp DifferenceOp::shift(Var variable, unsigned power) { return DifferenceOp(variable, {{power, RatFunc(1)}}); }

DifferenceOp DifferenceOp::scalar(Var variable, const RatFunc& a) { return DifferenceOp(variable, {{0u, a}}); }

RatFunc DifferenceOp::coeff(unsigned m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? RatFunc() : it->second;
}

DifferenceOp DifferenceOp::to_delta() const {
    if (basis_ == Basis::Delta) return *this;
    std::map<unsigned, RatFunc> out;
    // T^m = sum_j C(m,j) Delta^j
    for (const auto& [m, a] : coeffs_)
        for (unsigned j = 0; j <= m; ++j) out[j] += RatFunc(binomial(m, j)) * a;
    return DifferenceOp(var_, std::move(out), Basis::Delta);
}

DifferenceOp DifferenceOp::to_shift() const {
    if (basis_ == Basis::Shift) return *this;
    std::map<unsigned, RatFunc> out;
    // Delta^j = sum_m C(j,m) (-1)^{j-m} T^m
    for (const auto& [j, b] : coeffs_)
        for (unsigned m = 0; m <= j; ++m)
            out[m] += RatFunc(binomial(j, m) * GaussianRational((j - m) % 2 ? -1 : 1)) * b;
    return DifferenceOp(var_, std::move(out), Basis::Shift);
}

DifferenceOp DifferenceOp::renamed(Var to) const {
    std::map<unsigned, RatFunc> out;
    for (const auto& [m, a] : coeffs_) out.emplace(m, a.substitute({{var_, RatFunc::var(to)}}));
    return DifferenceOp(to, std::move(out), basis_);
}

DifferenceOp operator+(const DifferenceOp& a, const DifferenceOp& b) {
    if (a.var_ != b.var_) fail(ErrorKind::InvalidInput, "difference operators with different variable tags");
    DifferenceOp sa = a.to_shift(), sb = b.to_shift();
    std::map<unsigned, RatFunc> out = sa.coeffs_;
    for (const auto& [m, c] : sb.coeffs_) out[m] += c;
    DifferenceOp r(a.var_, std::move(out));
    return a.basis_ == DifferenceOp::Basis::Delta ? r.to_delta() : r;
}

DifferenceOp operator*(const DifferenceOp& a, const DifferenceOp& b) {
    if (a.var_ != b.var_) fail(ErrorKind::InvalidInput, "difference operators with different variable tags");
    DifferenceOp sa = a.to_shift(), sb = b.to_shift();
    const Var v = a.var_;
    std::map<unsigned, RatFunc> out;
    for (const auto& [m, ca] : sa.coeffs_) {
        std::map<Var, RatFunc> shift{{v, RatFunc::var(v) + RatFunc(static_cast<long>(m))}};
        for (const auto& [k, cb] : sb.coeffs_) out[m + k] += ca * (m == 0 ? cb : cb.substitute(shift));
    }
    DifferenceOp r(v, std::move(out));
    return a.basis_ == DifferenceOp::Basis::Delta ? r.to_delta() : r;
}

bool operator==(const DifferenceOp& a, const DifferenceOp& b) {
    if (a.var_ != b.var_) return false;
    if (a.basis_ == b.basis_) return a.coeffs_ == b.coeffs_;
    return a.to_shift().coeffs_ == b.to_shift().coeffs_;
}

std::string DifferenceOp::to_string() const {
    if (coeffs_.empty()) return "0";
    const char* g = basis_ == Basis::Shift ? "T" : "Delta";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.to_string() << ")";
        if (it->first > 0) os << "*" << g << (it->first > 1 ? "^" + std::to_string(it->first) : "");
    }
    return os.str();
}

RatFunc apply_shift_framed(const DifferenceOp& a, const RatFunc& rho, const RatFunc& ratio) {
    DifferenceOp s = a.to_shift();
    const Var v = s.variable();
    RatFunc out;
    for (const auto& [m, c] : s.coeffs()) {
        RatFunc shifted = m == 0 ? rho : rho.substitute({{v, RatFunc::var(v) + RatFunc(static_cast<long>(m))}});
        out += c * ratio.pow(static_cast<int>(m)) * shifted;
    }
    return out;
}

ReducedWave apply_difference_framed(const DifferenceOp& a, const ReducedWave& w) {
    require(a.variable() == Var::z, "e^{xz}-framed application needs a difference operator in z");
    const RatFunc u = RatFunc::var(Var::u);
    return {apply_shift_framed(a, w.rho, w.frame > 0 ? u.inverse() : u), w.frame};
}

} // namespace trigdarboux
