#include "exact/ratfunc.hpp"

#include <vector>

#include "errors.hpp"

namespace trigdarboux {

namespace {

// Rescales so that den has leading coefficient 1.
void normalize_unit(MultiPoly& num, MultiPoly& den) {
    if (den.leading_coeff().is_one()) return;
    GaussianRational inv = den.leading_coeff().inverse();
    num *= inv;
    den *= inv;
}

// Substitution into p over a common denominator: returns (N, D) with p(values) = N/D.
std::pair<MultiPoly, MultiPoly> substitute_fraction(const MultiPoly& p, const std::map<Var, RatFunc>& values) {
    std::map<Var, unsigned> degrees;
    MultiPoly common(1);
    for (const auto& [v, r] : values) {
        unsigned d = p.degree(v);
        if (d == 0) continue;
        degrees[v] = d;
        if (!r.is_polynomial()) common *= r.den().pow(d);
    }
    std::map<Var, std::vector<MultiPoly>> num_pows, den_pows;
    auto power = [](std::vector<MultiPoly>& cache, const MultiPoly& base, unsigned e) -> const MultiPoly& {
        if (cache.empty()) cache.emplace_back(1);
        while (cache.size() <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };
    MultiPoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        MultiPoly term(c);
        for (const auto& [v, d] : degrees) {
            unsigned e = m[v];
            rest.exp[static_cast<int>(v)] = 0;
            const RatFunc& r = values.at(v);
            if (e > 0) term *= power(num_pows[v], r.num(), e);
            if (!r.is_polynomial() && d > e) term *= power(den_pows[v], r.den(), d - e);
        }
        out += term.shifted(rest);
    }
    return {std::move(out), std::move(common)};
}

} // namespace

RatFunc RatFunc::make(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw PoleError("rational function with zero denominator");
    RatFunc r;
    if (num.is_zero()) return r;
    if (den.is_constant()) {
        r.num_ = num * den.constant_value().inverse();
        return r;
    }
    MultiPoly g = poly_gcd(num, den);
    if (g.is_constant()) {
        r.num_ = num;
        r.den_ = den;
    } else {
        r.num_ = divide_or_throw(num, g);
        r.den_ = divide_or_throw(den, g);
    }
    normalize_unit(r.num_, r.den_);
    return r;
}

GaussianRational RatFunc::constant_value() const {
    if (!is_constant()) fail(ErrorKind::Inconsistent, "rational function is not constant: " + to_string());
    return num_.constant_term() / den_.constant_value();
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        if (den_.is_constant()) {
            num_ += o.num_;
            return *this;
        }
        return *this = make(num_ + o.num_, den_);
    }
    if (den_.is_constant() || o.den_.is_constant()) {
        // One side polynomial: (a + b*d)/d is already reduced.
        if (den_.is_constant()) {
            num_ = num_ * o.den_ + o.num_;
            den_ = o.den_;
        } else {
            num_ += o.num_ * den_;
        }
        return *this;
    }
    MultiPoly g = poly_gcd(den_, o.den_);
    if (g.is_constant()) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
        return *this;
    }
    MultiPoly d1 = divide_or_throw(den_, g), d2 = divide_or_throw(o.den_, g);
    MultiPoly t = num_ * d2 + o.num_ * d1;
    if (t.is_zero()) return *this = RatFunc();
    MultiPoly h = poly_gcd(t, g);
    if (h.is_constant()) {
        num_ = std::move(t);
        den_ = d1 * o.den_;
    } else {
        num_ = divide_or_throw(t, h);
        den_ = d1 * divide_or_throw(o.den_, h);
    }
    normalize_unit(num_, den_);
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) return *this = RatFunc();
    if (den_.is_constant() && o.den_.is_constant()) {
        num_ *= o.num_;
        return *this;
    }
    MultiPoly g1 = poly_gcd(num_, o.den_), g2 = poly_gcd(o.num_, den_);
    MultiPoly n1 = g1.is_constant() ? num_ : divide_or_throw(num_, g1);
    MultiPoly d2 = g1.is_constant() ? o.den_ : divide_or_throw(o.den_, g1);
    MultiPoly n2 = g2.is_constant() ? o.num_ : divide_or_throw(o.num_, g2);
    MultiPoly d1 = g2.is_constant() ? den_ : divide_or_throw(den_, g2);
    num_ = n1 * n2;
    den_ = d1 * d2;
    normalize_unit(num_, den_);
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw PoleError("inverse of zero rational function");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    normalize_unit(r.num_, r.den_);
    return r;
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

RatFunc RatFunc::derivative(Var v) const {
    if (!uses(v)) return RatFunc();
    if (!den_.uses(v)) {
        RatFunc r = *this;
        r.num_ = num_.derivative(v);
        return make(r.num_, den_);
    }
    // (n/d)' = (n'd - nd')/d^2; divide out gcd(d, d') first to keep sizes down.
    MultiPoly dd = den_.derivative(v);
    MultiPoly g = poly_gcd(den_, dd);
    MultiPoly dg = divide_or_throw(den_, g);
    MultiPoly top = num_.derivative(v) * dg - num_ * divide_or_throw(dd, g);
    return make(top, den_ * dg);
}

RatFunc substitute(const MultiPoly& p, const std::map<Var, RatFunc>& values) {
    auto [n, d] = substitute_fraction(p, values);
    return RatFunc::make(n, d);
}

RatFunc RatFunc::substitute(const std::map<Var, RatFunc>& values) const {
    auto [nn, nd] = substitute_fraction(num_, values);
    auto [dn, dd] = substitute_fraction(den_, values);
    if (dn.is_zero()) throw PoleError("substitution makes the denominator vanish: " + to_string());
    return make(nn * dd, dn * nd);
}

GaussianRational RatFunc::evaluate(const Assignment& at) const {
    RatFunc r = evaluate_partial(at);
    if (!r.is_constant()) fail(ErrorKind::InvalidInput, "evaluation leaves free variables: " + r.to_string());
    return r.constant_value();
}

RatFunc RatFunc::evaluate_partial(const Assignment& at) const {
    MultiPoly n = num_, d = den_;
    for (const auto& [v, value] : at) {
        n = n.evaluate(v, value);
        d = d.evaluate(v, value);
    }
    if (d.is_zero()) throw PoleError("pole of " + to_string());
    return make(n, d);
}

std::complex<double> RatFunc::evaluate_float(const FloatAssignment& at) const {
    auto eval_poly = [&at](const MultiPoly& p) {
        std::complex<double> sum = 0;
        for (const auto& [m, c] : p.terms()) {
            std::complex<double> t = c.to_complex();
            for (int i = 0; i < kNumVars; ++i) {
                if (m.exp[i] == 0) continue;
                auto it = at.find(static_cast<Var>(i));
                if (it == at.end())
                    fail(ErrorKind::InvalidInput, std::string("unassigned variable ") + var_name(static_cast<Var>(i)));
                t *= std::pow(it->second, static_cast<int>(m.exp[i]));
            }
            sum += t;
        }
        return sum;
    };
    std::complex<double> d = eval_poly(den_);
    if (d == 0.0) throw PoleError("floating-point pole of " + to_string());
    return eval_poly(num_) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_constant()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

GaussianRational residue_at_infinity(const RatFunc& f, Var z) {
    unsigned other = f.var_mask() & ~(1u << static_cast<int>(z));
    if (other != 0) fail(ErrorKind::InvalidInput, "residue_at_infinity needs a univariate function: " + f.to_string());
    if (f.is_polynomial()) return 0;
    // num = q*den + r; only r/den contributes, and its z^{-1} coefficient is
    // lc(r)/lc(den) exactly when deg r = deg den - 1.
    auto num = f.num().as_univariate(z);
    auto den = f.den().as_univariate(z);
    std::vector<GaussianRational> r(num.size()), d(den.size());
    for (std::size_t i = 0; i < num.size(); ++i) r[i] = num[i].constant_term();
    for (std::size_t i = 0; i < den.size(); ++i) d[i] = den[i].constant_term();
    GaussianRational inv = d.back().inverse();
    while (r.size() >= d.size()) {
        GaussianRational q = r.back() * inv;
        std::size_t shift = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) r[i + shift] -= q * d[i];
        r.pop_back();
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    if (r.size() + 1 != d.size()) return 0;
    return r.back() * inv;
}

} // namespace trigdarboux
