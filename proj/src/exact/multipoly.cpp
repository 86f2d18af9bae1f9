#include "exact/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace trigdarboux {

namespace {

constexpr std::array<const char*, kNumVars> kVarNames = {"x", "u", "w", "z", "n", "y", "s"};

int var_index(Var v) { return static_cast<int>(v); }

// Sorts and merges duplicate monomials, dropping zeros.
void canonicalize(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.first, b.first) > 0; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        GaussianRational c = std::move(terms[i].second);
        while (j < terms.size() && terms[j].first == terms[i].first) {
            c += terms[j].second;
            ++j;
        }
        if (!c.is_zero()) {
            terms[out].first = terms[i].first;
            terms[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::vector<Term> out;
    out.reserve(ta.size() + tb.size());
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        int c = i == ta.size() ? -1 : j == tb.size() ? 1 : grlex_compare(ta[i].first, tb[j].first);
        if (c > 0) {
            out.push_back(ta[i++]);
        } else if (c < 0) {
            out.emplace_back(tb[j].first, subtract ? -tb[j].second : tb[j].second);
            ++j;
        } else {
            GaussianRational s = subtract ? ta[i].second - tb[j].second : ta[i].second + tb[j].second;
            if (!s.is_zero()) out.emplace_back(ta[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return MultiPoly::from_terms(std::move(out));
}

} // namespace

const char* var_name(Var v) { return kVarNames[var_index(v)]; }

std::optional<Var> var_from_name(const std::string& name) {
    for (int i = 0; i < kNumVars; ++i)
        if (name == kVarNames[i]) return static_cast<Var>(i);
    return std::nullopt;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    for (int i = 0; i < kNumVars; ++i)
        if (exp[i] > other.exp[i]) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kNumVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
    return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kNumVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    return m;
}

Monomial Monomial::of(Var v, unsigned power) {
    Monomial m;
    m.exp[var_index(v)] = static_cast<std::uint16_t>(power);
    return m;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    for (int i = kNumVars - 1; i >= 0; --i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
    return 0;
}

MultiPoly::MultiPoly(GaussianRational c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, std::move(c));
}

MultiPoly MultiPoly::var(Var v, unsigned power) { return monomial(Monomial::of(v, power), 1); }

MultiPoly MultiPoly::monomial(const Monomial& m, GaussianRational c) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
    MultiPoly p;
    bool sorted = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].second.is_zero() || (i > 0 && grlex_compare(terms[i - 1].first, terms[i].first) <= 0)) {
            sorted = false;
            break;
        }
    }
    if (!sorted) canonicalize(terms);
    p.terms_ = std::move(terms);
    return p;
}

GaussianRational MultiPoly::constant_value() const {
    if (!is_constant()) fail(ErrorKind::Inconsistent, "polynomial is not constant: " + to_string());
    return constant_term();
}

GaussianRational MultiPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return 0;
}

unsigned MultiPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

unsigned MultiPoly::degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first[v]);
    return d;
}

unsigned MultiPoly::min_degree(Var v) const {
    if (terms_.empty()) return 0;
    unsigned d = terms_.front().first[v];
    for (const auto& t : terms_) d = std::min(d, t.first[v]);
    return d;
}

bool MultiPoly::uses(Var v) const {
    for (const auto& t : terms_)
        if (t.first[v] != 0) return true;
    return false;
}

unsigned MultiPoly::var_mask() const {
    unsigned mask = 0;
    for (const auto& t : terms_)
        for (int i = 0; i < kNumVars; ++i)
            if (t.first.exp[i] != 0) mask |= 1u << i;
    return mask;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) { return *this = merge(*this, o, false); }
MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this = merge(*this, o, true); }
MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
    } else if (!c.is_one()) {
        for (auto& t : terms_) t.second *= c;
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1 && a.terms_[0].first.is_one()) return b * a.terms_[0].second;
    if (b.size() == 1 && b.terms_[0].first.is_one()) return a * b.terms_[0].second;
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) out.emplace_back(ta.first * tb.first, ta.second * tb.second);
    if (a.size() == 1 || b.size() == 1) return MultiPoly::from_terms(std::move(out));
    canonicalize(out);
    MultiPoly p;
    p.terms_ = std::move(out);
    return p;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r(1), b = *this;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

MultiPoly MultiPoly::derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.first[v];
        if (e == 0) continue;
        Monomial m = t.first;
        m.exp[var_index(v)] = static_cast<std::uint16_t>(e - 1);
        out.emplace_back(m, t.second * GaussianRational(static_cast<long>(e)));
    }
    return from_terms(std::move(out));
}

MultiPoly MultiPoly::shifted(const Monomial& m) const {
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.first = t.first * m;
    return p;  // multiplication by a monomial preserves grlex order
}

MultiPoly MultiPoly::monic() const {
    if (is_zero() || leading_coeff().is_one()) return *this;
    return *this * leading_coeff().inverse();
}

std::vector<MultiPoly> MultiPoly::as_univariate(Var v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto& t : terms_) {
        Monomial m = t.first;
        unsigned e = m[v];
        m.exp[var_index(v)] = 0;
        buckets[e].emplace_back(m, t.second);
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    if (terms_.empty()) out.clear();
    return out;
}

MultiPoly MultiPoly::from_univariate(Var v, const std::vector<MultiPoly>& coeffs) {
    std::vector<Term> out;
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        for (const auto& t : coeffs[e].terms_) {
            Monomial m = t.first;
            m.exp[var_index(v)] = static_cast<std::uint16_t>(m.exp[var_index(v)] + e);
            out.emplace_back(m, t.second);
        }
    return from_terms(std::move(out));
}

MultiPoly MultiPoly::coefficient(Var v, unsigned power) const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (t.first[v] == power) {
            Monomial m = t.first;
            m.exp[var_index(v)] = 0;
            out.emplace_back(m, t.second);
        }
    return from_terms(std::move(out));
}

MultiPoly MultiPoly::evaluate(Var v, const GaussianRational& value) const {
    if (!uses(v)) return *this;
    std::vector<GaussianRational> powers{GaussianRational(1)};
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.first[v];
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        Monomial m = t.first;
        m.exp[var_index(v)] = 0;
        out.emplace_back(m, t.second * powers[e]);
    }
    return from_terms(std::move(out));
}

MultiPoly MultiPoly::compose(Var v, const MultiPoly& value) const {
    if (!uses(v)) return *this;
    auto coeffs = as_univariate(v);
    MultiPoly r;
    for (std::size_t i = coeffs.size(); i-- > 0;) r = r * value + coeffs[i];
    return r;
}

MultiPoly MultiPoly::rename(const std::vector<std::pair<Var, Var>>& mapping) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = t.first;
        for (const auto& [from, to] : mapping) m.exp[var_index(from)] = 0;
        for (const auto& [from, to] : mapping)
            m.exp[var_index(to)] = static_cast<std::uint16_t>(m.exp[var_index(to)] + t.first[from]);
        out.emplace_back(m, t.second);
    }
    return from_terms(std::move(out));
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.to_string();
        bool neg = c.is_real() && sgn(c.re()) < 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        if (neg) cs = (-c).to_string();
        bool unit = cs == "1";
        if (!unit || m.is_one()) os << cs;
        bool star = !unit;
        for (int i = 0; i < kNumVars; ++i) {
            if (m.exp[i] == 0) continue;
            if (star) os << "*";
            star = true;
            os << kVarNames[i];
            if (m.exp[i] > 1) os << "^" << m.exp[i];
        }
    }
    return os.str();
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) fail(ErrorKind::Pole, "polynomial division by zero");
    if (a.is_zero()) return MultiPoly{};
    if (b.is_constant()) return a * b.constant_value().inverse();
    for (int i = 0; i < kNumVars; ++i) {
        Var v = static_cast<Var>(i);
        if (a.degree(v) < b.degree(v)) return std::nullopt;
    }
    std::map<Monomial, GaussianRational, GrlexGreater> rem;
    for (const auto& t : a.terms()) rem.emplace(t.first, t.second);
    const Monomial& lm = b.leading_monomial();
    GaussianRational lc_inv = b.leading_coeff().inverse();
    std::vector<Term> quotient;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (!lm.divides(top->first)) return std::nullopt;
        Monomial qm = top->first / lm;
        GaussianRational qc = top->second * lc_inv;
        for (const auto& t : b.terms()) {
            Monomial key = qm * t.first;
            GaussianRational delta = qc * t.second;
            auto it = rem.find(key);
            if (it == rem.end()) {
                rem.emplace(key, -delta);
            } else {
                it->second -= delta;
                if (it->second.is_zero()) rem.erase(it);
            }
        }
        quotient.emplace_back(qm, std::move(qc));
    }
    return MultiPoly::from_terms(std::move(quotient));
}

MultiPoly divide_or_throw(const MultiPoly& a, const MultiPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) fail(ErrorKind::Inconsistent, "inexact polynomial division (" + a.to_string() + ") / (" + b.to_string() + ")");
    return *std::move(q);
}

namespace {

using Dense = std::vector<MultiPoly>;  // coefficient list in a main variable, low to high

void trim(Dense& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Dense prem_dense(Dense r, const Dense& b) {
    trim(r);
    int db = static_cast<int>(b.size()) - 1;
    int delta = static_cast<int>(r.size()) - 1 - db + 1;
    const MultiPoly& lcb = b.back();
    while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
        MultiPoly lr = r.back();
        int shift = static_cast<int>(r.size()) - 1 - db;
        for (auto& c : r) c = c * lcb;
        for (int i = 0; i <= db; ++i) r[i + shift] -= lr * b[i];
        r.pop_back();
        trim(r);
        --delta;
    }
    if (delta > 0 && !r.empty()) {
        MultiPoly scale = lcb.pow(static_cast<unsigned>(delta));
        for (auto& c : r) c = c * scale;
    }
    return r;
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b);

MultiPoly content(const Dense& coeffs) {
    MultiPoly g;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_rec(g, c);
        if (g.is_constant()) return MultiPoly(1);
    }
    return g;
}

// Univariate gcd over the coefficient field by the monic Euclidean algorithm.
MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b, Var v) {
    auto to_dense = [v](const MultiPoly& p) {
        std::vector<GaussianRational> d(p.degree(v) + 1);
        for (const auto& t : p.terms()) d[t.first[v]] = t.second;
        return d;
    };
    auto r0 = to_dense(a), r1 = to_dense(b);
    auto tidy = [](std::vector<GaussianRational>& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    };
    tidy(r0);
    tidy(r1);
    if (r0.size() < r1.size()) std::swap(r0, r1);
    while (!r1.empty()) {
        GaussianRational inv = r1.back().inverse();
        while (r0.size() >= r1.size() && !r0.empty()) {
            GaussianRational q = r0.back() * inv;
            std::size_t shift = r0.size() - r1.size();
            for (std::size_t i = 0; i < r1.size(); ++i) r0[i + shift] -= q * r1[i];
            r0.pop_back();
            tidy(r0);
        }
        std::swap(r0, r1);
    }
    std::vector<Term> out;
    for (std::size_t e = 0; e < r0.size(); ++e)
        if (!r0[e].is_zero()) out.emplace_back(Monomial::of(v, static_cast<unsigned>(e)), r0[e]);
    return MultiPoly::from_terms(std::move(out));
}

// Subresultant PRS on primitive inputs; returns the gcd up to a unit.
MultiPoly gcd_primitive(Dense a, Dense b, Var v) {
    if (a.size() < b.size()) std::swap(a, b);
    MultiPoly g(1), h(1);
    while (true) {
        int d = static_cast<int>(a.size()) - static_cast<int>(b.size());
        Dense r = prem_dense(a, b);
        if (r.empty()) break;
        if (r.size() == 1) return MultiPoly(1);
        MultiPoly divisor = g * h.pow(static_cast<unsigned>(d));
        for (auto& c : r) c = divide_or_throw(c, divisor);
        a = std::move(b);
        b = std::move(r);
        g = a.back();
        if (d == 1) {
            h = g;
        } else if (d > 1) {
            h = divide_or_throw(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
        }
    }
    MultiPoly c = content(b);
    MultiPoly result = MultiPoly::from_univariate(v, b);
    return c.is_constant() ? result : divide_or_throw(result, c);
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return MultiPoly(1);
    if (a == b) return a;
    unsigned ma = a.var_mask(), mb = b.var_mask();
    // A variable present in only one argument can be eliminated through the content.
    for (int i = 0; i < kNumVars; ++i) {
        unsigned bit = 1u << i;
        if ((ma & bit) && !(mb & bit)) {
            MultiPoly g = b;
            for (const auto& c : a.as_univariate(static_cast<Var>(i))) {
                if (c.is_zero()) continue;
                g = gcd_rec(g, c);
                if (g.is_constant()) return MultiPoly(1);
            }
            return g;
        }
        if ((mb & bit) && !(ma & bit)) return gcd_rec(b, a);
    }
    // Same variable set. Pick the main variable of least degree.
    Var main = Var::x;
    unsigned best = ~0u;
    int nvars = 0;
    for (int i = 0; i < kNumVars; ++i) {
        if (!(ma & (1u << i))) continue;
        ++nvars;
        Var v = static_cast<Var>(i);
        unsigned d = std::max(a.degree(v), b.degree(v));
        if (d < best) {
            best = d;
            main = v;
        }
    }
    if (nvars == 1) return gcd_univariate(a, b, main);
    if (auto q = divide_exact(a, b)) return b;
    if (auto q = divide_exact(b, a)) return a;
    Dense da = a.as_univariate(main), db = b.as_univariate(main);
    MultiPoly ca = content(da), cb = content(db);
    MultiPoly c = gcd_rec(ca, cb);
    if (!ca.is_constant())
        for (auto& x : da) x = divide_or_throw(x, ca);
    if (!cb.is_constant())
        for (auto& x : db) x = divide_or_throw(x, cb);
    MultiPoly g = gcd_primitive(std::move(da), std::move(db), main);
    return c.is_constant() ? g : c * g;
}

} // namespace

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v) {
    if (b.is_zero()) fail(ErrorKind::Pole, "pseudo-division by zero");
    Dense r = prem_dense(a.as_univariate(v), b.as_univariate(v));
    return MultiPoly::from_univariate(v, r);
}

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) { return gcd_rec(a, b).monic(); }

MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    MultiPoly g = poly_gcd(a, b);
    return (divide_or_throw(a, g) * b).monic();
}

} // namespace trigdarboux
