#include "corpus.hpp"

#include "darboux.hpp"
#include "errors.hpp"

namespace trigdarboux {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

struct Slot {
    unsigned k, j;
};

std::vector<Slot> slots(const SpectralGroup& g) {
    std::vector<Slot> out;
    for (unsigned j = 0; j < g.mult.size(); ++j)
        for (unsigned k = 0; k < g.mult[j]; ++k) out.push_back({k, j});
    return out;
}

bool has_repeated_root(const SpectralData& data) {
    for (const auto& g : data.groups())
        for (unsigned m : g.mult)
            if (m >= 2) return true;
    return false;
}

// Appends candidates that keep the set independent, up to max_order elements.
void extend_independent(std::vector<QuasiPoly>& basis, const std::vector<QuasiPoly>& candidates, unsigned max_order) {
    for (const auto& c : candidates) {
        if (basis.size() >= max_order) return;
        if (!in_span(basis, c)) basis.push_back(c);
    }
}

} // namespace

GaussianRational random_scalar(Rng& rng, long range, long max_den, bool complex) {
    mpq_class re(uniform(rng, -range, range), uniform(rng, 1, max_den));
    re.canonicalize();
    if (!complex || uniform(rng, 0, 1) == 0) return GaussianRational(re, 0);
    mpq_class im(uniform(rng, -range, range), uniform(rng, 1, max_den));
    im.canonicalize();
    return GaussianRational(re, im);
}

GaussianRational random_nonzero_scalar(Rng& rng, long range, long max_den, bool complex) {
    while (true) {
        GaussianRational c = random_scalar(rng, range, max_den, complex);
        if (!c.is_zero()) return c;
    }
}

SpectralData random_spectral_data(Rng& rng, unsigned max_degree) {
    require(max_degree >= 1, "spectral data needs degree at least 1");
    while (true) {
        const long ngroups = max_degree >= 2 ? uniform(rng, 1, 2) : 1;
        std::vector<SpectralGroup> groups;
        unsigned degree = 0;
        for (long r = 0; r < ngroups; ++r) {
            SpectralGroup g;
            g.lambda = random_scalar(rng, 3, 3);
            const long top = uniform(rng, 0, 2);
            for (long j = 0; j <= top; ++j) g.mult.push_back(static_cast<unsigned>(uniform(rng, j == 0 ? 1 : 0, 2)));
            while (g.mult.size() > 1 && g.mult.back() == 0) g.mult.pop_back();
            for (unsigned m : g.mult) degree += m;
            groups.push_back(std::move(g));
        }
        if (degree > max_degree) continue;
        if (ngroups == 2 && (groups[0].lambda - groups[1].lambda).is_integer()) continue;
        return SpectralData(std::move(groups));
    }
}

KernelChainSpec random_chain(Rng& rng, const SpectralData& data, std::size_t r) {
    const auto all = slots(data.groups()[r]);
    KernelChainSpec spec;
    spec.r = r;
    while (spec.terms.empty()) {
        for (const auto& s : all)
            if (uniform(rng, 0, 2) > 0) spec.terms.push_back({s.k, s.j, random_nonzero_scalar(rng)});
    }
    return spec;
}

TrigSpec random_trig_spec(Rng& rng, unsigned max_order, bool require_mixed) {
    while (true) {
        TrigSpec spec{random_spectral_data(rng), {}};
        std::vector<QuasiPoly> basis;
        const long target = uniform(rng, 1, static_cast<long>(std::min(max_order, spec.data.degree())));
        for (int attempt = 0; attempt < 8 && static_cast<long>(basis.size()) < target; ++attempt) {
            auto r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(spec.data.size()) - 1));
            KernelChainSpec chain = random_chain(rng, spec.data, r);
            auto expanded = chain_expand(chain, spec.data);
            if (basis.size() + expanded.size() > static_cast<std::size_t>(target)) continue;
            std::vector<QuasiPoly> trial = basis;
            trial.insert(trial.end(), expanded.begin(), expanded.end());
            if (span_dimension(trial) != trial.size()) continue;
            basis = std::move(trial);
            spec.chains.push_back(std::move(chain));
        }
        if (basis.empty()) continue;
        if (require_mixed) {
            bool mixed = false;
            for (const auto& e : normalize_basis(basis, spec.data)) mixed = mixed || e.phi.parts().size() > 1;
            if (!mixed) continue;
        }
        return spec;
    }
}

std::vector<QuasiPoly> random_violating_kernel(Rng& rng, const SpectralData& data, unsigned max_order) {
    require(has_repeated_root(data), "closure can only be violated when some multiplicity is at least 2");
    std::vector<std::size_t> rich;
    for (std::size_t r = 0; r < data.size(); ++r)
        for (unsigned m : data.groups()[r].mult)
            if (m >= 2) {
                rich.push_back(r);
                break;
            }
    while (true) {
        const std::size_t r = rich[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(rich.size()) - 1))];
        std::vector<QuasiPoly> basis;
        switch (uniform(rng, 0, 2)) {
            case 0: {
                // Chain with its last member dropped.
                KernelChainSpec chain = random_chain(rng, data, r);
                auto expanded = chain_expand(chain, data);
                if (expanded.size() < 2) continue;
                expanded.pop_back();
                extend_independent(basis, expanded, max_order);
                break;
            }
            case 1: {
                // One W_r element carrying a positive x power.
                QuasiPoly phi;
                bool lifted = false;
                for (const auto& s : slots(data.groups()[r])) {
                    if (uniform(rng, 0, 1) == 0 && !(s.k > 0 && !lifted)) continue;
                    phi += QuasiPoly::monomial(data.groups()[r].lambda - GaussianRational(static_cast<long>(s.j)), s.k,
                                               random_nonzero_scalar(rng));
                    lifted = lifted || s.k > 0;
                }
                if (!lifted) continue;
                basis.push_back(phi);
                break;
            }
            default: {
                // A closed chain plus one unclosed element from the same lattice.
                auto chain = chain_expand(random_chain(rng, data, r), data);
                extend_independent(basis, chain, max_order > 1 ? max_order - 1 : 1);
                QuasiPoly extra;
                for (const auto& s : slots(data.groups()[r]))
                    if (s.k > 0 && uniform(rng, 0, 1) == 1)
                        extra += QuasiPoly::monomial(data.groups()[r].lambda - GaussianRational(static_cast<long>(s.j)),
                                                     s.k, random_nonzero_scalar(rng));
                extend_independent(basis, {extra}, max_order);
                break;
            }
        }
        if (!basis.empty() && basis.size() <= max_order) return basis;
    }
}

} // namespace trigdarboux
