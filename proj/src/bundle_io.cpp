#include "bundle_io.hpp"

#include "errors.hpp"

namespace trigdarboux::io {

namespace {

json coefficient_list(const MultiPoly& p, Var v) {
    json out = json::array();
    for (const auto& c : p.as_univariate(v)) out.push_back(to_json(c.is_zero() ? GaussianRational(0) : c.constant_term()));
    return out;
}

MultiPoly from_coefficient_list(const json& j, Var v) {
    require(j.is_array(), "coefficient list must be an array, got " + j.dump());
    if (!j.empty() && j[0].is_object() && j[0].contains("exponents")) return poly_from_json(j);
    std::vector<MultiPoly> coeffs;
    for (const auto& c : j) coeffs.emplace_back(scalar_from_json(c));
    return MultiPoly::from_univariate(v, coeffs);
}

unsigned unsigned_field(const json& j, const char* key) {
    require(j.contains(key), std::string("missing field \"") + key + "\" in " + j.dump());
    const json& v = j.at(key);
    require(v.is_number_integer() && v.get<long>() >= 0, std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<unsigned>();
}

} // namespace

json to_json(const DiffOp& a) {
    json coeffs = json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(to_json(c));
    return {{"order", a.order()}, {"coeffs", coeffs}, {"text", a.to_string()}};
}

json to_json(const DifferenceOp& a) {
    json coeffs = json::array();
    for (int m = 0; m <= a.order(); ++m) coeffs.push_back(to_json(a.coeff(static_cast<unsigned>(m))));
    return {{"order", a.order()},
            {"variable", var_name(a.variable())},
            {"basis", a.basis() == DifferenceOp::Basis::Shift ? "T" : "Delta"},
            {"coeffs", coeffs},
            {"text", a.to_string()}};
}

json to_json(const QuasiPoly& f) {
    json out = json::array();
    for (const auto& [lambda, p] : f.parts()) out.push_back({{"lambda", to_json(lambda)}, {"poly", coefficient_list(p, Var::x)}});
    return out;
}

json to_json(const ReducedWave& w) { return {{"frame", w.frame}, {"rho", to_json(w.rho)}}; }

json to_json(const KernelChainSpec& c) {
    json terms = json::array();
    for (const auto& t : c.terms) terms.push_back({{"k", t.k}, {"j", t.j}, {"coeff", to_json(t.coeff)}});
    return {{"r", c.r}, {"terms", terms}};
}

json to_json(const SpectralData& d) {
    json groups = json::array();
    for (const auto& g : d.groups()) groups.push_back({{"lambda", to_json(g.lambda)}, {"mult", g.mult}});
    return {{"groups", groups}};
}

json to_json(const TrigSpec& s) {
    json chains = json::array();
    for (const auto& c : s.chains) chains.push_back(to_json(c));
    return {{"spectral", to_json(s.data)}, {"chains", chains}};
}

json to_json(const std::vector<AdelicPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) arr.push_back({{"poly", coefficient_list(p.p, Var::s)}, {"lambda", to_json(p.lambda)}});
    return {{"adelic", arr}};
}

json to_json(const DarbouxTransform& t) {
    json out = {{"kind", kind_name(t.kind)},
                {"P", to_json(t.P)},
                {"Q", to_json(t.Q)},
                {"h", to_json(t.h.symbol())},
                {"f", to_json(t.f)},
                {"g", to_json(t.g)},
                {"psi", to_json(t.psi)},
                {"psi_star", to_json(t.psi_star)},
                {"trigonometric", t.trigonometric()}};
    out["f_text"] = t.f.to_string();
    out["g_text"] = t.g.to_string();
    out["h_text"] = t.h.symbol().to_string();
    if (t.data) out["spectral"] = to_json(*t.data);
    if (t.trigonometric()) {
        out["theta"] = to_json(t.theta);
        out["nu"] = to_json(t.nu);
        out["Pbar"] = to_json(t.Pbar);
        out["Qbar"] = to_json(t.Qbar);
    }
    json basis = json::array();
    for (const auto& e : t.normalized_basis)
        basis.push_back({{"r", e.r}, {"j", e.j}, {"k", e.k}, {"phi", to_json(e.phi)}});
    out["normalized_basis"] = basis;
    return out;
}

json to_json(const DiscreteOperators& ops) {
    return {{"R", to_json(ops.R)},
            {"S", to_json(ops.S)},
            {"R_shift", to_json(ops.R.to_shift())},
            {"S_shift", to_json(ops.S.to_shift())},
            {"theta", to_json(ops.theta)},
            {"nu", to_json(ops.nu)}};
}

json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        fail(ErrorKind::InvalidInput, what + ": JSON syntax error at line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + e.what());
    }
}

KernelInput kernel_from_json(const json& j) {
    require(j.is_object(), "kernel spec must be a JSON object");
    KernelInput in;
    if (j.contains("adelic")) {
        require(!j.contains("spectral"), "kernel spec must contain either \"spectral\" or \"adelic\", not both");
        require(j.at("adelic").is_array(), "\"adelic\" must be an array");
        for (const auto& p : j.at("adelic")) {
            require(p.is_object() && p.contains("poly") && p.contains("lambda"), "adelic point needs poly and lambda: " + p.dump());
            in.adelic.push_back({from_coefficient_list(p.at("poly"), Var::s), scalar_from_json(p.at("lambda"))});
        }
        return in;
    }
    require(j.contains("spectral"), "kernel spec needs \"spectral\" or \"adelic\"");
    const json& sp = j.at("spectral");
    require(sp.is_object() && sp.contains("groups") && sp.at("groups").is_array(), "\"spectral\" needs a \"groups\" array");
    std::vector<SpectralGroup> groups;
    for (const auto& g : sp.at("groups")) {
        require(g.is_object() && g.contains("lambda") && g.contains("mult"), "spectral group needs lambda and mult: " + g.dump());
        SpectralGroup group{scalar_from_json(g.at("lambda")), {}};
        require(g.at("mult").is_array(), "mult must be an array of nonnegative integers");
        for (const auto& m : g.at("mult")) {
            require(m.is_number_integer() && m.get<long>() >= 0, "mult entries must be nonnegative integers, got " + m.dump());
            group.mult.push_back(m.get<unsigned>());
        }
        groups.push_back(std::move(group));
    }
    TrigSpec spec{SpectralData(std::move(groups)), {}};
    if (j.contains("chains")) {
        require(j.at("chains").is_array(), "\"chains\" must be an array");
        for (const auto& c : j.at("chains")) {
            require(c.is_object() && c.contains("terms") && c.at("terms").is_array(), "chain needs a terms array: " + c.dump());
            KernelChainSpec chain;
            chain.r = unsigned_field(c, "r");
            for (const auto& t : c.at("terms")) {
                require(t.is_object() && t.contains("coeff"), "chain term needs k, j, coeff: " + t.dump());
                chain.terms.push_back({unsigned_field(t, "k"), unsigned_field(t, "j"), scalar_from_json(t.at("coeff"))});
            }
            spec.chains.push_back(std::move(chain));
        }
    }
    in.trig = std::move(spec);
    return in;
}

DarbouxTransform build(const KernelInput& in) {
    if (in.trig) return build_trig(in.trig->data, in.trig->chains);
    return build_adelic(in.adelic);
}

PairInput pair_from_json(const json& j) {
    require(j.is_object() && j.contains("X") && j.contains("Z"), "CM pair needs X and Z");
    PairInput p;
    std::string kind = j.value("kind", std::string("rational"));
    require(kind == "rational" || kind == "trig", "CM pair kind must be \"rational\" or \"trig\", got \"" + kind + "\"");
    p.trig = kind == "trig";
    p.X = matrix_from_json(j.at("X"));
    p.Z = matrix_from_json(j.at("Z"));
    require(p.X.is_square() && p.Z.is_square() && p.X.rows() == p.Z.rows(), "X and Z must be square of equal size");
    if (j.contains("N"))
        require(unsigned_field(j, "N") == p.X.rows(), "N = " + j.at("N").dump() + " does not match the matrix size");
    return p;
}

json to_json(const CMPairRational& p) {
    return {{"N", p.size()}, {"X", to_json(p.X)}, {"Z", to_json(p.Z)}, {"kind", "rational"}};
}

json to_json(const CMPairTrig& p) { return {{"N", p.size()}, {"X", to_json(p.X)}, {"Z", to_json(p.Z)}, {"kind", "trig"}}; }

} // namespace trigdarboux::io
