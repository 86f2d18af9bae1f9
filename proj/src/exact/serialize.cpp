#include "exact/serialize.hpp"

namespace trigdarboux::io {

json to_json(const GaussianRational& c) { return {{"re", c.re_string()}, {"im", c.im_string()}}; }

json to_json(const MultiPoly& p) {
    json arr = json::array();
    for (const auto& [m, c] : p.terms()) {
        json e = json::array();
        for (auto x : m.exp) e.push_back(x);
        arr.push_back({{"exponents", e}, {"coeff", to_json(c)}});
    }
    return arr;
}

json to_json(const RatFunc& f) {
    return {{"num", to_json(f.num())}, {"den", to_json(f.den())}, {"text", f.to_string()}};
}

json to_json(const ScalarMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

GaussianRational scalar_from_json(const json& j) {
    if (j.is_string()) return GaussianRational::parse(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(j.get<long>());
    require(j.is_object() && j.contains("re"), "scalar must be {\"re\":\"p/q\",\"im\":\"p/q\"}, got " + j.dump());
    auto part = [](const json& v) {
        if (v.is_number_integer()) return std::to_string(v.get<long>());
        require(v.is_string(), "scalar parts must be strings, got " + v.dump());
        return v.get<std::string>();
    };
    return GaussianRational::parse(part(j.at("re")), j.contains("im") ? part(j.at("im")) : "0");
}

MultiPoly poly_from_json(const json& j) {
    require(j.is_array(), "polynomial must be an array of terms, got " + j.dump());
    std::vector<Term> terms;
    for (const auto& t : j) {
        require(t.is_object() && t.contains("exponents") && t.contains("coeff"), "bad polynomial term " + t.dump());
        const auto& e = t.at("exponents");
        require(e.is_array() && e.size() <= kNumVars, "exponent vector must have at most 7 entries");
        Monomial m;
        for (std::size_t i = 0; i < e.size(); ++i) {
            require(e[i].is_number_unsigned() || (e[i].is_number_integer() && e[i].get<long>() >= 0),
                    "exponents must be nonnegative integers");
            m.exp[i] = static_cast<std::uint16_t>(e[i].get<unsigned>());
        }
        terms.emplace_back(m, scalar_from_json(t.at("coeff")));
    }
    return MultiPoly::from_terms(std::move(terms));
}

RatFunc ratfunc_from_json(const json& j) {
    if (j.is_array()) return RatFunc(poly_from_json(j));
    require(j.is_object() && j.contains("num"), "rational function must be {num, den}");
    return RatFunc::make(poly_from_json(j.at("num")), j.contains("den") ? poly_from_json(j.at("den")) : MultiPoly(1));
}

ScalarMatrix matrix_from_json(const json& j) {
    require(j.is_array(), "matrix must be a nested array");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    std::vector<GaussianRational> data;
    for (const auto& row : j) {
        require(row.is_array() && row.size() == cols, "matrix rows must have equal length");
        for (const auto& e : row) data.push_back(scalar_from_json(e));
    }
    return ScalarMatrix(rows, cols, std::move(data));
}

} // namespace trigdarboux::io
