#pragma once

#include "json.hpp"

#include "exact/matrix.hpp"

namespace trigdarboux::io {

using nlohmann::json;

// Exact scalars are always strings inside JSON, never JSON numbers.
json to_json(const GaussianRational& c);
json to_json(const MultiPoly& p);
json to_json(const RatFunc& f);
json to_json(const ScalarMatrix& m);
json to_json(const RatMatrix& m);

/// Accepts {"re":"p/q","im":"p/q"} (im optional) or a bare "p/q" string.
GaussianRational scalar_from_json(const json& j);
MultiPoly poly_from_json(const json& j);
RatFunc ratfunc_from_json(const json& j);
ScalarMatrix matrix_from_json(const json& j);

} // namespace trigdarboux::io
