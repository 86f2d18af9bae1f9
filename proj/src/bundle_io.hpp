#pragma once

// JSON encodings of operators, transforms, kernel specs and CM pairs.

#include <optional>
#include <string>
#include <vector>

#include "bispectral.hpp"
#include "calogero_moser.hpp"
#include "corpus.hpp"
#include "exact/serialize.hpp"

namespace trigdarboux::io {

json to_json(const DiffOp& a);
json to_json(const DifferenceOp& a);
json to_json(const QuasiPoly& f);
json to_json(const ReducedWave& w);
json to_json(const KernelChainSpec& c);
json to_json(const SpectralData& d);
json to_json(const TrigSpec& s);
json to_json(const std::vector<AdelicPoint>& points);
json to_json(const DarbouxTransform& t);
json to_json(const DiscreteOperators& ops);

/// Parses text, reporting syntax errors with line and column.
json parse_text(const std::string& text, const std::string& what);

/// Either a trigonometric kernel spec or a list of adelic points.
struct KernelInput {
    std::optional<TrigSpec> trig;
    std::vector<AdelicPoint> adelic;
};
KernelInput kernel_from_json(const json& j);
DarbouxTransform build(const KernelInput& in);

struct PairInput {
    bool trig = false;
    ScalarMatrix X, Z;

    CMPairRational rational() const { return {X, Z}; }
    CMPairTrig trigonometric() const { return {X, Z}; }
};
PairInput pair_from_json(const json& j);
json to_json(const CMPairRational& p);
json to_json(const CMPairTrig& p);

} // namespace trigdarboux::io
