#pragma once

// Command layer shared by the C API and the CLI: reports, commands and the criteria suite.

#include <cstdint>
#include <string>
#include <vector>

#include "bundle_io.hpp"

namespace trigdarboux::harness {

using io::json;

struct CorpusSizes {
    unsigned trig = 50;        // randomized trigonometric kernel specs
    unsigned cm = 25;          // rational CM pairs, N cycling through 1, 2, 3
    unsigned classifier = 100; // mixed kernels, half chain-generated
    unsigned contractive = 10; // pairs for the shift property
};

struct RunConfig {
    std::uint64_t seed = 20241018;
    double tolerance = 1e-9;
    unsigned truncation = 60;
    CorpusSizes sizes;
    unsigned basepoint_search = 40;
    unsigned inclusion_window = 4;  // degree slack above deg h for the inclusion check
    unsigned tau_points = 10;
    bool inject_fault = false;
    std::string format = "json";  // json | text
    bool timing = true;           // elapsed times in reports
    std::string out;              // output path, empty for stdout

    void validate() const;
    json to_json() const;
    /// Missing keys keep their defaults.
    static RunConfig from_json(const json& j);
};

enum class Status { Pass, Fail, Error };
const char* status_name(Status s);

struct Record {
    std::string name;
    std::string anchor;  // the identity being checked
    Status status = Status::Pass;
    json witness;        // null unless the check failed
    json details;        // counts and other deterministic summaries
    double elapsed = 0;  // seconds
};

struct Report {
    std::vector<Record> records;

    void add(Record r);
    bool passed() const;
    /// 0 all pass, 1 otherwise.
    int exit_code() const { return passed() ? 0 : 1; }
    json to_json(bool with_timing = true) const;
    std::string to_text(bool with_timing = true) const;
};

/// Report in the configured format.
std::string render(const Report& report, const RunConfig& config);

/// Outcome of a command: a JSON payload plus the checks that ran.
struct CommandResult {
    json output;
    Report report;
};

CommandResult cmd_build(const json& spec, const RunConfig& config);
/// build plus orthogonality, inclusions, the negative control and (trigonometric) the bispectral identities.
CommandResult cmd_verify(const json& spec, const RunConfig& config);
CommandResult cmd_bispectral(const json& spec, const RunConfig& config);

struct CMOptions {
    long n = 1;             // discrete variable for the shift check
    std::vector<double> t;  // base time vector for the shift check
};
/// Sub-verbs: check, map, wave, sato, involution, shift, reconstruct.
CommandResult cmd_cm(const std::string& verb, const json& pair, const RunConfig& config, const CMOptions& options = {});

Report cmd_suite(const RunConfig& config);

/// Float evaluation of the wave on a CSV grid with header "x,z" or "n,z".
/// target is a bundle (bare or as the "result" of build) or a CM pair. Poles become flagged rows.
std::string cmd_eval(const json& target, const std::string& grid_csv);

} // namespace trigdarboux::harness
