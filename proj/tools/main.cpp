// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trigdarboux/trigdarboux.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0, kExitCheck = 1, kExitInput = 2;

int exit_code(td_status s) {
    switch (s) {
    case TD_OK: return kExitOk;
    case TD_CHECK_FAILED:
    case TD_INTERNAL: return kExitCheck;
    default: return kExitInput;
    }
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Frees strings handed out by the library.
struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { td_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct ConfigDeleter {
    void operator()(td_config* c) const { td_config_free(c); }
};
using Config = std::unique_ptr<td_config, ConfigDeleter>;

struct Options {
    std::string spec, pair, grid, out, format = "json";
    unsigned long long seed = 20241018;
    double tol = 1e-9;
    unsigned trunc = 60;
    bool no_timing = false;
    long n = 1;
    std::vector<double> times;
    int corpus = -1;
    int corpus_trig = -1, corpus_cm = -1, corpus_classifier = -1, corpus_contractive = -1;
    bool inject_fault = false;
};

void check(td_status s) {
    if (s != TD_OK) throw InputError(td_last_error());
}

Config make_config(const Options& o) {
    td_config* raw = nullptr;
    check(td_config_new(nullptr, &raw));
    Config c(raw);
    check(td_config_set_seed(c.get(), o.seed));
    check(td_config_set_tolerance(c.get(), o.tol));
    check(td_config_set_truncation(c.get(), o.trunc));
    check(td_config_set_format(c.get(), o.format.c_str()));
    check(td_config_set_timing(c.get(), o.no_timing ? 0 : 1));
    check(td_config_set_fault_injection(c.get(), o.inject_fault ? 1 : 0));
    if (o.corpus >= 0) check(td_config_set_corpus(c.get(), "all", static_cast<unsigned>(o.corpus)));
    const std::pair<const char*, int> per[] = {
        {"trig", o.corpus_trig}, {"cm", o.corpus_cm}, {"classifier", o.corpus_classifier}, {"contractive", o.corpus_contractive}};
    for (const auto& [name, size] : per)
        if (size >= 0) check(td_config_set_corpus(c.get(), name, static_cast<unsigned>(size)));
    return c;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
}

// JSON: one document {"result", "report"}. Text: the report, with the result written to --out if given.
void emit_result(const Options& o, const OwnedString& output, const OwnedString& report) {
    if (o.format == "json") {
        json doc;
        doc["result"] = output.p ? json::parse(output.str()) : json();
        doc["report"] = report.p ? json::parse(report.str()) : json();
        emit(o, doc.dump(2) + "\n");
        return;
    }
    std::cout << report.str();
    if (!o.out.empty() && output.p) emit(o, output.str());
}

int finish(td_status s, const Options& o, const OwnedString& output, const OwnedString& report) {
    if (s == TD_OK || s == TD_CHECK_FAILED) {
        emit_result(o, output, report);
        if (s == TD_CHECK_FAILED) std::cerr << "check failed\n";
    } else {
        std::cerr << "error (" << td_status_name(s) << "): " << td_last_error() << "\n";
    }
    return exit_code(s);
}

using SpecCommand = td_status (*)(const char*, const td_config*, char**, char**);

int run_spec_command(SpecCommand cmd, const Options& o) {
    std::string spec = read_file(o.spec);
    Config c = make_config(o);
    OwnedString output, report;
    td_status s = cmd(spec.c_str(), c.get(), &output.p, &report.p);
    return finish(s, o, output, report);
}

int run_cm(const std::string& verb, const Options& o) {
    std::string pair = read_file(o.pair);
    Config c = make_config(o);
    OwnedString output, report;
    td_status s = td_cmd_cm(verb.c_str(), pair.c_str(), c.get(), o.n, o.times.data(), o.times.size(), &output.p, &report.p);
    return finish(s, o, output, report);
}

int run_suite(const Options& o) {
    Config c = make_config(o);
    OwnedString report;
    td_status s = td_cmd_suite(c.get(), &report.p);
    if (s == TD_OK || s == TD_CHECK_FAILED) {
        emit(o, report.str());
        if (s == TD_CHECK_FAILED) std::cerr << "check failed\n";
    } else {
        std::cerr << "error (" << td_status_name(s) << "): " << td_last_error() << "\n";
    }
    return exit_code(s);
}

int run_eval(const Options& o) {
    if (o.spec.empty() == o.pair.empty()) throw InputError("eval needs exactly one of --spec (bundle) or --pair");
    std::string target = read_file(o.spec.empty() ? o.pair : o.spec);
    std::string grid = read_file(o.grid);
    OwnedString csv;
    td_status s = td_cmd_eval(target.c_str(), grid.c_str(), &csv.p);
    if (s != TD_OK) {
        std::cerr << "error (" << td_status_name(s) << "): " << td_last_error() << "\n";
        return exit_code(s);
    }
    emit(o, csv.str());
    return kExitOk;
}

void common_flags(CLI::App* app, Options& o) {
    app->add_option("--seed", o.seed, "random seed");
    app->add_option("--tol", o.tol, "float tolerance")->check(CLI::PositiveNumber);
    app->add_option("--trunc,--K", o.trunc, "time-vector truncation K")->check(CLI::PositiveNumber);
    app->add_option("--out", o.out, "output file (default stdout)");
    app->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app->add_flag("--no-timing", o.no_timing, "omit elapsed times from reports");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Darboux transformations of e^{xz} and Calogero-Moser pairs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(td_version()));
    Options o;

    auto* build = app.add_subcommand("build", "build a Darboux transform from a kernel spec");
    build->add_option("--spec", o.spec, "kernel spec JSON")->required();
    common_flags(build, o);

    auto* verify = app.add_subcommand("verify", "build and run every check on a kernel spec");
    verify->add_option("--spec", o.spec, "kernel spec JSON");
    common_flags(verify, o);
    auto* verify_bisp = verify->add_subcommand("bispectral", "bispectral identities only");
    verify_bisp->add_option("--spec", o.spec, "kernel spec JSON")->required();
    common_flags(verify_bisp, o);

    auto* bisp = app.add_subcommand("bispectral", "bispectral operators and the discrete transform");
    bisp->add_option("--spec", o.spec, "kernel spec JSON")->required();
    common_flags(bisp, o);

    auto* cm = app.add_subcommand("cm", "Calogero-Moser pairs");
    cm->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> cm_verbs;
    const std::pair<const char*, const char*> verbs[] = {
        {"check", "test the rank-one condition"},
        {"map", "rational pair to trigonometric pair"},
        {"wave", "determinant wave against its defining conditions"},
        {"sato", "Sato quotient equals the determinant wave"},
        {"involution", "involution of the rational wave"},
        {"shift", "shift property of the float wave"},
        {"reconstruct", "Darboux bundle from a trigonometric pair"},
    };
    for (const auto& [verb, help] : verbs) {
        auto* sub = cm->add_subcommand(verb, help);
        sub->add_option("--pair", o.pair, "CM pair JSON")->required();
        common_flags(sub, o);
        if (std::string(verb) == "shift") {
            sub->add_option("--n", o.n, "discrete shift n");
            sub->add_option("--t", o.times, "base time vector t_1 t_2 ...");
        }
        cm_verbs.emplace_back(verb, sub);
    }

    auto* eval = app.add_subcommand("eval", "float evaluation of a wave on a grid, as CSV");
    eval->add_option("--spec", o.spec, "bundle JSON written by build");
    eval->add_option("--pair", o.pair, "CM pair JSON");
    eval->add_option("--grid", o.grid, "CSV grid with header x,z or n,z")->required();
    eval->add_option("--out", o.out, "output file (default stdout)");

    auto* suite = app.add_subcommand("suite", "run the randomized verification suite");
    common_flags(suite, o);
    suite->add_option("--corpus", o.corpus, "size of every corpus");
    suite->add_option("--corpus-trig", o.corpus_trig, "kernel specs for criteria 1-4 and 10");
    suite->add_option("--corpus-cm", o.corpus_cm, "CM pairs for criteria 5-7");
    suite->add_option("--corpus-classifier", o.corpus_classifier, "kernels for the classifier check");
    suite->add_option("--corpus-contractive", o.corpus_contractive, "contractive pairs for the shift check");
    suite->add_flag("--inject-fault", o.inject_fault, "add a deliberately corrupted check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*build) return run_spec_command(td_cmd_build, o);
        if (*verify_bisp) return run_spec_command(td_cmd_bispectral, o);
        if (*verify) {
            if (o.spec.empty()) throw InputError("verify needs --spec");
            return run_spec_command(td_cmd_verify, o);
        }
        if (*bisp) return run_spec_command(td_cmd_bispectral, o);
        for (const auto& [verb, sub] : cm_verbs)
            if (*sub) return run_cm(verb, o);
        if (*eval) return run_eval(o);
        if (*suite) return run_suite(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
