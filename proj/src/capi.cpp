#include "trigdarboux/trigdarboux.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "errors.hpp"
#include "harness.hpp"

using namespace trigdarboux;

struct td_config {
    harness::RunConfig config;
};

struct td_transform {
    DarbouxTransform t;
};

struct td_cm_pair {
    io::PairInput pair;
};

namespace {

thread_local std::string last_error;

td_status status_of(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return TD_INVALID_INPUT;
    case ErrorKind::Pole: return TD_POLE;
    case ErrorKind::DependentBasis: return TD_DEPENDENT_BASIS;
    case ErrorKind::NotTrigonometric: return TD_NOT_TRIGONOMETRIC;
    case ErrorKind::Inconsistent: return TD_CHECK_FAILED;
    }
    return TD_INTERNAL;
}

template <class F>
td_status guarded(F&& body) {
    last_error.clear();
    try {
        return body();
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TD_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TD_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_string(char** dst, const std::string& s) {
    if (dst) *dst = copy_string(s);
}

void require_arg(const void* p, const char* name) {
    if (!p) fail(ErrorKind::InvalidInput, std::string(name) + " is NULL");
}

const harness::RunConfig& config_or_default(const td_config* c) {
    static const harness::RunConfig defaults;
    return c ? c->config : defaults;
}

io::json parse(const char* text, const char* what) {
    require_arg(text, what);
    return io::parse_text(text, what);
}

td_status finish(const harness::CommandResult& res, const harness::RunConfig& config, char** output, char** report) {
    set_string(output, res.output.dump(2) + "\n");
    set_string(report, harness::render(res.report, config));
    if (!res.report.passed()) {
        last_error = "one or more checks failed";
        return TD_CHECK_FAILED;
    }
    return TD_OK;
}

} // namespace

extern "C" {

const char* td_version(void) { return "0.1.0"; }

const char* td_last_error(void) { return last_error.c_str(); }

const char* td_status_name(td_status status) {
    switch (status) {
    case TD_OK: return "ok";
    case TD_CHECK_FAILED: return "check failed";
    case TD_INVALID_INPUT: return "invalid input";
    case TD_POLE: return "pole";
    case TD_NOT_TRIGONOMETRIC: return "not trigonometric";
    case TD_DEPENDENT_BASIS: return "dependent basis";
    case TD_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void td_string_free(char* s) { std::free(s); }

td_status td_config_new(const char* config_json, td_config** out) {
    return guarded([&] {
        require_arg(out, "out");
        io::json j = config_json ? io::parse_text(config_json, "run config") : io::json();
        *out = new td_config{harness::RunConfig::from_json(j)};
        return TD_OK;
    });
}

void td_config_free(td_config* config) { delete config; }

td_status td_config_set_seed(td_config* config, uint64_t seed) {
    return guarded([&] {
        require_arg(config, "config");
        config->config.seed = seed;
        return TD_OK;
    });
}

td_status td_config_set_tolerance(td_config* config, double tol) {
    return guarded([&] {
        require_arg(config, "config");
        require(tol > 0 && std::isfinite(tol), "tolerance must be positive");
        config->config.tolerance = tol;
        return TD_OK;
    });
}

td_status td_config_set_truncation(td_config* config, unsigned k) {
    return guarded([&] {
        require_arg(config, "config");
        require(k >= 1, "truncation K must be at least 1");
        config->config.truncation = k;
        return TD_OK;
    });
}

td_status td_config_set_corpus(td_config* config, const char* which, unsigned size) {
    return guarded([&] {
        require_arg(config, "config");
        require_arg(which, "which");
        auto& s = config->config.sizes;
        std::string w(which);
        if (w == "all")
            s = {size, size, size, size};
        else if (w == "trig")
            s.trig = size;
        else if (w == "cm")
            s.cm = size;
        else if (w == "classifier")
            s.classifier = size;
        else if (w == "contractive")
            s.contractive = size;
        else
            fail(ErrorKind::InvalidInput, "unknown corpus \"" + w + "\"");
        return TD_OK;
    });
}

td_status td_config_set_fault_injection(td_config* config, int enabled) {
    return guarded([&] {
        require_arg(config, "config");
        config->config.inject_fault = enabled != 0;
        return TD_OK;
    });
}

td_status td_config_set_format(td_config* config, const char* format) {
    return guarded([&] {
        require_arg(config, "config");
        require_arg(format, "format");
        std::string f(format);
        require(f == "json" || f == "text", "format must be json or text, got \"" + f + "\"");
        config->config.format = f;
        return TD_OK;
    });
}

td_status td_config_set_timing(td_config* config, int enabled) {
    return guarded([&] {
        require_arg(config, "config");
        config->config.timing = enabled != 0;
        return TD_OK;
    });
}

td_status td_transform_build(const char* spec_json, td_transform** out) {
    return guarded([&] {
        require_arg(out, "out");
        *out = new td_transform{io::build(io::kernel_from_json(parse(spec_json, "kernel spec")))};
        return TD_OK;
    });
}

void td_transform_free(td_transform* t) { delete t; }

td_status td_transform_order(const td_transform* t, int* order) {
    return guarded([&] {
        require_arg(t, "transform");
        require_arg(order, "order");
        *order = t->t.P.order();
        return TD_OK;
    });
}

td_status td_transform_is_trigonometric(const td_transform* t, int* result) {
    return guarded([&] {
        require_arg(t, "transform");
        require_arg(result, "result");
        *result = t->t.trigonometric() ? 1 : 0;
        return TD_OK;
    });
}

td_status td_transform_json(const td_transform* t, char** json_out) {
    return guarded([&] {
        require_arg(t, "transform");
        require_arg(json_out, "json_out");
        *json_out = copy_string(io::to_json(t->t).dump(2) + "\n");
        return TD_OK;
    });
}

td_status td_transform_eval(const td_transform* t, double x, double z, double* re, double* im) {
    return guarded([&] {
        require_arg(t, "transform");
        require_arg(re, "re");
        require_arg(im, "im");
        std::complex<double> v =
            std::exp(static_cast<double>(t->t.psi.frame) * x * z) *
            t->t.psi.rho.evaluate_float({{Var::x, x}, {Var::u, std::exp(-x)}, {Var::w, std::exp(x)}, {Var::z, z}});
        *re = v.real();
        *im = v.imag();
        return TD_OK;
    });
}

td_status td_cm_pair_parse(const char* pair_json, td_cm_pair** out) {
    return guarded([&] {
        require_arg(out, "out");
        *out = new td_cm_pair{io::pair_from_json(parse(pair_json, "CM pair"))};
        return TD_OK;
    });
}

void td_cm_pair_free(td_cm_pair* p) { delete p; }

td_status td_cm_pair_size(const td_cm_pair* p, size_t* n) {
    return guarded([&] {
        require_arg(p, "pair");
        require_arg(n, "n");
        *n = p->pair.X.rows();
        return TD_OK;
    });
}

td_status td_cm_pair_is_trig(const td_cm_pair* p, int* result) {
    return guarded([&] {
        require_arg(p, "pair");
        require_arg(result, "result");
        *result = p->pair.trig ? 1 : 0;
        return TD_OK;
    });
}

td_status td_cm_pair_check(const td_cm_pair* p, int* result) {
    return guarded([&] {
        require_arg(p, "pair");
        require_arg(result, "result");
        const auto& q = p->pair;
        *result = (q.trig ? is_trig_cm(q.X, q.Z) : is_rational_cm(q.X, q.Z)) ? 1 : 0;
        return TD_OK;
    });
}

td_status td_cm_pair_to_trig(const td_cm_pair* p, td_cm_pair** out) {
    return guarded([&] {
        require_arg(p, "pair");
        require_arg(out, "out");
        require(!p->pair.trig, "pair is already trigonometric");
        CMPairTrig t = trig_from_rational(p->pair.rational());
        *out = new td_cm_pair{io::PairInput{true, t.X, t.Z}};
        return TD_OK;
    });
}

td_status td_cm_pair_reconstruct(const td_cm_pair* p, td_transform** out) {
    return guarded([&] {
        require_arg(p, "pair");
        require_arg(out, "out");
        CMPairTrig t = p->pair.trig ? p->pair.trigonometric() : trig_from_rational(p->pair.rational());
        *out = new td_transform{reconstruct_transform(t)};
        return TD_OK;
    });
}

td_status td_cmd_build(const char* spec_json, const td_config* config, char** output, char** report) {
    return guarded([&] {
        const auto& c = config_or_default(config);
        return finish(harness::cmd_build(parse(spec_json, "kernel spec"), c), c, output, report);
    });
}

td_status td_cmd_verify(const char* spec_json, const td_config* config, char** output, char** report) {
    return guarded([&] {
        const auto& c = config_or_default(config);
        return finish(harness::cmd_verify(parse(spec_json, "kernel spec"), c), c, output, report);
    });
}

td_status td_cmd_bispectral(const char* spec_json, const td_config* config, char** output, char** report) {
    return guarded([&] {
        const auto& c = config_or_default(config);
        return finish(harness::cmd_bispectral(parse(spec_json, "kernel spec"), c), c, output, report);
    });
}

td_status td_cmd_cm(const char* verb, const char* pair_json, const td_config* config, long n, const double* times,
                    size_t t_len, char** output, char** report) {
    return guarded([&] {
        require_arg(verb, "verb");
        if (t_len > 0) require_arg(times, "times");
        const auto& c = config_or_default(config);
        harness::CMOptions options{n, std::vector<double>(times, times + t_len)};
        return finish(harness::cmd_cm(verb, parse(pair_json, "CM pair"), c, options), c, output, report);
    });
}

td_status td_cmd_suite(const td_config* config, char** report) {
    return guarded([&] {
        const auto& c = config_or_default(config);
        harness::Report r = harness::cmd_suite(c);
        set_string(report, harness::render(r, c));
        if (!r.passed()) {
            last_error = "one or more checks failed";
            return TD_CHECK_FAILED;
        }
        return TD_OK;
    });
}

td_status td_cmd_eval(const char* target_json, const char* grid_csv, char** csv) {
    return guarded([&] {
        require_arg(grid_csv, "grid_csv");
        require_arg(csv, "csv");
        *csv = copy_string(harness::cmd_eval(parse(target_json, "eval target"), grid_csv));
        return TD_OK;
    });
}

} // extern "C"
