#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "errors.hpp"
#include "harness.hpp"

using namespace trigdarboux;
using namespace trigdarboux::harness;

namespace {

std::string read(const std::string& name) {
    std::ifstream in(std::string(TD_TEST_DATA) + "/" + name);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const std::string& name) { return io::parse_text(read(name), name); }

RunConfig tiny(unsigned size) {
    RunConfig c;
    c.sizes = {size, size, size, size};
    c.tau_points = 3;
    return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string error_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("spec round trip through JSON") {
    Rng rng(31);
    for (int k = 0; k < 10; ++k) {
        TrigSpec spec = random_trig_spec(rng);
        io::KernelInput in = io::kernel_from_json(io::to_json(spec));
        REQUIRE(in.trig);
        CHECK(io::to_json(*in.trig) == io::to_json(spec));
        CHECK(io::build(in).P == build_trig(spec.data, spec.chains).P);
    }
    CMPairRational p = random_rational_pair(rng, 2);
    io::PairInput back = io::pair_from_json(io::to_json(p));
    CHECK_FALSE(back.trig);
    CHECK(back.X == p.X);
    CHECK(back.Z == p.Z);
}

TEST_CASE("build on the one-step spec") {
    CommandResult res = cmd_build(load("one_step.json"), RunConfig{});
    CHECK(res.report.passed());
    CHECK(res.report.records.size() == 3);
    CHECK(res.output.at("kind") == "trigonometric");
    CHECK(res.output.at("f_text") == "z - 1/3");
    CHECK(io::poly_from_json(res.output.at("f")) == MultiPoly::var(Var::z) - MultiPoly(GaussianRational(mpq_class(1, 3), 0)));
    CHECK(res.output.at("P").at("order") == 1);
    // Exact scalars never appear as JSON numbers.
    CHECK(res.output.at("f")[0].at("coeff").at("re").is_string());
}

TEST_CASE("empty chain list gives the identity bundle") {
    CommandResult res = cmd_build(load("empty_chain.json"), RunConfig{});
    CHECK(res.report.passed());
    CHECK(res.output.at("P").at("order") == 0);
    CHECK(res.output.at("Q").at("order") == 0);
    CHECK(res.output.at("f_text") == "1");
}

TEST_CASE("input errors carry their position or datum") {
    std::string msg = error_message([] { io::parse_text(read("malformed.json"), "malformed.json"); });
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);

    msg = error_message([] { cmd_build(load("integer_gap.json"), RunConfig{}); });
    CHECK(msg.find("lambda_r - lambda_s not in Z") != std::string::npos);
    CHECK(msg.find("1/2") != std::string::npos);

    CHECK_THROWS_AS(cmd_build(load("dependent.json"), RunConfig{}), Error);
    try {
        cmd_build(load("dependent.json"), RunConfig{});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DependentBasis);
    }
    CHECK_THROWS_AS(cmd_build(json{{"chains", json::array()}}, RunConfig{}), Error);
    CHECK_THROWS_AS(io::pair_from_json(json{{"N", 2}, {"X", json::array({json::array({"1"})})}, {"Z", json::array({json::array({"1"})})}}),
                    Error);
}

TEST_CASE("verify and bispectral commands") {
    CommandResult v = cmd_verify(load("one_step.json"), RunConfig{});
    CHECK(v.report.passed());
    std::vector<std::string> names;
    for (const auto& r : v.report.records) names.push_back(r.name);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
    CHECK(std::find(names.begin(), names.end(), "orthogonality") != names.end());
    CHECK(std::find(names.begin(), names.end(), "difference-eigen") != names.end());

    CommandResult b = cmd_bispectral(load("one_step.json"), RunConfig{});
    CHECK(b.report.passed());
    CHECK(b.output.at("R").at("variable") == "n");
    CHECK(b.output.at("R").at("basis") == "Delta");
    CHECK(b.output.contains("bPbar"));

    CommandResult a = cmd_verify(load("adelic.json"), RunConfig{});
    CHECK(a.report.passed());
    CHECK(a.output.at("kind") == "adelic");
    CHECK_THROWS_AS(cmd_bispectral(load("adelic.json"), RunConfig{}), Error);
}

TEST_CASE("cm verbs") {
    RunConfig config;
    CHECK(cmd_cm("check", load("pair_n2.json"), config).report.passed());
    CHECK_FALSE(cmd_cm("check", load("pair_not_cm.json"), config).report.passed());
    CHECK(cmd_cm("check", load("pair_trig_n1.json"), config).report.passed());
    CommandResult m = cmd_cm("map", load("pair_n1.json"), config);
    CHECK(m.output.at("kind") == "trig");
    CHECK(io::matrix_from_json(m.output.at("X")) == ScalarMatrix(1, 1, {GaussianRational(mpq_class(3, 2), 0)}));
    CHECK(cmd_cm("sato", load("pair_n2.json"), config).output.at("equal") == true);
    CHECK(cmd_cm("involution", load("pair_n2.json"), config).report.passed());
    CHECK(cmd_cm("wave", load("pair_n2.json"), config).report.passed());
    CHECK(cmd_cm("reconstruct", load("pair_trig_n1.json"), config).report.passed());
    CommandResult s = cmd_cm("shift", load("pair_n1.json"), config, {2, {0.1}});
    CHECK(s.report.passed());
    CHECK(s.output.at("difference").get<double>() < 1e-12);
    CHECK_THROWS_AS(cmd_cm("involution", load("pair_trig_n1.json"), config), Error);
    CHECK_THROWS_AS(cmd_cm("nonsense", load("pair_n1.json"), config), Error);
}

TEST_CASE("suite with empty corpora is valid and passes") {
    Report r = cmd_suite(tiny(0));
    CHECK(r.passed());
    CHECK(r.records.size() == 11);
    for (const auto& rec : r.records) {
        CHECK(rec.status == Status::Pass);
        CHECK_FALSE(rec.anchor.empty());
    }
}

TEST_CASE("suite report is deterministic apart from timing") {
    RunConfig c = tiny(2);
    c.seed = 99;
    Report a = cmd_suite(c), b = cmd_suite(c);
    CHECK(a.passed());
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    c.seed = 100;
    // A different seed draws different corpora.
    CHECK(cmd_suite(c).to_json(false).dump() != a.to_json(false).dump());
    CHECK(a.to_json(true).at("records")[0].contains("elapsed"));
    CHECK_FALSE(a.to_json(false).at("records")[0].contains("elapsed"));
}

TEST_CASE("injected fault fails with a witness") {
    RunConfig c = tiny(0);
    c.inject_fault = true;
    Report r = cmd_suite(c);
    CHECK_FALSE(r.passed());
    CHECK(r.exit_code() == 1);
    auto it = std::find_if(r.records.begin(), r.records.end(), [](const Record& x) { return x.name == "aux-injected-fault"; });
    REQUIRE(it != r.records.end());
    CHECK(it->status == Status::Fail);
    CHECK(it->witness.contains("spectral"));
    CHECK(it->witness.contains("corruption"));
    CHECK(r.to_text().find("FAIL") != std::string::npos);
}

TEST_CASE("run config validation") {
    CHECK_THROWS_AS(RunConfig::from_json(json{{"tolerance", 0.0}}), Error);
    CHECK_THROWS_AS(RunConfig::from_json(json{{"truncation", 0}}), Error);
    CHECK_THROWS_AS(RunConfig::from_json(json{{"format", "xml"}}), Error);
    RunConfig c = RunConfig::from_json(json{{"corpus", 3}, {"seed", 5}});
    CHECK(c.sizes.trig == 3);
    CHECK(c.sizes.contractive == 3);
    CHECK(c.seed == 5);
    CHECK(RunConfig::from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("eval on the identity bundle gives e^{xz}") {
    json bundle = cmd_build(load("empty_chain.json"), RunConfig{}).output;
    auto rows = csv_rows(cmd_eval(bundle, read("grid_xz.csv")));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"x", "z", "re", "im", "status"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double x = std::stod(rows[i][0]), z = std::stod(rows[i][1]);
        CHECK(rows[i][4] == "ok");
        CHECK(std::abs(std::stod(rows[i][2]) - std::exp(x * z)) <= 1e-15 * std::exp(x * z));
        CHECK(std::stod(rows[i][3]) == 0.0);
    }
}

TEST_CASE("eval of the one-step bundle matches the closed form") {
    json built = json{{"result", cmd_build(load("one_step.json"), RunConfig{}).output}};
    const double a = 2, c = 1.0 / 3.0;
    auto rows = csv_rows(cmd_eval(built, read("grid_xz.csv")));
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double x = std::stod(rows[i][0]), z = std::stod(rows[i][1]);
        double w = std::exp(x);
        double expected = std::exp(x * z) * ((w - a) * (z - c) - a) / ((w - a) * (z - c));
        CHECK(std::abs(std::stod(rows[i][2]) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
    // The CM pair with the same wave evaluates identically.
    auto pair_rows = csv_rows(cmd_eval(load("pair_trig_n1.json"), read("grid_xz.csv")));
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::abs(std::stod(pair_rows[i][2]) - std::stod(rows[i][2])) <= 1e-12 * std::max(1.0, std::abs(std::stod(rows[i][2]))));

    auto poles = csv_rows(cmd_eval(built, read("grid_pole.csv")));
    REQUIRE(poles.size() == 3);
    CHECK(poles[1][4] == "ok");
    CHECK(poles[2][4] == "pole");
    CHECK(poles[2][2].empty());
}

TEST_CASE("eval on an (n, z) grid") {
    // One particle: psi = (1+z)^n (1 + 1/((x0 - n/(1+z0)) (z - z0))).
    auto rows = csv_rows(cmd_eval(load("pair_n1.json"), read("grid_nz.csv")));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "n");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double n = std::stod(rows[i][0]), z = std::stod(rows[i][1]);
        double expected = std::pow(1 + z, n) * (1 + 1 / ((3 - n / 1.5) * (z - 0.5)));
        CHECK(std::abs(std::stod(rows[i][2]) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
    CHECK_THROWS_AS(cmd_eval(load("pair_n1.json"), "q,z\n1,2\n"), Error);
    CHECK_THROWS_AS(cmd_eval(load("pair_n1.json"), "x,z\n1;2\n"), Error);
}
