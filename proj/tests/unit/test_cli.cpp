// Copyright 2026 The polygin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polygin/cli.hpp"
#include "polygin/errors.hpp"

using namespace polygin;
using namespace polygin::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "polygin");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    const fs::path p = fs::temp_directory_path() / "polygin_cli_test";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("complex argument syntax") {
    CHECK(parse_complex("0") == cdouble(0, 0));
    CHECK(parse_complex("1.5") == cdouble(1.5, 0));
    CHECK(parse_complex("0.3,-0.4") == cdouble(0.3, -0.4));
    CHECK(parse_complex("0.3-0.4i") == cdouble(0.3, -0.4));
    CHECK(parse_complex("-2i") == cdouble(0, -2));
    CHECK(parse_complex("i") == cdouble(0, 1));
    CHECK(parse_complex("1e-3+2e+1i") == cdouble(1e-3, 20));
    CHECK_THROWS_AS(parse_complex("abc"), DomainError);
    CHECK_THROWS_AS(parse_complex(""), DomainError);
}

TEST_CASE("config round trip and validation") {
    ExperimentConfig c;
    c.n = 33;
    c.q = 3;
    c.variant = Variant::pure;
    c.g = "harm(2)";
    c.seed = 99;
    c.weighted = false;
    const auto j = to_json(c);
    CHECK(j.begin().key() == "schema");
    const ExperimentConfig back = config_from_json(nlohmann::json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.spec() == KernelSpec::pure(33, 3));

    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"n", 3}}), DomainError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"schema", kConfigSchema}, {"m", 3}}), DomainError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"schema", kConfigSchema}, {"n", "three"}}), DomainError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), DomainError);
}

TEST_CASE("kernel subcommand") {
    auto r = invoke({"kernel", "--n", "10", "--q", "2", "--weighted", "false"});
    CHECK(r.code == kSuccess);
    CHECK(std::stod(r.out) == doctest::Approx(20.0));
    r = invoke({"kernel", "--n", "10", "--variant", "ginibre", "--z", "0.1,0.2", "--w", "0.1+0.2i", "--path",
                "explicit"});
    CHECK(r.code == kSuccess);
    CHECK(invoke({"kernel", "--n", "0"}).code == kUsageError);
    CHECK(invoke({"kernel", "--n", "100", "--variant", "ginibre", "--path", "raising", "--weighted", "false"}).code ==
          kUsageError);
    CHECK(invoke({"kernel", "--variant", "mixed"}).code == kUsageError);
    CHECK(invoke({"kernel", "--z", "zz"}).code == kUsageError);
    r = invoke({"kernel", "check", "--n", "10", "--q", "2", "--pairs", "50"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("usage errors and help") {
    CHECK(invoke({}).code == kUsageError);
    CHECK(invoke({"frobnicate"}).code == kUsageError);
    CHECK(invoke({"--help"}).code == kSuccess);
    CHECK(invoke({"variance", "--help"}).code == kSuccess);
    CHECK(invoke({"variance", "--n", "x"}).code == kUsageError);
    CHECK(invoke({"variance", "--g", "re +"}).code == kUsageError);
    CHECK(invoke({"variance", "--ntheta", "500"}).code == kUsageError);
    CHECK(invoke({"verify", "--suite", "nothing"}).code == kUsageError);
    CHECK(invoke({"clt", "--samples", "10"}).code == kUsageError);
    CHECK(invoke({"sample", "--n", "4"}).code == kUsageError);
}

TEST_CASE("variance report layout and tolerance exit") {
    const fs::path dir = scratch_dir();
    const fs::path report = dir / "variance.json";
    fs::remove(report.string() + ".failed");
    auto r = invoke({"variance", "--n", "16", "--q", "2", "--g", "bump(0.5,0.2)", "--report", report.string()});
    // n = 16 is far from the limit: the 5% default tolerance fails.
    CHECK(r.code == kToleranceFailure);
    CHECK(fs::exists(report.string() + ".failed"));
    const auto j = nlohmann::ordered_json::parse(slurp(report));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    const std::vector<std::string> head{"spec",       "g",          "method",      "k", "value", "std_error",
                                        "grid",       "prediction", "diagnostics"};
    REQUIRE(keys.size() > head.size());
    CHECK(std::vector<std::string>(keys.begin(), keys.begin() + head.size()) == head);
    CHECK(keys.back() == "config");
    CHECK(j["method"] == "quadrature");
    CHECK(j["k"] == 2);
    CHECK(j["spec"]["variant"] == "full");
    CHECK(j["diagnostics"].contains("richardson_gap"));

    r = invoke({"variance", "--n", "16", "--q", "2", "--g", "bump(0.5,0.2)", "--tolerance", "10", "--report",
                report.string()});
    CHECK(r.code == kSuccess);
    CHECK_FALSE(fs::exists(report.string() + ".failed"));
}

TEST_CASE("config file with flag overrides") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "config.json";
    ExperimentConfig c;
    c.n = 8;
    c.q = 2;
    c.g = "abs2";
    std::ofstream(cfg) << to_json(c).dump();
    auto r = invoke({"stats", "--config", cfg.string()});
    REQUIRE(r.code == kSuccess);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["spec"]["n"] == 8);
    CHECK(j["g"] == "abs2");
    r = invoke({"stats", "--config", cfg.string(), "--n", "12"});
    j = nlohmann::json::parse(r.out);
    CHECK(j["spec"]["n"] == 12);
    CHECK(j["spec"]["q"] == 2);
    CHECK(j["config"]["n"] == 12);

    std::ofstream(dir / "bad.json") << R"({"schema": "polygin.experiment/1", "colour": "red"})";
    CHECK(invoke({"stats", "--config", (dir / "bad.json").string()}).code == kUsageError);
    CHECK(invoke({"stats", "--config", (dir / "missing.json").string()}).code == kUsageError);
}

TEST_CASE("sample writes CSV and sidecar") {
    const fs::path dir = scratch_dir();
    const fs::path csv = dir / "points.csv";
    const auto r = invoke({"sample", "--n", "5", "--q", "2", "--samples", "4", "--seed", "11", "--out", csv.string()});
    REQUIRE(r.code == kSuccess);
    std::istringstream in(slurp(csv));
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4 * 10);
    const auto side = nlohmann::json::parse(slurp(dir / "points.json"));
    CHECK(side["seed"] == 11);
    CHECK(side["samples"] == 4);
    CHECK(side["variant"] == "full");
}

TEST_CASE("clt and verify") {
    auto r = invoke({"clt", "--n", "6", "--q", "1", "--g", "abs2", "--samples", "400", "--seed", "3"});
    CHECK(r.code != kUsageError);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["method"] == "mc");
    CHECK(j["cumulants"].size() == 4);
    CHECK(j["std_error"].get<double>() > 0.0);
    CHECK(j["diagnostics"].contains("rejections"));

    r = invoke({"verify", "--suite", "identities"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
