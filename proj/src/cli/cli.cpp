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

#include "polygin/cli.hpp"

#include <cmath>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polygin/errors.hpp"
#include "polygin/quadrature.hpp"
#include "polygin/sampler.hpp"
#include "polygin/statistics.hpp"
#include "polygin/testfn.hpp"
#include "polygin/theory.hpp"
#include "polygin/verify.hpp"

namespace polygin::cli {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["schema"] = kConfigSchema;
    j["n"] = c.n;
    j["q"] = c.q;
    j["variant"] = std::string(variant_name(c.variant));
    j["g"] = c.g;
    j["nr"] = c.nr;
    j["ntheta"] = c.ntheta;
    j["rmax"] = c.rmax;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["tolerance"] = c.tolerance;
    j["out"] = c.out;
    j["report"] = c.report;
    j["suite"] = c.suite;
    j["path"] = c.path;
    j["weighted"] = c.weighted;
    j["z"] = c.z;
    j["w"] = c.w;
    j["pairs"] = c.pairs;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw DomainError("config: expected a JSON object");
    if (!j.contains("schema") || j["schema"] != kConfigSchema) {
        throw DomainError("config: \"schema\" must be \"" + std::string(kConfigSchema) + "\"");
    }
    ExperimentConfig c;
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "schema") continue;
            else if (key == "n") c.n = v.get<int>();
            else if (key == "q") c.q = v.get<int>();
            else if (key == "variant") c.variant = parse_variant(v.get<std::string>());
            else if (key == "g") c.g = v.get<std::string>();
            else if (key == "nr") c.nr = v.get<int>();
            else if (key == "ntheta") c.ntheta = v.get<int>();
            else if (key == "rmax") c.rmax = v.get<double>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "samples") c.samples = v.get<int>();
            else if (key == "tolerance") c.tolerance = v.get<double>();
            else if (key == "out") c.out = v.get<std::string>();
            else if (key == "report") c.report = v.get<std::string>();
            else if (key == "suite") c.suite = v.get<std::string>();
            else if (key == "path") c.path = v.get<std::string>();
            else if (key == "weighted") c.weighted = v.get<bool>();
            else if (key == "z") c.z = v.get<std::string>();
            else if (key == "w") c.w = v.get<std::string>();
            else if (key == "pairs") c.pairs = v.get<int>();
            else throw DomainError("config: unknown key \"" + key + "\"");
        } catch (const json::exception& e) {
            throw DomainError("config: bad value for \"" + key + "\": " + e.what());
        }
    }
    return c;
}

cdouble parse_complex(std::string_view text) {
    auto number = [&](std::string_view s) {
        double v = 0.0;
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
            throw DomainError("cannot parse complex number '" + std::string(text) + "'");
        }
        return v;
    };
    if (text.empty()) throw DomainError("empty complex number");
    if (auto comma = text.find(','); comma != std::string_view::npos) {
        return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
    }
    if (text.back() != 'i') return {number(text), 0.0};
    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading one.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag = [&](std::string_view s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return number(s);
    };
    if (split == std::string_view::npos) return {0.0, imag(body)};
    return {number(body.substr(0, split)), imag(body.substr(split))};
}

namespace {

std::string format_double(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_complex(cdouble v) {
    if (v.imag() == 0.0) return format_double(v.real());
    return format_double(v.real()) + (std::signbit(v.imag()) ? "-" : "+") + format_double(std::abs(v.imag())) + "i";
}

QuadratureGrid make_grid(const ExperimentConfig& c, const TestFunction& g) {
    const double rmax = c.rmax > 0.0 ? c.rmax : QuadratureGrid::default_rmax(c.n);
    return QuadratureGrid::make(c.nr, c.ntheta, rmax, g.breakpoints());
}

ordered_json spec_json(const KernelSpec& s) {
    return {{"n", s.n}, {"q", s.q}, {"variant", std::string(variant_name(s.variant))}};
}

ordered_json prediction_json(const VariancePrediction& p) {
    ordered_json j{{"bulk", p.bulk}, {"boundary", p.boundary}, {"total", p.total}};
    j["h1"] = p.h1;
    j["h_half"] = p.h_half;
    j["bulk_coeff"] = p.bulk_coeff;
    j["boundary_coeff"] = p.boundary_coeff;
    j["per_level"] = p.per_level;
    if (!p.warning.empty()) j["warning"] = p.warning;
    return j;
}

/// Report skeleton in the documented key order.
ordered_json base_report(const ExperimentConfig& c, std::string_view method, int k) {
    ordered_json r;
    r["spec"] = spec_json(c.spec());
    r["g"] = c.g;
    r["method"] = method;
    r["k"] = k;
    r["value"] = 0.0;
    r["std_error"] = 0.0;
    r["grid"] = {{"nr", c.nr}, {"ntheta", c.ntheta},
                 {"rmax", c.rmax > 0.0 ? c.rmax : QuadratureGrid::default_rmax(c.n)}};
    r["prediction"] = nullptr;
    r["diagnostics"] = {{"richardson_gap", nullptr}, {"rejections", nullptr}};
    return r;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw DomainError("failed writing '" + path + "'");
}

void emit_report(const ExperimentConfig& c, ordered_json report, std::ostream& out) {
    report["config"] = to_json(c);
    const std::string text = report.dump(2) + "\n";
    if (c.report.empty()) {
        out << text;
    } else {
        write_text(c.report, text);
    }
}

int cmd_kernel(const ExperimentConfig& c, std::ostream& out) {
    const KernelSpec spec = c.spec();
    spec.validate();
    const KernelPath path = parse_path(c.path);
    const cdouble z = parse_complex(c.z);
    const cdouble w = parse_complex(c.w);
    out << format_complex(eval_kernel(spec, z, w, path, c.weighted)) << "\n";
    return kSuccess;
}

int cmd_kernel_check(const ExperimentConfig& c, bool variant_given, std::ostream& out) {
    const double tol = c.tolerance > 0.0 ? c.tolerance : 1e-8;
    c.spec().validate();
    if (c.pairs < 1) throw DomainError("--pairs must be positive");
    double worst = 0.0;
    for (bool pure : {false, true}) {
        if (variant_given && pure != (c.variant == Variant::pure)) continue;
        const double e = kernel_path_discrepancy(c.n, c.q, pure, c.pairs, 2.0, c.seed);
        out << "n=" << c.n << " q=" << c.q << (pure ? " pure" : " full") << " max relative difference "
            << format_double(e) << "\n";
        worst = std::max(worst, e);
    }
    const bool ok = worst <= tol;
    out << (ok ? "PASS" : "FAIL") << " max relative difference " << format_double(worst) << " (tolerance "
        << format_double(tol) << ")\n";
    return ok ? kSuccess : kToleranceFailure;
}

int cmd_sample(const ExperimentConfig& c, std::ostream& out) {
    const KernelSpec spec = c.spec();
    spec.validate();
    if (c.out.empty()) throw DomainError("sample: --out is required");
    if (c.samples < 1) throw DomainError("sample: --samples must be positive");
    const DppSampler sampler(spec);
    const auto samples = sample_many(sampler, seed_range(c.seed, static_cast<std::size_t>(c.samples)));

    std::ostringstream csv;
    write_samples_csv(csv, samples);
    write_text(c.out, csv.str());
    const std::string sidecar = std::filesystem::path(c.out).replace_extension(".json").string();
    write_text(sidecar, samples_sidecar_json(samples) + "\n");
    out << "wrote " << samples.size() << " samples of " << spec.dimension() << " points to " << c.out << " and "
        << sidecar << "\n";
    return kSuccess;
}

int cmd_stats(const ExperimentConfig& c, std::ostream& out) {
    const KernelSpec spec = c.spec();
    spec.validate();
    const TestFunction g = TestFunction::parse(c.g);
    const QuadratureGrid grid = make_grid(c, g);

    const double value = expected_trace(spec, g, grid);
    const double refined = expected_trace(spec, g, grid.refined());
    const double limit = spec.dimension() * disk_integral(g);
    const double rel = std::abs(refined - limit) / std::max(std::abs(limit), 1e-300);

    ordered_json r = base_report(c, method_name(CumulantMethod::quadrature), 1);
    r["value"] = refined;
    r["diagnostics"]["richardson_gap"] = std::abs(value - refined) / std::max(std::abs(refined), 1e-9);
    r["circular_law"] = {{"limit", limit}, {"relative_error", rel}};
    emit_report(c, r, out);
    return c.tolerance > 0.0 && rel > c.tolerance ? kToleranceFailure : kSuccess;
}

int cmd_variance(const ExperimentConfig& c, std::ostream& out) {
    const KernelSpec spec = c.spec();
    spec.validate();
    const TestFunction g = TestFunction::parse(c.g);
    const QuadratureGrid grid = make_grid(c, g);
    const double tol = c.tolerance > 0.0 ? c.tolerance : 0.05;

    const VariancePrediction pred = predicted_variance(spec, g);
    const CumulantReport v = variance_quadrature(spec, g, grid);
    const double rel = std::abs(v.value - pred.total) / std::max(std::abs(pred.total), 1e-300);

    ordered_json r = base_report(c, method_name(v.method), 2);
    r["value"] = v.value;
    r["prediction"] = prediction_json(pred);
    r["diagnostics"]["richardson_gap"] = v.richardson_gap;
    r["diagnostics"]["converged"] = v.converged;
    r["relative_error"] = rel;
    r["tolerance"] = tol;
    emit_report(c, r, out);
    return v.converged && rel <= tol ? kSuccess : kToleranceFailure;
}

int cmd_clt(const ExperimentConfig& c, std::ostream& out) {
    const KernelSpec spec = c.spec();
    spec.validate();
    const TestFunction g = TestFunction::parse(c.g);
    const QuadratureGrid grid = make_grid(c, g);
    if (c.samples < 200) throw DomainError("clt: --samples must be at least 200");
    const double nse = c.tolerance > 0.0 ? c.tolerance : 3.0;

    const VariancePrediction pred = predicted_variance(spec, g);
    const CumulantReport quad = variance_quadrature(spec, g, grid);
    const MonteCarloReport mc = mc_cumulant_report(spec, g, seed_range(c.seed, c.samples), 4);
    const KStatistics& s = mc.summary;

    ordered_json r = base_report(c, method_name(CumulantMethod::mc), 2);
    r["value"] = s.k2;
    r["std_error"] = s.se_k2;
    r["prediction"] = prediction_json(pred);
    r["diagnostics"]["richardson_gap"] = quad.richardson_gap;
    r["diagnostics"]["rejections"] = mc.rejections;
    ordered_json cum = ordered_json::array();
    for (const auto& k : mc.cumulants) cum.push_back({{"k", k.k}, {"value", k.value}, {"std_error", k.std_error}});
    r["cumulants"] = cum;
    r["normality"] = {{"skewness", s.skewness},
                      {"skewness_se", s.se_skewness},
                      {"excess_kurtosis", s.excess_kurtosis},
                      {"excess_kurtosis_se", s.se_kurtosis},
                      {"ks_distance", s.ks_distance}};
    r["quadrature_variance"] = quad.value;
    r["replicates"] = mc.traces.size();

    const bool k3_ok = std::abs(s.k3) <= nse * s.se_k3;
    const bool k4_ok = std::abs(s.k4) <= nse * s.se_k4;
    const bool var_ok = std::abs(s.k2 - quad.value) <= nse * s.se_k2;
    r["checks"] = {{"k3_within_se", k3_ok}, {"k4_within_se", k4_ok}, {"variance_matches_quadrature", var_ok}};
    emit_report(c, r, out);
    return k3_ok && k4_ok && var_ok ? kSuccess : kToleranceFailure;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out) {
    const Suite suite = parse_suite(c.suite);
    const auto results = run_suite(suite);
    std::size_t passed = 0;
    ordered_json checks = ordered_json::array();
    for (const auto& r : results) {
        passed += r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  [error " << format_double(r.error);
        if (r.tolerance > 0.0) out << ", tolerance " << format_double(r.tolerance);
        out << "]";
        if (!r.passed && !r.detail.empty()) out << "  " << r.detail;
        out << "\n";
        checks.push_back({{"name", r.name}, {"passed", r.passed}, {"error", r.error}, {"tolerance", r.tolerance}});
    }
    out << passed << "/" << results.size() << " checks passed\n";
    if (!c.report.empty()) {
        ordered_json r{{"suite", c.suite}, {"passed", passed}, {"total", results.size()}, {"checks", checks}};
        r["config"] = to_json(c);
        write_text(c.report, r.dump(2) + "\n");
    }
    return passed == results.size() ? kSuccess : kToleranceFailure;
}

/// Option values from the command line, applied over the config file only
/// when given explicitly.
struct Flags {
    ExperimentConfig values;
    std::string variant;
    std::string config;
    std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> bound;

    template <class T>
    void bind(CLI::App* app, const std::string& name, T ExperimentConfig::*field, const std::string& help) {
        CLI::Option* opt = app->add_option(name, values.*field, help);
        bound.emplace_back(opt, [this, field](ExperimentConfig& c) { c.*field = values.*field; });
    }

    void bind_variant(CLI::App* app) {
        CLI::Option* opt = app->add_option("--variant", variant, "ginibre, full or pure")
                               ->check(CLI::IsMember({"ginibre", "full", "pure"}));
        bound.emplace_back(opt, [this](ExperimentConfig& c) { c.variant = parse_variant(variant); });
    }

    void common(CLI::App* app) {
        app->add_option("--config", config, "JSON config file (flags override its values)");
        bind(app, "--n", &ExperimentConfig::n, "particles per Landau level");
        bind(app, "--q", &ExperimentConfig::q, "number of Landau levels");
        bind_variant(app);
    }

    void grid(CLI::App* app) {
        bind(app, "--g", &ExperimentConfig::g, "test function expression");
        bind(app, "--nr", &ExperimentConfig::nr, "radial quadrature nodes");
        bind(app, "--ntheta", &ExperimentConfig::ntheta, "angular quadrature points (power of two)");
        bind(app, "--rmax", &ExperimentConfig::rmax, "quadrature radius (default max(2, 1 + 8/sqrt(n)))");
        bind(app, "--report", &ExperimentConfig::report, "write the JSON report here instead of stdout");
        bind(app, "--tolerance", &ExperimentConfig::tolerance, "acceptance tolerance");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c;
        if (!config.empty()) {
            std::ifstream f(config);
            if (!f) throw DomainError("cannot read config '" + config + "'");
            json j;
            try {
                j = json::parse(f);
            } catch (const json::parse_error& e) {
                throw DomainError("config '" + config + "' is not valid JSON: " + e.what());
            }
            c = config_from_json(j);
        }
        for (const auto& [opt, apply] : bound) {
            if (opt->count() > 0) apply(c);
        }
        return c;
    }
};

void write_failure_markers(const ExperimentConfig& c, const std::string& why) {
    for (const std::string* p : {&c.out, &c.report}) {
        if (p->empty()) continue;
        std::ofstream f(*p + ".failed");
        f << why << "\n";
    }
}

void clear_failure_markers(const ExperimentConfig& c) {
    for (const std::string* p : {&c.out, &c.report}) {
        if (p->empty()) continue;
        std::error_code ec;
        std::filesystem::remove(*p + ".failed", ec);
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"polygin: polyanalytic Ginibre ensembles"};
    app.require_subcommand(1);
    Flags f;

    auto* kernel = app.add_subcommand("kernel", "evaluate a reproducing kernel");
    f.common(kernel);
    f.bind(kernel, "--z", &ExperimentConfig::z, "first argument (x, x,y or x+yi)");
    f.bind(kernel, "--w", &ExperimentConfig::w, "second argument");
    f.bind(kernel, "--path", &ExperimentConfig::path, "basis, explicit or raising");
    f.bind(kernel, "--weighted", &ExperimentConfig::weighted, "multiply by exp(-n(|z|^2+|w|^2)/2)");
    kernel->require_subcommand(0, 1);
    auto* check = kernel->add_subcommand("check", "cross-check the three kernel paths");
    f.common(check);
    f.bind(check, "--pairs", &ExperimentConfig::pairs, "random pairs in the disk of radius 2");
    f.bind(check, "--seed", &ExperimentConfig::seed, "seed for the random pairs");
    f.bind(check, "--tolerance", &ExperimentConfig::tolerance, "maximum relative difference");

    auto* sample_cmd = app.add_subcommand("sample", "draw configurations and write CSV + JSON sidecar");
    f.common(sample_cmd);
    f.bind(sample_cmd, "--seed", &ExperimentConfig::seed, "first seed");
    f.bind(sample_cmd, "--samples", &ExperimentConfig::samples, "number of configurations");
    f.bind(sample_cmd, "--out", &ExperimentConfig::out, "CSV output path");

    auto* stats = app.add_subcommand("stats", "expected linear statistic and circular-law limit");
    f.common(stats);
    f.grid(stats);

    auto* variance = app.add_subcommand("variance", "quadrature variance against the limit theorem");
    f.common(variance);
    f.grid(variance);

    auto* clt = app.add_subcommand("clt", "Monte Carlo cumulants and normality summary");
    f.common(clt);
    f.grid(clt);
    f.bind(clt, "--seed", &ExperimentConfig::seed, "first seed");
    f.bind(clt, "--samples", &ExperimentConfig::samples, "number of replicates");

    auto* verify = app.add_subcommand("verify", "run exact identity and oracle suites");
    verify->add_option("--config", f.config, "JSON config file");
    f.bind(verify, "--suite", &ExperimentConfig::suite, "identities, kernels, cumulants or all");
    f.bind(verify, "--report", &ExperimentConfig::report, "write a JSON summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    ExperimentConfig cfg;
    try {
        cfg = f.resolve();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    int code = kSuccess;
    std::string why;
    try {
        if (kernel->parsed()) {
            const bool variant_given = !f.variant.empty() || (!f.config.empty());
            code = check->parsed() ? cmd_kernel_check(cfg, variant_given, out) : cmd_kernel(cfg, out);
        } else if (sample_cmd->parsed()) {
            code = cmd_sample(cfg, out);
        } else if (stats->parsed()) {
            code = cmd_stats(cfg, out);
        } else if (variance->parsed()) {
            code = cmd_variance(cfg, out);
        } else if (clt->parsed()) {
            code = cmd_clt(cfg, out);
        } else if (verify->parsed()) {
            code = cmd_verify(cfg, out);
        }
        if (code != kSuccess) why = "tolerance check failed";
    } catch (const NumericalError& e) {
        why = e.what();
        code = kToleranceFailure;
    } catch (const Error& e) {
        why = e.what();
        code = kUsageError;
    } catch (const std::exception& e) {
        why = e.what();
        code = kUsageError;
    }
    if (code == kSuccess) {
        clear_failure_markers(cfg);
    } else {
        if (why != "tolerance check failed") err << "error: " << why << "\n";
        write_failure_markers(cfg, why);
    }
    return code;
}

}  // namespace polygin::cli
