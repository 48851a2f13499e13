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

// Acceptance run: one PASS/FAIL line per criterion. With no argument every
// criterion runs; otherwise only the named ones. Exit status is 1 if any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "polygin/sampler.hpp"
#include "polygin/statistics.hpp"
#include "polygin/theory.hpp"
#include "polygin/verify.hpp"

using namespace polygin;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << "  violated: " << what << "\n";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

QuadratureGrid grid_for(const KernelSpec& s, const TestFunction& g) {
    return QuadratureGrid::for_spec(s, g.breakpoints());
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void identities(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = identity_checks();
    const double secs = seconds_since(t0);
    int crossterms = 0, failed = 0;
    double worst = 0.0;
    for (const auto& c : checks) {
        crossterms += c.name.rfind("crossterms", 0) == 0;
        failed += !c.passed;
        worst = std::max(worst, c.error);
        o.require(c.passed, c.name + " (error " + fmt("%.3g", c.error) + ")");
        if (c.tolerance > 0) o.require(c.tolerance <= 1e-9, c.name + " tolerance above 1e-9");
    }
    o.require(crossterms >= 30, "partial-integration lattice has " + std::to_string(crossterms) + " cases");
    o.require(secs < 120.0, "runtime " + fmt("%.1f", secs) + " s");
    o.detail << checks.size() << " checks, " << crossterms << " lattice cases, max error " << worst << ", "
             << fmt("%.1f", secs) << " s\n";
}

void kernel_paths(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n : {10, 50, 100}) {
        for (int q = 1; q <= 4; ++q) {
            for (bool pure : {false, true}) {
                const double e = kernel_path_discrepancy(n, q, pure, 1000, 2.0, 1000u * n + 10u * q + pure);
                worst = std::max(worst, e);
                o.require(e <= 1e-8, "n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                         (pure ? " pure " : " full ") + fmt("%.3g", e));
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime " + fmt("%.1f", secs) + " s");
    o.detail << "24 configurations x 1000 pairs, max relative difference " << worst << ", " << fmt("%.1f", secs)
             << " s\n";
}

void smalln_cumulants(Outcome& o) {
    double worst = 0.0;
    int cases = 0;
    for (const char* e : {"re", "abs2", "harm(2)"}) {
        const TestFunction g = TestFunction::parse(e);
        const PolyPoly p = g.to_polynomial();
        for (int n = 1; n <= 6; ++n) {
            for (int q = 1; q <= 3; ++q) {
                for (KernelSpec s : {KernelSpec::full(n, q), KernelSpec::pure(n, q)}) {
                    if (q == 1 && s.variant == Variant::pure) continue;
                    const double exact = cumulant_exact_smalln(2, s, p).value;
                    const double quad = variance_quadrature(s, g, grid_for(s, g)).value;
                    const double err = rel_error(quad, exact);
                    worst = std::max(worst, err);
                    ++cases;
                    o.require(err <= 1e-6, s.to_string() + " g=" + e + " rel " + fmt("%.3g", err));
                }
            }
        }
    }
    o.detail << cases << " variance cases, max relative error " << worst << "\n";

    for (const char* e : {"abs2", "re + abs2"}) {
        const TestFunction g = TestFunction::parse(e);
        for (KernelSpec s : {KernelSpec::ginibre(4), KernelSpec::full(4, 2), KernelSpec::pure(4, 2),
                             KernelSpec::full(3, 3), KernelSpec::pure(2, 3)}) {
            const double exact = cumulant_exact_smalln(3, s, g.to_polynomial()).value;
            const auto mc = mc_cumulant_report(s, g, seed_range(77, 5000), 3);
            const auto& k3 = mc.cumulants[2];
            const double z = (k3.value - exact) / k3.std_error;
            o.require(std::abs(z) <= 3.0, s.to_string() + " g=" + e + " k3 z-score " + fmt("%.2f", z));
            o.detail << "  k3 " << s.to_string() << " g=" << e << ": exact " << exact << ", mc " << k3.value
                     << " +- " << k3.std_error << " (z " << fmt("%.2f", z) << ")\n";
        }
    }
}

void circular_law(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* e : {"bump(0.5,0.2)", "bump(0.2,0.3)", "bump(0.6,0.3)", "bump(0,0.8)"}) {
        const TestFunction g = TestFunction::parse(e);
        const double limit = disk_integral(g);
        for (int q = 1; q <= 3; ++q) {
            const auto s = KernelSpec::full(256, q);
            const double mean = expected_trace(s, g, grid_for(s, g)) / s.dimension();
            const double err = rel_error(mean, limit);
            o.require(err <= 0.02, s.to_string() + " g=" + e + " rel " + fmt("%.3g", err));
            o.detail << "  " << s.to_string() << " g=" << e << ": " << mean << " vs " << limit << " (rel "
                     << fmt("%.2e", err) << ")\n";
        }
    }
    o.detail << fmt("%.1f", seconds_since(t0)) << " s\n";
}

void variance_convergence(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* e : {"bump(0.5,0.2)*harm(1)", "bump(0.5,0.2)"}) {
        const TestFunction g = TestFunction::parse(e);
        for (int q = 1; q <= 3; ++q) {
            for (bool pure : {true, false}) {
                if (q == 1 && !pure) continue;  // identical to the pure q = 1 space
                double previous = HUGE_VAL;
                std::ostringstream row;
                row << "  " << (pure ? "pure" : "full") << " q=" << q << " g=" << e << ":";
                for (int n : {50, 100, 200, 400}) {
                    const KernelSpec s = pure ? KernelSpec::pure(n, q) : KernelSpec::full(n, q);
                    const auto c = variance_quadrature(s, g, grid_for(s, g));
                    const double pred = predicted_variance(s, g).total;
                    const double err = rel_error(c.value, pred);
                    row << " n=" << n << " " << fmt("%.4f", c.value) << "/" << fmt("%.4f", pred) << " ("
                        << fmt("%.1f", 100 * err) << "%)";
                    o.require(c.converged, s.to_string() + " quadrature gap " + fmt("%.2e", c.richardson_gap));
                    o.require(err <= previous, s.to_string() + " error increased");
                    if (n == 400) o.require(err <= 0.05, s.to_string() + " g=" + e + " rel " + fmt("%.3f", err));
                    previous = err;
                }
                o.detail << row.str() << "\n";
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs <= 900.0, "runtime " + fmt("%.1f", secs) + " s");
}

void bulk_averaging(Outcome& o) {
    const int n = 400;
    for (const char* e : {"bump(0.5,0.2)*harm(1)", "bump(0.5,0.2)"}) {
        const TestFunction g = TestFunction::parse(e);
        for (int q : {2, 3}) {
            double mean = 0.0;
            for (int r = 1; r <= q; ++r) {
                const auto s = KernelSpec::pure(n, r);
                mean += variance_quadrature(s, g, grid_for(s, g)).value / q;
            }
            const auto f = KernelSpec::full(n, q);
            const double full = variance_quadrature(f, g, grid_for(f, g)).value;
            const double err = rel_error(full, mean);
            o.require(err <= 0.05, f.to_string() + " g=" + e + " rel " + fmt("%.3f", err));
            o.detail << "  q=" << q << " g=" << e << ": full " << full << ", level mean " << mean << " (rel "
                     << fmt("%.2e", err) << ")\n";
        }
    }
}

void clt_normality(Outcome& o) {
    const TestFunction g = TestFunction::parse("bump(0.5,0.2)*harm(1)");
    for (KernelSpec s : {KernelSpec::full(64, 2), KernelSpec::pure(64, 2)}) {
        const double c2 = variance_quadrature(s, g, grid_for(s, g)).value;
        const auto mc = mc_cumulant_report(s, g, seed_range(20240, 2000), 4);
        const KStatistics& k = mc.summary;
        const std::string tag = s.to_string();
        o.require(std::abs(k.k2 - c2) <= 3 * k.se_k2, tag + " variance off by " + fmt("%.2f", (k.k2 - c2) / k.se_k2) +
                                                          " SE");
        o.require(std::abs(k.skewness) <= 3 * k.se_skewness, tag + " skewness " + fmt("%.3f", k.skewness));
        o.require(std::abs(k.excess_kurtosis) <= 3 * k.se_kurtosis,
                  tag + " excess kurtosis " + fmt("%.3f", k.excess_kurtosis));
        o.require(k.ks_distance < 0.035, tag + " KS " + fmt("%.4f", k.ks_distance));
        o.detail << "  " << tag << ": k2 " << k.k2 << " +- " << k.se_k2 << " vs quadrature " << c2 << "; skewness "
                 << k.skewness << " +- " << k.se_skewness << "; excess kurtosis " << k.excess_kurtosis << " +- "
                 << k.se_kurtosis << "; KS " << k.ks_distance << "\n";
    }
}

void sampler_soundness(Outcome& o) {
    const int bins = 32, draws = 10000;
    const double critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(bins - 1), 0.01));
    for (KernelSpec s : {KernelSpec::full(32, 1), KernelSpec::full(32, 2), KernelSpec::full(32, 3),
                         KernelSpec::pure(32, 2), KernelSpec::pure(32, 3)}) {
        const auto samples = sample_many(DppSampler(s), seed_range(9000, draws));
        std::size_t wrong = 0;
        for (const auto& p : samples) wrong += p.points.size() != static_cast<std::size_t>(s.dimension());
        o.require(wrong == 0, s.to_string() + " " + std::to_string(wrong) + " draws with wrong cardinality");
        const auto h = empirical_intensity(samples, equal_mass_edges(s, bins));
        double chi2 = 0.0;
        for (int b = 0; b < bins; ++b) chi2 += std::pow(h.counts[b] - h.expected[b], 2) / h.expected[b];
        o.require(chi2 < critical, s.to_string() + " chi2 " + fmt("%.2f", chi2));
        o.detail << "  " << s.to_string() << ": " << draws << " draws, chi2 " << fmt("%.2f", chi2) << " (1% critical "
                 << fmt("%.2f", critical) << ")\n";
    }
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> kCriteria = {
    {"identities", identities},
    {"kernel_paths", kernel_paths},
    {"smalln_cumulants", smalln_cumulants},
    {"circular_law", circular_law},
    {"variance_convergence", variance_convergence},
    {"bulk_averaging", bulk_averaging},
    {"clt_normality", clt_normality},
    {"sampler_soundness", sampler_soundness},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    for (const auto& w : wanted) {
        bool known = false;
        for (const auto& [name, fn] : kCriteria) known |= name == w;
        if (!known) {
            std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
            return 2;
        }
    }
    int failures = 0;
    for (const auto& [name, fn] : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "  exception: " << e.what() << "\n";
        }
        failures += !o.passed;
        std::printf("%s %s (%.1f s)\n%s", o.passed ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
