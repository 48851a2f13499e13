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

#include "polygin/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "polygin/errors.hpp"
#include "polygin/numerics.hpp"
#include "polygin/parallel.hpp"
#include "polygin/simd.hpp"

namespace polygin {

std::string_view method_name(CumulantMethod m) {
    switch (m) {
        case CumulantMethod::mc: return "mc";
        case CumulantMethod::quadrature: return "quadrature";
        case CumulantMethod::exact_oracle: return "exact_oracle";
    }
    return "unknown";
}

double linear_statistic(const PointSample& sample, const TestFunction& g) {
    CompensatedSum s;
    for (cdouble z : sample.points) s.add(g(z));
    return s.value();
}

namespace {

void check_grid(const KernelSpec& spec, const QuadratureGrid& grid) {
    spec.validate();
    if (grid.radii.empty()) throw DomainError("quadrature grid is empty");
    if (grid.rmax < QuadratureGrid::default_rmax(spec.n) - 1e-12) {
        throw DomainError("quadrature grid radius " + std::to_string(grid.rmax) + " is below the cap " +
                          std::to_string(QuadratureGrid::default_rmax(spec.n)) + " required for n = " +
                          std::to_string(spec.n));
    }
}

/// Angular data of g on one circle: Fourier coefficients for |k| <= kmax
/// (index k + kmax) and the angular mean of g^2.
struct Ring {
    std::vector<cdouble> coeff;
    double mean_square = 0.0;
};

Ring ring_data(const TestFunction& g, double rho, int ntheta, int kmax) {
    std::vector<double> samples(ntheta);
    CompensatedSum sq;
    for (int j = 0; j < ntheta; ++j) {
        samples[j] = g(std::polar(rho, 2.0 * std::numbers::pi * j / ntheta));
        sq.add(samples[j] * samples[j]);
    }
    Ring r;
    r.mean_square = sq.value() / ntheta;
    r.coeff.resize(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) {
        CompensatedComplexSum s;
        for (int j = 0; j < ntheta; ++j) {
            const long idx = ((static_cast<long>(k) * j) % ntheta + ntheta) % ntheta;
            s.add(samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * idx / ntheta));
        }
        r.coeff[k + kmax] = s.value() / double(ntheta);
    }
    return r;
}

}  // namespace

double expected_trace(const KernelSpec& spec, const TestFunction& g, const QuadratureGrid& grid) {
    check_grid(spec, grid);
    const BasisTable table(spec);
    const std::size_t nodes = grid.radii.size();
    std::vector<double> terms(nodes);
    parallel_for(nodes, [&](std::size_t i) {
        const double rho = grid.radii[i];
        CompensatedSum s;
        for (int j = 0; j < grid.ntheta; ++j) s.add(g(std::polar(rho, 2.0 * std::numbers::pi * j / grid.ntheta)));
        terms[i] = grid.weights[i] * table.intensity(rho) * s.value() / grid.ntheta;
    });
    CompensatedSum total;
    for (double t : terms) total.add(t);
    return total.value();
}

double variance_on_grid(const BasisTable& table, const TestFunction& g, const QuadratureGrid& grid) {
    const std::size_t dim = table.size();
    const std::size_t nodes = grid.radii.size();
    const int kmax = g.max_mode();
    if (grid.ntheta < 4 * (2 * kmax + 1)) throw DomainError("angular grid too coarse for the modes of g");

    // Radial profiles, one row per basis function.
    std::vector<double> prof(dim * nodes);
    std::vector<Ring> rings(nodes);
    parallel_for(nodes, [&](std::size_t i) {
        std::vector<double> col(dim);
        table.radial(grid.radii[i], col);
        for (std::size_t m = 0; m < dim; ++m) prof[m * nodes + i] = col[m];
        rings[i] = ring_data(g, grid.radii[i], grid.ntheta, kmax);
    });

    // Weighted angular coefficients per mode of g, and the g^2 mean.
    const std::vector<int> modes(g.modes().begin(), g.modes().end());
    std::vector<std::vector<double>> wre(modes.size(), std::vector<double>(nodes));
    std::vector<std::vector<double>> wim(modes.size(), std::vector<double>(nodes));
    std::vector<double> wsq(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        wsq[i] = grid.weights[i] * rings[i].mean_square;
        for (std::size_t s = 0; s < modes.size(); ++s) {
            const cdouble c = rings[i].coeff[modes[s] + kmax];
            wre[s][i] = grid.weights[i] * c.real();
            wim[s][i] = grid.weights[i] * c.imag();
        }
    }

    // Basis indices grouped by angular momentum.
    const auto ang = table.angular();
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t m = 0; m < dim; ++m) groups[ang[m]].push_back(m);

    const auto& simd = simd::kernels();
    std::vector<double> rows(dim);
    parallel_for(dim, [&](std::size_t m) {
        const double* rm = &prof[m * nodes];
        const double diag = simd.dot3(rm, rm, wsq.data(), nodes);
        CompensatedSum off;
        for (std::size_t s = 0; s < modes.size(); ++s) {
            auto it = groups.find(ang[m] + modes[s]);
            if (it == groups.end()) continue;
            for (std::size_t mp : it->second) {
                const double* rp = &prof[mp * nodes];
                const double re = simd.dot3(rm, rp, wre[s].data(), nodes);
                const double im = simd.dot3(rm, rp, wim[s].data(), nodes);
                off.add(re * re + im * im);
            }
        }
        rows[m] = diag - off.value();
    });
    CompensatedSum total;
    for (double r : rows) total.add(r);
    return total.value();
}

CumulantReport variance_quadrature(const KernelSpec& spec, const TestFunction& g, const QuadratureGrid& grid,
                                   double tolerance) {
    check_grid(spec, grid);
    const BasisTable table(spec);
    const double coarse = variance_on_grid(table, g, grid);
    const double fine = variance_on_grid(table, g, grid.refined());

    CumulantReport r;
    r.k = 2;
    r.value = fine;
    r.method = CumulantMethod::quadrature;
    r.spec = spec;
    r.g = g.to_string();
    r.nr = grid.nr;
    r.ntheta = grid.ntheta;
    r.rmax = grid.rmax;
    r.richardson_gap = std::abs(coarse - fine) / std::max(std::abs(fine), 1e-9);
    r.converged = r.richardson_gap <= tolerance;
    return r;
}

KStatistics k_statistics(std::span<const double> values) {
    const std::size_t count = values.size();
    if (count < 4) throw DomainError("k-statistics need at least 4 values");
    KStatistics s;
    s.count = count;
    CompensatedSum mean_sum;
    for (double v : values) mean_sum.add(v);
    s.mean = mean_sum.value() / count;

    // Power sums of the centred data; k-statistics of order >= 2 are shift
    // invariant.
    std::vector<double> x(count);
    double p[5] = {0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < count; ++i) {
        x[i] = values[i] - s.mean;
        double t = 1.0;
        for (int r = 1; r <= 4; ++r) {
            t *= x[i];
            p[r] += t;
        }
    }
    struct Est {
        double k2, k3, k4, skew, kurt;
    };
    auto estimate = [](double n, double s1, double s2, double s3, double s4) {
        Est e;
        e.k2 = (n * s2 - s1 * s1) / (n * (n - 1));
        e.k3 = (2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / (n * (n - 1) * (n - 2));
        e.k4 = (-6 * s1 * s1 * s1 * s1 + 12 * n * s1 * s1 * s2 - 3 * n * (n - 1) * s2 * s2 - 4 * n * (n + 1) * s1 * s3 +
                n * n * (n + 1) * s4) /
               (n * (n - 1) * (n - 2) * (n - 3));
        e.skew = e.k2 > 0 ? e.k3 / std::pow(e.k2, 1.5) : 0.0;
        e.kurt = e.k2 > 0 ? e.k4 / (e.k2 * e.k2) : 0.0;
        return e;
    };
    const double n = static_cast<double>(count);
    const Est full = estimate(n, p[1], p[2], p[3], p[4]);
    s.k2 = full.k2;
    s.k3 = full.k3;
    s.k4 = full.k4;
    s.skewness = full.skew;
    s.excess_kurtosis = full.kurt;
    s.se_mean = std::sqrt(std::max(full.k2, 0.0) / n);

    // Delete-one jackknife.
    std::vector<Est> loo(count);
    Est avg{0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < count; ++i) {
        const double a = x[i];
        loo[i] = estimate(n - 1, p[1] - a, p[2] - a * a, p[3] - a * a * a, p[4] - a * a * a * a);
        avg.k2 += loo[i].k2 / n;
        avg.k3 += loo[i].k3 / n;
        avg.k4 += loo[i].k4 / n;
        avg.skew += loo[i].skew / n;
        avg.kurt += loo[i].kurt / n;
    }
    double v2 = 0, v3 = 0, v4 = 0, vs = 0, vk = 0;
    for (const auto& e : loo) {
        v2 += (e.k2 - avg.k2) * (e.k2 - avg.k2);
        v3 += (e.k3 - avg.k3) * (e.k3 - avg.k3);
        v4 += (e.k4 - avg.k4) * (e.k4 - avg.k4);
        vs += (e.skew - avg.skew) * (e.skew - avg.skew);
        vk += (e.kurt - avg.kurt) * (e.kurt - avg.kurt);
    }
    const double f = (n - 1) / n;
    s.se_k2 = std::sqrt(f * v2);
    s.se_k3 = std::sqrt(f * v3);
    s.se_k4 = std::sqrt(f * v4);
    s.se_skewness = std::sqrt(f * vs);
    s.se_kurtosis = std::sqrt(f * vk);

    // Kolmogorov-Smirnov distance to the fitted normal.
    if (full.k2 > 0) {
        std::vector<double> sorted(x);
        std::sort(sorted.begin(), sorted.end());
        const double sd = std::sqrt(full.k2);
        double d = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double cdf = 0.5 * std::erfc(-sorted[i] / (sd * std::numbers::sqrt2));
            d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
        }
        s.ks_distance = d;
    }
    return s;
}

MonteCarloReport mc_cumulant_report(const KernelSpec& spec, const TestFunction& g,
                                    const std::vector<std::uint64_t>& seeds, int k_max) {
    if (seeds.size() < 200) throw DomainError("Monte Carlo cumulants need at least 200 replicates");
    if (k_max < 1 || k_max > 4) throw DomainError("k_max must be in 1..4");
    const DppSampler sampler(spec);
    MonteCarloReport out;
    out.traces.resize(seeds.size());
    std::vector<std::uint64_t> rejections(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        const PointSample s = sampler.sample(seeds[i]);
        out.traces[i] = linear_statistic(s, g);
        rejections[i] = s.rejections;
    });
    for (auto r : rejections) out.rejections += r;
    out.summary = k_statistics(out.traces);

    const double values[5] = {0, out.summary.mean, out.summary.k2, out.summary.k3, out.summary.k4};
    const double errors[5] = {0, out.summary.se_mean, out.summary.se_k2, out.summary.se_k3, out.summary.se_k4};
    for (int k = 1; k <= k_max; ++k) {
        CumulantReport r;
        r.k = k;
        r.value = values[k];
        r.std_error = errors[k];
        r.method = CumulantMethod::mc;
        r.spec = spec;
        r.g = g.to_string();
        r.rejections = out.rejections;
        r.replicates = seeds.size();
        out.cumulants.push_back(r);
    }
    return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t seed, std::size_t count) {
    std::vector<std::uint64_t> s(count);
    for (std::size_t i = 0; i < count; ++i) s[i] = seed + i;
    return s;
}

}  // namespace polygin
