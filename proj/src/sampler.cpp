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

#include "polygin/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "polygin/errors.hpp"
#include "polygin/numerics.hpp"
#include "polygin/parallel.hpp"
#include "polygin/quadrature.hpp"
#include "polygin/simd.hpp"

namespace polygin {

namespace {

constexpr std::uint32_t kStreamTag = 0x706f6c79;  // "poly"

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 point_stream(std::uint64_t seed, std::uint32_t point) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), point, kStreamTag};
    return std::mt19937_64(seq);
}

/// Integral of 2 rho f(rho) over [a, b] by composite Gauss-Legendre with
/// panels no wider than `panel`.
template <class F>
double radial_mass(F&& f, double a, double b, double panel) {
    if (!(b > a)) return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
    static const GaussRule unit = gauss_legendre(16, 0.0, 1.0);
    CompensatedSum s;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        for (std::size_t i = 0; i < unit.nodes.size(); ++i) {
            const double r = a + h * (p + unit.nodes[i]);
            s.add(h * unit.weights[i] * 2.0 * r * f(r));
        }
    }
    return s.value();
}

double panel_width(int n) { return 0.25 / std::sqrt(double(n)); }

}  // namespace

RadialProposal::RadialProposal(const BasisTable& table, double rmax, int bins) : rmax_(rmax) {
    if (bins < 16) throw DomainError("radial proposal needs at least 16 bins");
    if (!(rmax > 0.0)) throw DomainError("radial proposal radius must be positive");
    const int dim = static_cast<int>(table.size());
    width_ = rmax / bins;
    mass_.resize(bins);
    density_.resize(bins);
    cdf_.assign(bins + 1, 0.0);

    static const GaussRule rule = gauss_legendre(4, 0.0, 1.0);
    constexpr int kProbes = 8;
    std::vector<double> probe((kProbes + 1) * bins);
    parallel_for(bins, [&](std::size_t b) {
        const double a = b * width_;
        double m = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double r = a + width_ * rule.nodes[i];
            m += width_ * rule.weights[i] * 2.0 * r * table.intensity(r);
        }
        mass_[b] = m;
        for (int k = 0; k <= kProbes; ++k) probe[b * (kProbes + 1) + k] = table.intensity(a + width_ * k / kProbes);
    });

    CompensatedSum total;
    for (int b = 0; b < bins; ++b) {
        total.add(mass_[b]);
        cdf_[b + 1] = total.value();
    }
    const double norm = total.value();
    if (!(norm > 0.0)) throw NumericalError("radial proposal has zero mass");
    for (auto& c : cdf_) c /= norm;
    cdf_.back() = 1.0;

    double worst = 0.0;
    for (int b = 0; b < bins; ++b) {
        mass_[b] /= norm;
        const double a = b * width_;
        const double area = (a + width_) * (a + width_) - a * a;
        density_[b] = mass_[b] / area;
        for (int k = 0; k <= kProbes; ++k) {
            const double target = probe[b * (kProbes + 1) + k] / dim;
            if (target == 0.0) continue;
            if (density_[b] == 0.0) throw NumericalError("radial proposal vanishes where the intensity does not");
            worst = std::max(worst, target / density_[b]);
        }
    }
    bound_ = 1.01 * worst;
}

double RadialProposal::draw_radius(double u_bin, double u_area, int& bin) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u_bin);
    bin = std::clamp(static_cast<int>(it - cdf_.begin()) - 1, 0, bins() - 1);
    while (mass_[bin] == 0.0 && bin > 0) --bin;  // u_bin landed on a flat stretch
    const double a = bin * width_;
    const double b = a + width_;
    return std::sqrt(a * a + u_area * (b * b - a * a));
}

DppSampler::DppSampler(const KernelSpec& spec, int proposal_bins) : spec_(spec) {
    spec.validate();
    if (spec.dimension() > kMaxDimension) {
        throw CapacityError("sampler supports at most " + std::to_string(kMaxDimension) + " points, got " +
                            std::to_string(spec.dimension()));
    }
    table_ = std::make_shared<BasisTable>(spec);
    proposal_ = std::make_shared<RadialProposal>(*table_, QuadratureGrid::default_rmax(spec.n), proposal_bins);
}

PointSample DppSampler::sample(std::uint64_t seed) const {
    const auto& simd = simd::kernels();
    const std::size_t dim = table_->size();
    const double ndim = static_cast<double>(dim);
    const double bound = proposal_->bound();

    PointSample out;
    out.spec = spec_;
    out.seed = seed;
    out.points.reserve(dim);

    std::vector<cdouble> panel(dim * dim);  // orthonormal rows q_0 .. q_{t-1}
    std::vector<cdouble> v(dim);
    std::vector<cdouble> c(dim);

    for (std::size_t t = 0; t < dim; ++t) {
        auto rng = point_stream(seed, static_cast<std::uint32_t>(t));
        std::uint64_t attempts = 0;
        for (;;) {
            if (++attempts > kRejectionBudget) {
                throw NumericalError("sampler: rejection budget exceeded at point " + std::to_string(t) + " of " +
                                     spec_.to_string() + ", seed " + std::to_string(seed));
            }
            int bin = 0;
            const double u_bin = uniform01(rng);
            const double u_area = uniform01(rng);
            const double u_angle = uniform01(rng);
            const double u_accept = uniform01(rng);
            const double rho = proposal_->draw_radius(u_bin, u_area, bin);
            const cdouble z = std::polar(rho, 2.0 * std::numbers::pi * u_angle);
            table_->evaluate(z, v);

            double kt = simd.cnorm2(v.data(), dim);
            for (std::size_t i = 0; i < t; ++i) kt -= std::norm(simd.cdotc(&panel[i * dim], v.data(), dim));
            kt = std::max(kt, 0.0);
            const double ratio = kt / (bound * ndim * proposal_->density(bin));
            if (ratio > 1.0 + 1e-9) {
                throw NumericalError("sampler: proposal bound violated (ratio " + std::to_string(ratio) + ")");
            }
            if (u_accept >= ratio) {
                ++out.rejections;
                continue;
            }

            // Gram-Schmidt with one re-orthogonalization pass.
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t i = 0; i < t; ++i) c[i] = simd.cdotc(&panel[i * dim], v.data(), dim);
                for (std::size_t i = 0; i < t; ++i) simd.caxpy(-c[i], &panel[i * dim], v.data(), dim);
            }
            const double norm = std::sqrt(simd.cnorm2(v.data(), dim));
            if (norm < 1e-12 * ndim) {
                throw NumericalError("sampler: degenerate Gram-Schmidt pivot at point " + std::to_string(t) +
                                     " (residual " + std::to_string(norm) + ")");
            }
            for (std::size_t m = 0; m < dim; ++m) panel[t * dim + m] = v[m] / norm;
            out.points.push_back(z);
            break;
        }
    }
    return out;
}

PointSample sample(const KernelSpec& spec, std::uint64_t seed) { return DppSampler(spec).sample(seed); }

std::vector<PointSample> sample_many(const DppSampler& sampler, const std::vector<std::uint64_t>& seeds) {
    std::vector<PointSample> out(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) { out[i] = sampler.sample(seeds[i]); });
    return out;
}

double expected_count(const BasisTable& table, double a, double b) {
    const int n = table.spec().n;
    const double cap = QuadratureGrid::default_rmax(n) + 4.0;
    a = std::min(a, cap);
    b = std::min(b, cap);
    return radial_mass([&](double r) { return table.intensity(r); }, a, b, panel_width(n));
}

std::vector<double> equal_mass_edges(const KernelSpec& spec, int bins) {
    if (bins < 1) throw DomainError("equal_mass_edges: need at least one bin");
    const BasisTable table(spec);
    const double rmax = QuadratureGrid::default_rmax(spec.n);
    const double dim = static_cast<double>(table.size());
    // Cumulative mass on a fine radius grid, then invert by interpolation.
    const int fine = 8192;
    const double h = rmax / fine;
    std::vector<double> cum(fine + 1, 0.0);
    for (int i = 0; i < fine; ++i) cum[i + 1] = cum[i] + expected_count(table, i * h, (i + 1) * h);
    std::vector<double> edges{0.0};
    for (int b = 1; b < bins; ++b) {
        const double target = dim * b / bins;
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        const int i = std::clamp(static_cast<int>(it - cum.begin()), 1, fine);
        const double lo = cum[i - 1], hi = cum[i];
        const double frac = hi > lo ? (target - lo) / (hi - lo) : 0.0;
        edges.push_back((i - 1 + frac) * h);
    }
    edges.push_back(std::numeric_limits<double>::infinity());
    return edges;
}

RadialHistogram empirical_intensity(const std::vector<PointSample>& samples, const std::vector<double>& edges) {
    if (samples.empty()) throw DomainError("empirical_intensity: no samples");
    if (edges.size() < 2) throw DomainError("empirical_intensity: need at least one bin");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) throw DomainError("empirical_intensity: edges must increase");
    }
    if (edges.front() < 0.0) throw DomainError("empirical_intensity: negative radius edge");
    const KernelSpec spec = samples.front().spec;
    for (const auto& s : samples) {
        if (!(s.spec == spec)) throw DomainError("empirical_intensity: samples mix different specs");
    }
    const std::size_t bins = edges.size() - 1;
    RadialHistogram h;
    h.edges = edges;
    h.samples = samples.size();
    h.counts.assign(bins, 0);
    for (const auto& s : samples) {
        for (cdouble z : s.points) {
            const double r = std::abs(z);
            auto it = std::upper_bound(edges.begin(), edges.end(), r);
            if (it == edges.begin() || it == edges.end()) continue;
            ++h.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
        }
    }
    const BasisTable table(spec);
    for (std::size_t b = 0; b < bins; ++b) {
        const double area = std::isinf(edges[b + 1]) ? std::numeric_limits<double>::infinity()
                                                      : edges[b + 1] * edges[b + 1] - edges[b] * edges[b];
        h.density.push_back(double(h.counts[b]) / (double(h.samples) * area));
        h.expected.push_back(double(h.samples) * expected_count(table, edges[b], edges[b + 1]));
    }
    return h;
}

namespace {

void append_double(std::string& s, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    s.append(buf, res.ptr);
}

}  // namespace

void write_samples_csv(std::ostream& out, const std::vector<PointSample>& samples) {
    std::string line;
    out << "sample_id,point_id,re,im\n";
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (std::size_t p = 0; p < samples[s].points.size(); ++p) {
            line = std::to_string(s) + ',' + std::to_string(p) + ',';
            append_double(line, samples[s].points[p].real());
            line += ',';
            append_double(line, samples[s].points[p].imag());
            line += '\n';
            out << line;
        }
    }
}

std::string samples_sidecar_json(const std::vector<PointSample>& samples) {
    if (samples.empty()) throw DomainError("sidecar: no samples");
    std::uint64_t rejections = 0;
    for (const auto& s : samples) rejections += s.rejections;
    const auto& spec = samples.front().spec;
    nlohmann::ordered_json j;
    j["n"] = spec.n;
    j["q"] = spec.q;
    j["variant"] = std::string(variant_name(spec.variant));
    j["seed"] = samples.front().seed;
    j["samples"] = samples.size();
    j["rejections"] = rejections;
    return j.dump(2);
}

std::vector<std::vector<cdouble>> read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "sample_id,point_id,re,im") {
        throw ParseError("sample CSV: missing or wrong header", 0);
    }
    std::vector<std::vector<cdouble>> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f[4];
        for (auto& x : f) {
            if (!std::getline(ls, x, ',')) throw ParseError("sample CSV: short row", row);
        }
        std::size_t sid = 0, pid = 0;
        double re = 0, im = 0;
        auto ok = [](const std::string& s, auto& v) {
            auto r = std::from_chars(s.data(), s.data() + s.size(), v);
            return r.ec == std::errc{} && r.ptr == s.data() + s.size();
        };
        if (!ok(f[0], sid) || !ok(f[1], pid) || !ok(f[2], re) || !ok(f[3], im)) {
            throw ParseError("sample CSV: malformed row", row);
        }
        if (sid >= out.size()) out.resize(sid + 1);
        if (pid != out[sid].size()) throw ParseError("sample CSV: point ids out of order", row);
        out[sid].push_back({re, im});
    }
    return out;
}

}  // namespace polygin
