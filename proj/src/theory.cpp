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

#include "polygin/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polygin/errors.hpp"
#include "polygin/numerics.hpp"
#include "polygin/quadrature.hpp"

namespace polygin {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

std::vector<cdouble> angular_fourier(const TestFunction& g, double rho, int ntheta, int kmax) {
    if (ntheta < 1 || kmax < 0) throw DomainError("angular_fourier: invalid sizes");
    std::vector<double> samples(ntheta);
    std::vector<cdouble> roots(ntheta);
    for (int j = 0; j < ntheta; ++j) {
        const double t = 2.0 * std::numbers::pi * j / ntheta;
        roots[j] = std::polar(1.0, -t);
        samples[j] = g(std::polar(rho, t));
    }
    std::vector<cdouble> out(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) {
        CompensatedComplexSum s;
        for (int j = 0; j < ntheta; ++j) {
            const long idx = ((static_cast<long>(k) * j) % ntheta + ntheta) % ntheta;
            s.add(samples[j] * roots[idx]);
        }
        out[k + kmax] = s.value() / double(ntheta);
    }
    return out;
}

namespace {

/// int_D f(g.jet(z)) dA by composite Gauss-Legendre x trapezoid.
template <class F>
double disk_quadrature(const TestFunction& g, int nodes_per_panel, int ntheta, F&& f) {
    if (nodes_per_panel < 4) throw DomainError("disk quadrature: too few radial nodes");
    if (!power_of_two(ntheta) || ntheta < 4 * (g.max_mode() + 1)) {
        throw DomainError("disk quadrature: angular count must be a power of two >= 4 (max_mode + 1)");
    }
    std::vector<double> cuts{0.0};
    for (double b : g.breakpoints()) {
        if (b > 1e-12 && b < 1.0 - 1e-12) cuts.push_back(b);
    }
    cuts.push_back(1.0);

    CompensatedSum total;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const auto rule = gauss_legendre(nodes_per_panel, cuts[p], cuts[p + 1]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double rho = rule.nodes[i];
            CompensatedSum ring;
            for (int j = 0; j < ntheta; ++j) ring.add(f(std::polar(rho, 2.0 * std::numbers::pi * j / ntheta)));
            // (1/pi) * rho * (2 pi / ntheta) * sum
            total.add(rule.weights[i] * 2.0 * rho * ring.value() / ntheta);
        }
    }
    return total.value();
}

}  // namespace

double h1_seminorm(const TestFunction& g, int nodes_per_panel, int ntheta) {
    return disk_quadrature(g, nodes_per_panel, ntheta, [&](cdouble z) { return std::norm(g.jet(z).d); });
}

double disk_integral(const TestFunction& g, int nodes_per_panel, int ntheta) {
    return disk_quadrature(g, nodes_per_panel, ntheta, [&](cdouble z) { return g(z); });
}

double h_half_seminorm(const TestFunction& g, int modes) {
    if (!power_of_two(modes) || modes < std::max(4, 4 * g.max_mode())) {
        throw DomainError("h_half_seminorm: modes must be a power of two >= max(4, 4 * max_mode)");
    }
    const int kmax = modes / 2;
    const auto c = angular_fourier(g, 1.0, modes, kmax);
    CompensatedSum sum;
    double energy = 0.0;
    double tail = 0.0;
    for (int k = -kmax; k < kmax; ++k) {  // k = kmax aliases -kmax
        const double e = std::norm(c[k + kmax]);
        energy += e;
        if (std::abs(k) > modes / 4) tail += e;
        sum.add(std::abs(k) * e);
    }
    if (tail > 1e-24 + 1e-20 * energy) {
        throw NumericalError("h_half_seminorm: boundary spectrum does not decay within " + std::to_string(modes) +
                             " modes (aliasing)");
    }
    return sum.value();
}

VariancePrediction predicted_variance(const KernelSpec& spec, const TestFunction& g) {
    spec.validate();
    VariancePrediction p;
    p.h1 = h1_seminorm(g);
    p.h_half = h_half_seminorm(g);
    const double q = spec.q;
    if (spec.variant == Variant::full) {
        p.bulk_coeff = q;
        p.boundary_coeff = q;
    } else {
        p.bulk_coeff = 2.0 * q - 1.0;
        p.boundary_coeff = 1.0;
    }
    p.bulk = p.bulk_coeff * p.h1;
    p.boundary = p.boundary_coeff * 0.5 * p.h_half;
    p.total = p.bulk + p.boundary;
    for (int r = 1; r <= spec.q; ++r) p.per_level.push_back((2.0 * r - 1.0) * p.h1 + 0.5 * p.h_half);
    if (!g.compactly_supported()) {
        p.warning = "test function is not compactly supported; the limit theorem assumes g in C_0^infinity";
    }
    return p;
}

}  // namespace polygin
