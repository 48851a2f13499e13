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

#include "polygin/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/legendre.hpp>

#include "polygin/errors.hpp"

namespace polygin {

GaussRule gauss_legendre(int count, double a, double b) {
    if (count < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
    GaussRule rule;
    const auto zeros = boost::math::legendre_p_zeros<double>(count);  // nonnegative half
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (double x : zeros) {
        const double dp = boost::math::legendre_p_prime<double>(count, x);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes.push_back(mid - half * x);
        rule.weights.push_back(half * w);
        if (x != 0.0) {
            rule.nodes.push_back(mid + half * x);
            rule.weights.push_back(half * w);
        }
    }
    std::vector<std::size_t> order(rule.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return rule.nodes[i] < rule.nodes[j]; });
    GaussRule sorted;
    for (auto i : order) {
        sorted.nodes.push_back(rule.nodes[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    return sorted;
}

double QuadratureGrid::default_rmax(int n) { return std::max(2.0, 1.0 + 8.0 / std::sqrt(double(n))); }

QuadratureGrid QuadratureGrid::make(int nr, int ntheta, double rmax, std::vector<double> breaks) {
    if (nr < 8) throw DomainError("quadrature grid needs at least 8 radial nodes");
    if (ntheta < 4 || (ntheta & (ntheta - 1)) != 0) throw DomainError("angular count must be a power of two >= 4");
    if (!(rmax > 0.0)) throw DomainError("quadrature radius must be positive");

    QuadratureGrid g;
    g.nr = nr;
    g.ntheta = ntheta;
    g.rmax = rmax;
    std::vector<double> cuts{0.0};
    std::sort(breaks.begin(), breaks.end());
    for (double b : breaks) {
        if (b > 1e-12 && b < rmax - 1e-12 && b - cuts.back() > 1e-12) cuts.push_back(b);
    }
    cuts.push_back(rmax);
    g.breaks.assign(cuts.begin() + 1, cuts.end() - 1);

    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double len = cuts[p + 1] - cuts[p];
        const int count = std::max(16, static_cast<int>(std::lround(nr * len / rmax)));
        const auto rule = gauss_legendre(count, cuts[p], cuts[p + 1]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            g.radii.push_back(rule.nodes[i]);
            g.weights.push_back(2.0 * rule.nodes[i] * rule.weights[i]);  // (1/pi) * 2 pi rho
        }
    }
    return g;
}

QuadratureGrid QuadratureGrid::for_spec(const KernelSpec& spec, std::vector<double> breaks, int nr, int ntheta) {
    spec.validate();
    return make(nr, ntheta, default_rmax(spec.n), std::move(breaks));
}

QuadratureGrid QuadratureGrid::refined() const {
    return make(static_cast<int>(std::lround(1.5 * nr)), 2 * ntheta, rmax, breaks);
}

}  // namespace polygin
