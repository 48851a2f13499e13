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

#pragma once

#include <vector>

#include "polygin/kernels.hpp"

namespace polygin {

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int count, double a, double b);

/// Polar product grid for integrals against dA = dx dy / pi: composite
/// Gauss-Legendre in the radius on [0, rmax] with panel breaks, and the
/// trapezoid rule on ntheta equispaced angles.
struct QuadratureGrid {
    int nr = 160;
    int ntheta = 512;
    double rmax = 2.0;
    std::vector<double> breaks;
    std::vector<double> radii;
    /// Radial weights including the polar Jacobian: integral of a radial f
    /// against dA is sum_i weights[i] * f(radii[i]).
    std::vector<double> weights;

    /// Default radius cap max(2, 1 + 8/sqrt(n)).
    static double default_rmax(int n);

    /// nr nodes distributed over the panels cut at `breaks` (values outside
    /// (0, rmax) are ignored) in proportion to panel length, at least 16 per
    /// panel. Throws DomainError for nr < 8, ntheta not a power of two, or
    /// rmax <= 0.
    static QuadratureGrid make(int nr, int ntheta, double rmax, std::vector<double> breaks = {});

    /// Grid for a spec with the default node counts unless overridden.
    static QuadratureGrid for_spec(const KernelSpec& spec, std::vector<double> breaks = {}, int nr = 160,
                                   int ntheta = 512);

    /// Same panels with 1.5x the radial nodes and 2x the angles; the pair
    /// gives the two-grid error estimate.
    QuadratureGrid refined() const;

    /// Integral of a radial function against dA.
    template <class F>
    double integrate_radial(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < radii.size(); ++i) s += weights[i] * f(radii[i]);
        return s;
    }
};

}  // namespace polygin
