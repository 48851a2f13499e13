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

#include <complex>
#include <string>
#include <vector>

#include "polygin/kernels.hpp"
#include "polygin/testfn.hpp"

namespace polygin {

/// Fourier coefficients ghat_k(rho) = (1/2pi) int g(rho e^{it}) e^{-ikt} dt
/// for k = -kmax..kmax (index k + kmax), from ntheta equispaced samples.
std::vector<cdouble> angular_fourier(const TestFunction& g, double rho, int ntheta, int kmax);

/// Dirichlet seminorm int_D |dbar g|^2 dA with dA = dx dy / pi. Composite
/// Gauss-Legendre in the radius (panels cut at the breakpoints of g) and the
/// trapezoid rule in the angle.
double h1_seminorm(const TestFunction& g, int nodes_per_panel = 64, int ntheta = 256);

/// int_D g dA, the circular-law limit of (1/dim) E trace g.
double disk_integral(const TestFunction& g, int nodes_per_panel = 64, int ntheta = 256);

/// Boundary seminorm sum_k |k| |ghat(k)|^2 of g restricted to the unit
/// circle, from a DFT on `modes` points. Requires a power of two
/// >= max(4, 4 * max_mode); throws NumericalError when the upper quarter of
/// the spectrum carries energy (aliasing).
double h_half_seminorm(const TestFunction& g, int modes = 512);

/// Limiting variance of the centred linear statistic.
struct VariancePrediction {
    double h1 = 0.0;
    double h_half = 0.0;
    double bulk_coeff = 0.0;
    double boundary_coeff = 0.0;
    double bulk = 0.0;      // bulk_coeff * h1
    double boundary = 0.0;  // boundary_coeff * h_half / 2
    double total = 0.0;
    /// Pure-level predictions (2r-1) h1 + h_half/2 for r = 1..q.
    std::vector<double> per_level;
    /// Set when g is not compactly supported, so the limit theorem does not
    /// formally apply.
    std::string warning;
};

/// pure level q: (2q-1) h1 + h_half/2; full: q (h1 + h_half/2); Ginibre is
/// pure with q = 1.
VariancePrediction predicted_variance(const KernelSpec& spec, const TestFunction& g);

}  // namespace polygin
