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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "polygin/exact.hpp"
#include "polygin/kernels.hpp"
#include "polygin/polynomial.hpp"
#include "polygin/quadrature.hpp"
#include "polygin/sampler.hpp"
#include "polygin/testfn.hpp"

namespace polygin {

enum class CumulantMethod { mc, quadrature, exact_oracle };

std::string_view method_name(CumulantMethod m);

/// One cumulant C_k of trace g with its provenance.
struct CumulantReport {
    int k = 2;
    double value = 0.0;
    CumulantMethod method = CumulantMethod::quadrature;
    double std_error = 0.0;  // Monte Carlo only
    KernelSpec spec;
    std::string g;
    // Quadrature diagnostics.
    int nr = 0;
    int ntheta = 0;
    double rmax = 0.0;
    double richardson_gap = 0.0;
    bool converged = true;
    // Monte Carlo diagnostics.
    std::uint64_t rejections = 0;
    std::size_t replicates = 0;
};

/// trace g = sum of g over the points.
double linear_statistic(const PointSample& sample, const TestFunction& g);

/// E trace g = int g(z) K(z,z) exp(-n|z|^2) dA. Throws DomainError when
/// the grid radius is below the spec's default cap.
double expected_trace(const KernelSpec& spec, const TestFunction& g, const QuadratureGrid& grid);

/// Var trace g = tr G2 - ||G||_F^2 with G_{mm'} = int g phi_m conj(phi_m') dmu_n
/// over the orthonormal basis and G2 the same with g^2. Only pairs whose
/// angular momenta differ by a Fourier mode of g are formed. Evaluated on
/// `grid` and on grid.refined(); the refined value is reported with their
/// relative gap, and `converged` is cleared when the gap exceeds `tolerance`.
CumulantReport variance_quadrature(const KernelSpec& spec, const TestFunction& g, const QuadratureGrid& grid,
                                   double tolerance = 2e-3);

/// Single-grid evaluation of the matrix form (no refinement).
double variance_on_grid(const BasisTable& table, const TestFunction& g, const QuadratureGrid& grid);

/// The function G_k of the cumulant formula: sum over terms c * prod_l g(z_l)^{e_l},
/// integrated against the cyclic product K(z_1,z_2) ... K(z_k,z_1).
struct GkTerm {
    mpq_class coefficient;
    std::vector<int> exponents;  // length k
};

struct GkRepresentation {
    int k = 1;
    std::vector<GkTerm> terms;

    /// Value at g(z_l) = values[l].
    double evaluate(std::span<const double> values) const;
    mpq_class evaluate_exact(std::span<const mpq_class> values) const;
    /// Cyclic shift of the variables: z_l -> z_{l+shift mod k}.
    GkRepresentation rotated(int shift) const;
};

/// Raw form: compositions k = k_1 + ... + k_j with weight
/// (-1)^{j-1}/j * k!/(k_1! ... k_j!) on g(z_1)^{k_1} ... g(z_j)^{k_j}.
/// Symmetrized form: average of the raw form over cyclic shifts, which has
/// the same cyclic integral. Throws DomainError unless 1 <= k <= 4.
GkRepresentation build_Gk(int k, bool symmetrized = false);

/// Exact C_k(trace g) for a real polynomial g, k <= 3 and n <= 8, from
/// the cumulant formula with every integral reduced to Gaussian moments.
/// `rotation` cyclically relabels the integration variables (the value must
/// not change).
ExactComplex cumulant_exact_value(int k, const KernelSpec& spec, const ExactPoly& g, int rotation = 0);

CumulantReport cumulant_exact_smalln(int k, const KernelSpec& spec, const ExactPoly& g);
CumulantReport cumulant_exact_smalln(int k, const KernelSpec& spec, const PolyPoly& g);

/// Exact rational copy of a double-coefficient polynomial.
ExactPoly to_exact(const PolyPoly& p);

/// Both sides of the partial-integration identity at k = 2 for
/// F(z_1, z_2) = f1(z_1) f2(z_2):
///   lhs = int F [T^{i1}]_{z1} conj[T^{i1}]_{z2} K_n(z1,z2) [T^{i2}]_{z2} conj[T^{i2}]_{z1} K_n(z2,z1)
///   rhs = int [D_{i2,i1,n}]_{z1} [D_{i1,i2,n}]_{z2} F K_n(z1,z2) K_n(z2,z1)
/// against dmu_n x dmu_n, exactly.
struct CrosstermResult {
    ExactComplex lhs;
    ExactComplex rhs;
    double diff = 0.0;  // |lhs - rhs|
    bool passed = false;  // |diff| <= 1e-9 max(|lhs|, 1)
};

CrosstermResult verify_crossterms(int n, int i1, int i2, const ExactPoly& f1, const ExactPoly& f2);

struct CrosstermCase {
    int n;
    int i1;
    int i2;
    std::string f1;
    std::string f2;
};

/// Fixed 30-case lattice over n <= 6, i1, i2 <= 3 and polynomial factors.
std::vector<CrosstermCase> crossterm_lattice();

/// Unbiased sample cumulants with delete-one jackknife standard errors and a
/// normality summary.
struct KStatistics {
    std::size_t count = 0;
    double mean = 0.0;
    double k2 = 0.0, k3 = 0.0, k4 = 0.0;
    double se_mean = 0.0, se_k2 = 0.0, se_k3 = 0.0, se_k4 = 0.0;
    double skewness = 0.0, excess_kurtosis = 0.0;
    double se_skewness = 0.0, se_kurtosis = 0.0;
    /// Kolmogorov-Smirnov distance to N(mean, k2).
    double ks_distance = 0.0;
};

/// Requires at least 4 values.
KStatistics k_statistics(std::span<const double> values);

struct MonteCarloReport {
    std::vector<CumulantReport> cumulants;  // k = 1 .. k_max
    KStatistics summary;
    std::vector<double> traces;
    std::uint64_t rejections = 0;
};

/// Samples one configuration per seed and estimates C_1 .. C_{k_max} of
/// trace g. Throws DomainError for fewer than 200 seeds or k_max outside
/// 1..4.
MonteCarloReport mc_cumulant_report(const KernelSpec& spec, const TestFunction& g,
                                    const std::vector<std::uint64_t>& seeds, int k_max = 4);

/// seed, seed + 1, ..., seed + count - 1.
std::vector<std::uint64_t> seed_range(std::uint64_t seed, std::size_t count);

}  // namespace polygin
