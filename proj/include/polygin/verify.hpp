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

#include <string>
#include <string_view>
#include <vector>

namespace polygin {

enum class Suite { identities, kernels, cumulants, all };

Suite parse_suite(std::string_view name);

/// Outcome of one named check; `error` is the measured discrepancy in the
/// check's own scale (0 for exact checks that hold).
struct CheckResult {
    std::string name;
    bool passed = false;
    double error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Exact algebraic identities: basis orthonormality, raising-operator
/// isometry, lowering, partial integration, reproducing property, projection
/// idempotence, kernel decomposition, the Laguerre form of D_{r,r,n}, the
/// Laplacian expansion, G_k diagonal vanishing and the partial-integration
/// lattice at k = 2.
std::vector<CheckResult> identity_checks();

/// Numerical kernel checks: three-path agreement, Hermitian symmetry, Gram
/// positivity, diagonal bound, intensity normalization.
std::vector<CheckResult> kernel_checks();

/// Cumulant oracles: quadrature variance vs exact small-n values, cyclic
/// invariance and closed-form Ginibre cumulants.
std::vector<CheckResult> cumulant_checks();

std::vector<CheckResult> run_suite(Suite suite);

/// Maximum cross-path discrepancy (Cauchy-Schwarz scaled) over `pairs`
/// random pairs in the disk of radius `radius`, both the explicit and the
/// raising path compared against the basis path.
double kernel_path_discrepancy(int n, int q, bool pure, int pairs, double radius, unsigned long long seed);

}  // namespace polygin
