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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polygin {

using cdouble = std::complex<double>;

enum class Variant { ginibre, full, pure };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

/// Selects an ensemble: n particles per Landau level (the field strength),
/// q levels, and whether all levels up to q (full) or only level q (pure)
/// are filled. The Ginibre variant is the q = 1 analytic case.
struct KernelSpec {
    int n = 1;
    int q = 1;
    Variant variant = Variant::full;

    static KernelSpec ginibre(int n) { return {n, 1, Variant::ginibre}; }
    static KernelSpec full(int n, int q) { return {n, q, Variant::full}; }
    static KernelSpec pure(int n, int q) { return {n, q, Variant::pure}; }

    /// Throws DomainError for n < 1, q < 1, or a Ginibre spec with q != 1.
    void validate() const;

    int dimension() const { return variant == Variant::full ? n * q : n; }
    int lowest_level() const { return variant == Variant::pure ? q - 1 : 0; }
    int highest_level() const { return q - 1; }
    int level_count() const { return highest_level() - lowest_level() + 1; }

    std::string to_string() const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// Associated Laguerre polynomial L_r^k(x), three-term recurrence in r.
double laguerre(int r, int k, double x);

/// Analytic Ginibre kernel K_n(z, w) = n sum_{j<n} (n z conj(w))^j / j!.
/// Weighted form multiplies by exp(-n(|z|^2+|w|^2)/2). The raw form is
/// limited to n <= 64 (CapacityError otherwise).
cdouble eval_ginibre(int n, cdouble z, cdouble w, bool weighted);

inline constexpr int kRawKernelMaxN = 64;

/// One monomial z^a conj(z)^b of a basis function, coefficient stored as
/// sign * exp(log_magnitude).
struct BasisMonomial {
    int a = 0;
    int b = 0;
    double log_magnitude = 0.0;
    int sign = 1;
};

/// Orthonormal element T_{n,r} e_j of the level-r pure space, expanded into
/// monomials with a - b = j - r for every term.
class BasisFunction {
  public:
    BasisFunction(int level, int index, int n);

    int level() const { return level_; }
    int index() const { return index_; }
    int n() const { return n_; }
    int angular() const { return index_ - level_; }
    std::span<const BasisMonomial> monomials() const { return monomials_; }

    /// Real radial profile R(rho) of the weighted function
    /// phi(z) exp(-n|z|^2/2) = R(|z|) e^{i angular arg z}.
    double radial(double rho) const;

    /// Weighted value phi(z) exp(-n|z|^2/2).
    cdouble weighted(cdouble z) const;

    /// Raw polynomial value phi(z).
    cdouble raw(cdouble z) const;

  private:
    int level_;
    int index_;
    int n_;
    std::vector<BasisMonomial> monomials_;
};

/// Basis of the ensemble's space: levels 0..q-1 (full) or q-1 only (pure),
/// ordered by level then index.
std::vector<BasisFunction> basis_functions(const KernelSpec& spec);

/// Prepared basis for repeated evaluation; immutable after construction.
class BasisTable {
  public:
    explicit BasisTable(const KernelSpec& spec);

    const KernelSpec& spec() const { return spec_; }
    std::size_t size() const { return functions_.size(); }
    const std::vector<BasisFunction>& functions() const { return functions_; }
    std::span<const int> angular() const { return angular_; }

    /// Weighted values of every basis function at z (the feature vector).
    void evaluate(cdouble z, std::span<cdouble> out) const;

    /// Radial profiles of every basis function at radius rho.
    void radial(double rho, std::span<double> out) const;

    /// Weighted diagonal K(z,z) exp(-n|z|^2) at radius rho.
    double intensity(double rho) const;

  private:
    KernelSpec spec_;
    std::vector<BasisFunction> functions_;
    std::vector<int> angular_;
};

enum class KernelPath { basis, explicit_laguerre, raising };

std::string_view path_name(KernelPath p);
KernelPath parse_path(std::string_view name);

/// Three independent evaluators of K_{n,q} / K_{delta;n,q}: the orthonormal
/// basis sum, the closed-form Laguerre double sum, and symbolic raising
/// operators applied to the analytic kernel. Immutable after construction.
class KernelEvaluator {
  public:
    explicit KernelEvaluator(const KernelSpec& spec, bool prepare_raising = true);

    const KernelSpec& spec() const { return spec_; }
    const BasisTable& basis() const { return basis_; }

    cdouble evaluate(cdouble z, cdouble w, KernelPath path, bool weighted = true) const;

    cdouble basis_path(cdouble z, cdouble w) const;
    cdouble explicit_path(cdouble z, cdouble w) const;
    cdouble raising_path(cdouble z, cdouble w) const;

  private:
    struct RaisedTerm {
        int a, b, c, d;  // z^a conj(z)^b w^c conj(w)^d
        long double log_magnitude;
        int sign;
    };

    KernelSpec spec_;
    BasisTable basis_;
    std::vector<RaisedTerm> raised_;
    bool has_raised_ = false;
};

/// Weighted explicit full kernel K_{n,q}(z,w) exp(-n(|z|^2+|w|^2)/2).
cdouble explicit_full_kernel(int n, int q, cdouble z, cdouble w);

/// One-shot evaluation (builds the evaluator each call).
cdouble eval_kernel(const KernelSpec& spec, cdouble z, cdouble w, KernelPath path, bool weighted);

/// One-point intensity K(z,z) exp(-n|z|^2) at |z| = radius.
double intensity(const KernelSpec& spec, double radius);

/// |a - b| scaled by the Cauchy-Schwarz bound sqrt(K(z,z) K(w,w)), the
/// natural magnitude of an off-diagonal kernel value.
double kernel_relative_difference(cdouble a, cdouble b, double diag_z, double diag_w);

}  // namespace polygin
