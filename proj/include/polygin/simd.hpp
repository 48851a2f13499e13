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
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace polygin::simd {

using cdouble = std::complex<double>;

enum class Isa { scalar, avx2, neon };

/// Function table for the data-parallel inner loops. Every entry has a
/// scalar reference; vector variants must agree with it to rounding.
struct KernelTable {
    Isa isa;
    /// sum_i conj(a_i) * b_i
    cdouble (*cdotc)(const cdouble* a, const cdouble* b, std::size_t n);
    /// y += alpha * x
    void (*caxpy)(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n);
    /// sum_i |a_i|^2
    double (*cnorm2)(const cdouble* a, std::size_t n);
    /// sum_i a_i * b_i
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum_i a_i * b_i * c_i
    double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
};

/// Kernels chosen at first use: the best ISA the CPU supports, unless the
/// POLYGIN_SIMD environment variable names another available one.
const KernelTable& kernels();

/// Table for a specific ISA, or nullptr when it is not compiled in or the
/// CPU lacks it.
const KernelTable* kernels_for(Isa isa);

std::vector<Isa> available_isas();
std::string_view isa_name(Isa isa);

namespace detail {
extern const KernelTable scalar_table;
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

inline cdouble cdotc(std::span<const cdouble> a, std::span<const cdouble> b) {
    return kernels().cdotc(a.data(), b.data(), a.size());
}
inline void caxpy(cdouble alpha, std::span<const cdouble> x, std::span<cdouble> y) {
    kernels().caxpy(alpha, x.data(), y.data(), x.size());
}
inline double cnorm2(std::span<const cdouble> a) { return kernels().cnorm2(a.data(), a.size()); }
inline double dot(std::span<const double> a, std::span<const double> b) {
    return kernels().dot(a.data(), b.data(), a.size());
}
inline double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
    return kernels().dot3(a.data(), b.data(), c.data(), a.size());
}

}  // namespace polygin::simd
