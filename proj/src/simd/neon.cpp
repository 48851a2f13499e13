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

#include "polygin/simd.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace polygin::simd {
namespace {

cdouble cdotc_neon(const cdouble* a, const cdouble* b, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = vld1q_f64(pa + 2 * i);
        const float64x2_t vb = vld1q_f64(pb + 2 * i);
        acc_re = vfmaq_f64(acc_re, va, vb);
        acc_im = vfmaq_f64(acc_im, va, vextq_f64(vb, vb, 1));
    }
    const double re = vgetq_lane_f64(acc_re, 0) + vgetq_lane_f64(acc_re, 1);
    const double im = vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1);
    return {re, im};
}

void caxpy_neon(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
    const auto* px = reinterpret_cast<const double*>(x);
    auto* py = reinterpret_cast<double*>(y);
    const float64x2_t ar = vdupq_n_f64(alpha.real());
    const float64x2_t ai = {-alpha.imag(), alpha.imag()};
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t vx = vld1q_f64(px + 2 * i);
        float64x2_t vy = vld1q_f64(py + 2 * i);
        vy = vfmaq_f64(vy, ar, vx);
        vy = vfmaq_f64(vy, ai, vextq_f64(vx, vx, 1));
        vst1q_f64(py + 2 * i, vy);
    }
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double cnorm2_neon(const cdouble* a, std::size_t n) {
    const auto* pa = reinterpret_cast<const double*>(a);
    return dot_neon(pa, pa, 2 * n);
}

double dot3_neon(const double* a, const double* b, const double* c, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), vld1q_f64(c + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

const KernelTable table{Isa::neon, cdotc_neon, caxpy_neon, cnorm2_neon, dot_neon, dot3_neon};

}  // namespace

namespace detail {
const KernelTable* neon_table() { return &table; }
}  // namespace detail

}  // namespace polygin::simd

#else

namespace polygin::simd::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace polygin::simd::detail

#endif
