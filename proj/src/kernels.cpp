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

#include "polygin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polygin/errors.hpp"
#include "polygin/numerics.hpp"
#include "polygin/polynomial.hpp"

namespace polygin {

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::ginibre: return "ginibre";
        case Variant::full: return "full";
        case Variant::pure: return "pure";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name) {
    if (name == "ginibre") return Variant::ginibre;
    if (name == "full") return Variant::full;
    if (name == "pure") return Variant::pure;
    throw DomainError("unknown variant '" + std::string(name) + "' (expected ginibre, full or pure)");
}

void KernelSpec::validate() const {
    if (n < 1) throw DomainError("KernelSpec: n must be >= 1");
    if (q < 1) throw DomainError("KernelSpec: q must be >= 1");
    if (variant == Variant::ginibre && q != 1) throw DomainError("KernelSpec: ginibre requires q = 1");
}

std::string KernelSpec::to_string() const {
    return "(n=" + std::to_string(n) + ", q=" + std::to_string(q) + ", " +
           std::string(variant_name(variant)) + ")";
}

double laguerre(int r, int k, double x) {
    if (r < 0 || k < 0) throw DomainError("laguerre: negative degree or index");
    if (r == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + k - x;
    for (int m = 1; m < r; ++m) {
        const double next = ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

double gaussian_log_weight(int n, cdouble z, cdouble w) {
    return -0.5 * n * (std::norm(z) + std::norm(w));
}

cdouble unweight(cdouble weighted_value, int n, cdouble z, cdouble w) {
    if (n > kRawKernelMaxN) {
        throw CapacityError("raw kernel values are limited to n <= " + std::to_string(kRawKernelMaxN) +
                            "; use the weighted form");
    }
    const cdouble raw = weighted_value * std::exp(-gaussian_log_weight(n, z, w));
    if (!std::isfinite(raw.real()) || !std::isfinite(raw.imag())) {
        throw CapacityError("raw kernel value overflows a double");
    }
    return raw;
}

}  // namespace

cdouble eval_ginibre(int n, cdouble z, cdouble w, bool weighted) {
    if (n < 1 || n > 4096) throw DomainError("eval_ginibre requires 1 <= n <= 4096");
    if (!weighted && n > kRawKernelMaxN) {
        throw CapacityError("raw Ginibre kernel is limited to n <= " + std::to_string(kRawKernelMaxN));
    }
    const double log_n = std::log(double(n));
    const double log_zw = log_abs(z) + log_abs(w);
    const double phase = std::arg(z) - std::arg(w);
    const double base = log_n + gaussian_log_weight(n, z, w);
    CompensatedComplexSum sum;
    for (int j = 0; j < n; ++j) {
        const double lm = base + (j == 0 ? 0.0 : j * (log_n + log_zw)) - std::lgamma(j + 1.0);
        sum.add(std::polar(std::exp(lm), j * phase));
    }
    return weighted ? sum.value() : unweight(sum.value(), n, z, w);
}

BasisFunction::BasisFunction(int level, int index, int n) : level_(level), index_(index), n_(n) {
    if (level < 0 || index < 0 || n < 1) throw DomainError("BasisFunction: invalid (level, index, n)");
    // T_n^r z^j has integer-times-power-of-n coefficients; the normalisation
    // n^{(j+1)/2 - r/2} (-1)^r / sqrt(j! r!) is folded in log space.
    const int budget = std::max(PolyPoly::kDefaultDegreeBudget, index + level + 1);
    const PolyPoly raised = apply_T(PolyPoly::zpow(index, 0, 0, budget), n, level);
    const double log_norm = 0.5 * ((index + 1.0 - level) * std::log(double(n)) - std::lgamma(index + 1.0) -
                                   std::lgamma(level + 1.0));
    const int global_sign = level % 2 == 0 ? 1 : -1;
    for (const auto& [e, c] : raised.terms()) {
        const double re = c.real();
        monomials_.push_back({e[0], e[1], std::log(std::abs(re)) + log_norm, (re < 0 ? -1 : 1) * global_sign});
    }
}

double BasisFunction::radial(double rho) const {
    const double log_rho = rho > 0.0 ? std::log(rho) : -HUGE_VAL;
    const double gauss = -0.5 * n_ * rho * rho;
    CompensatedSum sum;
    for (const auto& m : monomials_) {
        const int p = m.a + m.b;
        if (p > 0 && rho == 0.0) continue;
        sum.add(m.sign * std::exp(m.log_magnitude + scaled_power_log(p, log_rho) + gauss));
    }
    return sum.value();
}

cdouble BasisFunction::weighted(cdouble z) const {
    return std::polar(1.0, angular() * std::arg(z)) * radial(std::abs(z));
}

cdouble BasisFunction::raw(cdouble z) const {
    const double rho = std::abs(z);
    const double log_rho = rho > 0.0 ? std::log(rho) : -HUGE_VAL;
    CompensatedSum sum;
    for (const auto& m : monomials_) {
        const int p = m.a + m.b;
        if (p > 0 && rho == 0.0) continue;
        sum.add(m.sign * std::exp(m.log_magnitude + scaled_power_log(p, log_rho)));
    }
    return std::polar(1.0, angular() * std::arg(z)) * sum.value();
}

std::vector<BasisFunction> basis_functions(const KernelSpec& spec) {
    spec.validate();
    std::vector<BasisFunction> out;
    out.reserve(spec.dimension());
    for (int r = spec.lowest_level(); r <= spec.highest_level(); ++r) {
        for (int j = 0; j < spec.n; ++j) out.emplace_back(r, j, spec.n);
    }
    return out;
}

BasisTable::BasisTable(const KernelSpec& spec) : spec_(spec), functions_(basis_functions(spec)) {
    angular_.reserve(functions_.size());
    for (const auto& f : functions_) angular_.push_back(f.angular());
}

void BasisTable::evaluate(cdouble z, std::span<cdouble> out) const {
    const double rho = std::abs(z);
    const double theta = std::arg(z);
    for (std::size_t m = 0; m < functions_.size(); ++m) {
        out[m] = std::polar(1.0, angular_[m] * theta) * functions_[m].radial(rho);
    }
}

void BasisTable::radial(double rho, std::span<double> out) const {
    for (std::size_t m = 0; m < functions_.size(); ++m) out[m] = functions_[m].radial(rho);
}

double BasisTable::intensity(double rho) const {
    CompensatedSum sum;
    for (const auto& f : functions_) {
        const double r = f.radial(rho);
        sum.add(r * r);
    }
    return sum.value();
}

std::string_view path_name(KernelPath p) {
    switch (p) {
        case KernelPath::basis: return "basis";
        case KernelPath::explicit_laguerre: return "explicit";
        case KernelPath::raising: return "raising";
    }
    return "unknown";
}

KernelPath parse_path(std::string_view name) {
    if (name == "basis") return KernelPath::basis;
    if (name == "explicit") return KernelPath::explicit_laguerre;
    if (name == "raising") return KernelPath::raising;
    throw DomainError("unknown kernel path '" + std::string(name) + "' (expected basis, explicit or raising)");
}

KernelEvaluator::KernelEvaluator(const KernelSpec& spec, bool prepare_raising) : spec_(spec), basis_(spec) {
    if (!prepare_raising) return;
    using BiPoly = Polynomial<cdouble, 2>;
    const int n = spec.n;
    const long double log_n = std::log(static_cast<long double>(n));
    const int budget = std::max(BiPoly::kDefaultDegreeBudget, n + spec.q + 1);
    for (int r = spec.lowest_level(); r <= spec.highest_level(); ++r) {
        for (int j = 0; j < n; ++j) {
            // analytic kernel term n^{j+1}/j! z^j conj(w)^j, raised in both slots
            auto term = BiPoly::with_budget(budget);
            term.add_term({j, 0, 0, j}, {1.0, 0.0});
            term = apply_T_conj(apply_T(std::move(term), n, r, 0), n, r, 1);
            const long double log_scale =
                (j + 1.0L - r) * log_n - std::lgamma(j + 1.0L) - std::lgamma(r + 1.0L);
            for (const auto& [e, c] : term.terms()) {
                raised_.push_back({e[0], e[1], e[2], e[3],
                                   std::log(static_cast<long double>(std::abs(c.real()))) + log_scale,
                                   c.real() < 0 ? -1 : 1});
            }
        }
    }
    has_raised_ = true;
}

cdouble KernelEvaluator::basis_path(cdouble z, cdouble w) const {
    const double rz = std::abs(z), rw = std::abs(w);
    const double dtheta = std::arg(z) - std::arg(w);
    CompensatedComplexSum sum;
    for (const auto& f : basis_.functions()) {
        const double v = f.radial(rz) * f.radial(rw);
        if (v != 0.0) sum.add(std::polar(1.0, f.angular() * dtheta) * v);
    }
    return sum.value();
}

cdouble explicit_full_kernel(int n, int q, cdouble z, cdouble w) {
    const double log_n = std::log(double(n));
    const double x = n * std::norm(z);
    const double y = n * std::norm(w);
    const double log_zw = log_n + log_abs(z) + log_abs(w);
    const double phase = std::arg(z) - std::arg(w);
    const double base = log_n - 0.5 * (x + y);
    CompensatedComplexSum sum;
    auto add = [&](int degree, int index, int power, double dir) {
        const double lx = laguerre(degree, index, x);
        const double ly = laguerre(degree, index, y);
        if (lx == 0.0 || ly == 0.0) return;
        if (power > 0 && !std::isfinite(log_zw)) return;
        const double lm = base + std::lgamma(degree + 1.0) - std::lgamma(degree + index + 1.0) +
                          (power == 0 ? 0.0 : power * log_zw) + std::log(std::abs(lx)) + std::log(std::abs(ly));
        const double sign = (lx < 0) != (ly < 0) ? -1.0 : 1.0;
        sum.add(std::polar(sign * std::exp(lm), dir * power * phase));
    };
    for (int r = 0; r <= q - 1; ++r) {
        for (int i = 0; i <= n - r - 1; ++i) add(r, i, i, 1.0);
    }
    // Levels above the analytic index: only indices j <= n - 1 belong to the space.
    for (int j = 0; j <= std::min(q - 2, n - 1); ++j) {
        for (int k = 1; k <= q - j - 1; ++k) add(j, k, k, -1.0);
    }
    return sum.value();
}

cdouble KernelEvaluator::explicit_path(cdouble z, cdouble w) const {
    const cdouble full = explicit_full_kernel(spec_.n, spec_.q, z, w);
    if (spec_.variant != Variant::pure || spec_.q == 1) return full;
    return full - explicit_full_kernel(spec_.n, spec_.q - 1, z, w);
}

cdouble KernelEvaluator::raising_path(cdouble z, cdouble w) const {
    if (!has_raised_) throw DomainError("KernelEvaluator built without the raising path");
    // Extended precision: the expanded bivariate terms cancel heavily for
    // q >= 3, so per-term rounding must stay well below the target tolerance.
    using ld = long double;
    const ld lz = std::log(static_cast<ld>(std::abs(z)));
    const ld lw = std::log(static_cast<ld>(std::abs(w)));
    const ld tz = std::arg(std::complex<ld>(z.real(), z.imag()));
    const ld tw = std::arg(std::complex<ld>(w.real(), w.imag()));
    const ld gauss = -0.5L * spec_.n * (std::norm(std::complex<ld>(z.real(), z.imag())) +
                                        std::norm(std::complex<ld>(w.real(), w.imag())));
    ld re = 0.0L, im = 0.0L;
    for (const auto& t : raised_) {
        const int pz = t.a + t.b, pw = t.c + t.d;
        if ((pz > 0 && z == 0.0) || (pw > 0 && w == 0.0)) continue;
        const ld lm = t.log_magnitude + (pz == 0 ? 0.0L : pz * lz) + (pw == 0 ? 0.0L : pw * lw) + gauss;
        const ld mag = t.sign * std::exp(lm);
        const ld ph = (t.a - t.b) * tz + (t.c - t.d) * tw;
        re += mag * std::cos(ph);
        im += mag * std::sin(ph);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

cdouble KernelEvaluator::evaluate(cdouble z, cdouble w, KernelPath path, bool weighted) const {
    if (weighted && (std::abs(z) > 8.0 || std::abs(w) > 8.0)) {
        throw DomainError("weighted kernel evaluation requires |z|, |w| <= 8");
    }
    if (!weighted && spec_.n > kRawKernelMaxN) {
        throw CapacityError("raw kernel values are limited to n <= " + std::to_string(kRawKernelMaxN) +
                            "; use the weighted form");
    }
    cdouble v;
    switch (path) {
        case KernelPath::basis: v = basis_path(z, w); break;
        case KernelPath::explicit_laguerre: v = explicit_path(z, w); break;
        case KernelPath::raising: v = raising_path(z, w); break;
    }
    return weighted ? v : unweight(v, spec_.n, z, w);
}

cdouble eval_kernel(const KernelSpec& spec, cdouble z, cdouble w, KernelPath path, bool weighted) {
    spec.validate();
    if (!weighted && spec.n > kRawKernelMaxN) {
        throw CapacityError("raw kernel values are limited to n <= " + std::to_string(kRawKernelMaxN) +
                            "; use the weighted form");
    }
    const KernelEvaluator ev(spec, path == KernelPath::raising);
    return ev.evaluate(z, w, path, weighted);
}

double intensity(const KernelSpec& spec, double radius) {
    if (radius < 0.0 || radius > 8.0) throw DomainError("intensity requires 0 <= radius <= 8");
    return BasisTable(spec).intensity(radius);
}

double kernel_relative_difference(cdouble a, cdouble b, double diag_z, double diag_w) {
    const double scale = std::sqrt(std::max(diag_z, 0.0) * std::max(diag_w, 0.0));
    return std::abs(a - b) / std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace polygin
