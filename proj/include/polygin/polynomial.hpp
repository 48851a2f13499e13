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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polygin/errors.hpp"
#include "polygin/exact.hpp"

namespace polygin {

using cdouble = std::complex<double>;

/// Coefficient-type adaptor shared by the double and exact polynomial modes.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<cdouble> {
    static cdouble from_int(long long v) { return {static_cast<double>(v), 0.0}; }
    static cdouble from_ratio(long long num, long long den) {
        return {static_cast<double>(num) / static_cast<double>(den), 0.0};
    }
    static bool is_zero(const cdouble& c) { return c.real() == 0.0 && c.imag() == 0.0; }
    static cdouble conj(const cdouble& c) { return std::conj(c); }
    static cdouble to_complex(const cdouble& c) { return c; }

    /// a! / n^(a+1), the Gaussian moment of |z|^(2a) under exp(-n|z|^2) dA.
    static cdouble gaussian_moment(int a, int n) {
        const double log_moment = std::lgamma(a + 1.0) - (a + 1.0) * std::log(double(n));
        if (log_moment > std::log(std::numeric_limits<double>::max()) - 1.0 ||
            log_moment < std::log(std::numeric_limits<double>::min()) + 1.0) {
            throw CapacityError("Gaussian moment " + std::to_string(a) + "!/" +
                                std::to_string(n) + "^" + std::to_string(a + 1) +
                                " is outside double range");
        }
        if (a <= 64) {
            double m = 1.0 / n;
            for (int k = 1; k <= a; ++k) m *= double(k) / n;
            return {m, 0.0};
        }
        return {std::exp(log_moment), 0.0};
    }
};

template <>
struct CoeffTraits<ExactComplex> {
    static ExactComplex from_int(long long v) { return {mpq_class(static_cast<long>(v))}; }
    static ExactComplex from_ratio(long long num, long long den) {
        mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        q.canonicalize();
        return {q};
    }
    static bool is_zero(const ExactComplex& c) { return c.is_zero(); }
    static ExactComplex conj(const ExactComplex& c) { return c.conj(); }
    static cdouble to_complex(const ExactComplex& c) { return c.to_complex(); }

    static ExactComplex gaussian_moment(int a, int n) {
        mpz_class num = 1;
        for (int k = 2; k <= a; ++k) num *= k;
        mpz_class den = 1;
        for (int k = 0; k <= a; ++k) den *= n;
        mpq_class q(num, den);
        q.canonicalize();
        return {q};
    }
};

enum class Wirtinger { d, dbar };

/// Sparse polynomial in Vars complex variables and their conjugates:
///   sum c * prod_v z_v^{a_v} conj(z_v)^{b_v}
/// Exponents are stored interleaved as (a_0, b_0, a_1, b_1, ...). Exact zero
/// coefficients are never stored. Every exponent is bounded by the degree
/// budget; exceeding it raises CapacityError.
template <class Coeff, std::size_t Vars = 1>
class Polynomial {
  public:
    using coeff_type = Coeff;
    using traits = CoeffTraits<Coeff>;
    using Exponents = std::array<int, 2 * Vars>;
    using TermMap = std::map<Exponents, Coeff>;

    static constexpr std::size_t num_vars = Vars;
    static constexpr int kDefaultDegreeBudget = 64;

    Polynomial() = default;

    static Polynomial constant(const Coeff& c) { return monomial(c, Exponents{}); }

    static Polynomial monomial(const Coeff& c, const Exponents& e) {
        Polynomial p;
        p.add_term(e, c);
        return p;
    }

    /// Empty polynomial with a non-default degree budget.
    static Polynomial with_budget(int budget) {
        Polynomial p;
        p.budget_ = budget;
        return p;
    }

    /// z_var^a conj(z_var)^b with unit coefficient.
    static Polynomial zpow(int a, int b, std::size_t var = 0, int budget = kDefaultDegreeBudget) {
        Exponents e{};
        e[2 * var] = a;
        e[2 * var + 1] = b;
        auto p = with_budget(budget);
        p.add_term(e, traits::from_int(1));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    int degree_budget() const { return budget_; }
    void set_degree_budget(int budget) {
        budget_ = budget;
        for (const auto& [e, c] : terms_) check_budget(e);
    }

    Coeff coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff{} : it->second;
    }

    void add_term(const Exponents& e, const Coeff& c) {
        if (traits::is_zero(c)) return;
        check_budget(e);
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        budget_ = std::max(budget_, o.budget_);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        budget_ = std::max(budget_, o.budget_);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Coeff& s) {
        if (traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
    friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        out.budget_ = std::max(a.budget_, b.budget_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t i = 0; i < 2 * Vars; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    /// Complex conjugate as a function: swaps z and conj(z) in every variable.
    Polynomial conj() const {
        Polynomial out;
        out.budget_ = budget_;
        for (const auto& [e, c] : terms_) {
            Exponents s = e;
            for (std::size_t v = 0; v < Vars; ++v) std::swap(s[2 * v], s[2 * v + 1]);
            out.add_term(s, traits::conj(c));
        }
        return out;
    }

    /// True when the polynomial equals its conjugate, i.e. is real-valued.
    bool is_real() const { return *this == conj(); }

    int max_exponent(std::size_t var, Wirtinger which) const {
        int m = 0;
        const std::size_t slot = 2 * var + (which == Wirtinger::dbar ? 1 : 0);
        for (const auto& [e, c] : terms_) m = std::max(m, e[slot]);
        return m;
    }

    cdouble evaluate(std::span<const cdouble> points) const {
        cdouble sum{};
        for (const auto& [e, c] : terms_) {
            cdouble t = traits::to_complex(c);
            for (std::size_t v = 0; v < Vars; ++v) {
                t *= std::pow(points[v], e[2 * v]) * std::pow(std::conj(points[v]), e[2 * v + 1]);
            }
            sum += t;
        }
        return sum;
    }

    cdouble operator()(cdouble z) const
        requires(Vars == 1)
    {
        return evaluate(std::span<const cdouble>(&z, 1));
    }

  private:
    void check_budget(const Exponents& e) const {
        for (int x : e) {
            if (x > budget_) {
                throw CapacityError("polynomial exponent " + std::to_string(x) +
                                    " exceeds the degree budget " + std::to_string(budget_));
            }
        }
    }

    TermMap terms_;
    int budget_ = kDefaultDegreeBudget;
};

/// Univariate polynomials in z and conj(z) with double or exact coefficients.
using PolyPoly = Polynomial<cdouble, 1>;
using ExactPoly = Polynomial<ExactComplex, 1>;

template <class C, std::size_t V>
Polynomial<C, V> wirtinger(const Polynomial<C, V>& p, Wirtinger which, std::size_t var = 0) {
    using P = Polynomial<C, V>;
    P out;
    out.set_degree_budget(p.degree_budget());
    const std::size_t slot = 2 * var + (which == Wirtinger::dbar ? 1 : 0);
    for (const auto& [e, c] : p.terms()) {
        if (e[slot] == 0) continue;
        auto d = e;
        d[slot] -= 1;
        out.add_term(d, c * P::traits::from_int(e[slot]));
    }
    return out;
}

/// z_var * p (conjugate = false) or conj(z_var) * p (conjugate = true).
template <class C, std::size_t V>
Polynomial<C, V> multiply_by_variable(const Polynomial<C, V>& p, bool conjugate, std::size_t var = 0) {
    Polynomial<C, V> out;
    out.set_degree_budget(p.degree_budget());
    const std::size_t slot = 2 * var + (conjugate ? 1 : 0);
    for (const auto& [e, c] : p.terms()) {
        auto d = e;
        d[slot] += 1;
        out.add_term(d, c);
    }
    return out;
}

/// Raising operator T_n p = n conj(z) p - dp, applied `times` times in `var`.
template <class C, std::size_t V>
Polynomial<C, V> apply_T(Polynomial<C, V> p, int n, int times, std::size_t var = 0) {
    if (times < 0) throw DomainError("apply_T: negative repetition count");
    const C nn = Polynomial<C, V>::traits::from_int(n);
    for (int t = 0; t < times; ++t) {
        auto next = multiply_by_variable(p, true, var) * nn;
        next -= wirtinger(p, Wirtinger::d, var);
        p = std::move(next);
    }
    return p;
}

/// Conjugate raising operator p -> n z p - dbar p (the action of conj(T_n) on
/// the antiholomorphic slot of a kernel).
template <class C, std::size_t V>
Polynomial<C, V> apply_T_conj(Polynomial<C, V> p, int n, int times, std::size_t var = 0) {
    if (times < 0) throw DomainError("apply_T_conj: negative repetition count");
    const C nn = Polynomial<C, V>::traits::from_int(n);
    for (int t = 0; t < times; ++t) {
        auto next = multiply_by_variable(p, false, var) * nn;
        next -= wirtinger(p, Wirtinger::dbar, var);
        p = std::move(next);
    }
    return p;
}

/// Integrates out one variable against exp(-n|z|^2) dA. The variable's
/// exponents are zero in the result.
template <class C, std::size_t V>
Polynomial<C, V> integrate_variable(const Polynomial<C, V>& p, std::size_t var, int n) {
    using P = Polynomial<C, V>;
    if (n < 1) throw DomainError("Gaussian weight requires n >= 1");
    P out;
    out.set_degree_budget(p.degree_budget());
    std::map<int, C> moments;
    for (const auto& [e, c] : p.terms()) {
        const int a = e[2 * var];
        if (a != e[2 * var + 1]) continue;
        auto it = moments.find(a);
        if (it == moments.end()) it = moments.emplace(a, P::traits::gaussian_moment(a, n)).first;
        auto d = e;
        d[2 * var] = 0;
        d[2 * var + 1] = 0;
        out.add_term(d, c * it->second);
    }
    return out;
}

/// Integral of p over all variables against the product Gaussian measure.
template <class C, std::size_t V>
C gaussian_integral(const Polynomial<C, V>& p, int n) {
    using P = Polynomial<C, V>;
    if (n < 1) throw DomainError("Gaussian weight requires n >= 1");
    C total{};
    for (const auto& [e, c] : p.terms()) {
        bool matched = true;
        for (std::size_t v = 0; v < V && matched; ++v) matched = e[2 * v] == e[2 * v + 1];
        if (!matched) continue;
        C t = c;
        for (std::size_t v = 0; v < V; ++v) t *= P::traits::gaussian_moment(e[2 * v], n);
        total += t;
    }
    return total;
}

/// <p, q> = integral of p * conj(q) d(mu_n).
template <class C>
C gaussian_inner(const Polynomial<C, 1>& p, const Polynomial<C, 1>& q, int n) {
    return gaussian_integral(p * q.conj(), n);
}

/// Maps variable v of `p` onto variable target[v] of a polynomial in
/// OutVars variables. Coinciding targets multiply (restriction to a diagonal).
template <std::size_t OutVars, class C, std::size_t V>
Polynomial<C, OutVars> relabel(const Polynomial<C, V>& p, const std::array<std::size_t, V>& target) {
    Polynomial<C, OutVars> out;
    out.set_degree_budget(p.degree_budget());
    for (const auto& [e, c] : p.terms()) {
        typename Polynomial<C, OutVars>::Exponents d{};
        for (std::size_t v = 0; v < V; ++v) {
            d[2 * target[v]] += e[2 * v];
            d[2 * target[v] + 1] += e[2 * v + 1];
        }
        out.add_term(d, c);
    }
    return out;
}

/// Integer power p^k.
template <class C, std::size_t V>
Polynomial<C, V> power(const Polynomial<C, V>& p, int k) {
    auto out = Polynomial<C, V>::constant(Polynomial<C, V>::traits::from_int(1));
    out.set_degree_budget(p.degree_budget());
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

/// Orthonormal analytic basis element e_j = n^{(j+1)/2} z^j / sqrt(j!).
PolyPoly basis_monomial(int j, int n);

long long binomial(int n, int k);
long long falling_factorial(long long r, int j);

/// D_{alpha,beta,n} = sum_j C(m,j) (M)_j n^j dbar^{alpha-j} d^{beta-j},
/// m = min(alpha,beta), M = max(alpha,beta).
struct DiffOpSpec {
    int alpha = 0;
    int beta = 0;
    int n = 1;

    struct Term {
        int j;
        long long coefficient;  // C(m,j) (M)_j n^j
    };

    /// The min(alpha,beta)+1 expansion terms.
    std::vector<Term> expansion() const;
};

template <class C, std::size_t V>
Polynomial<C, V> apply_diffop(const DiffOpSpec& spec, const Polynomial<C, V>& p, std::size_t var = 0) {
    using P = Polynomial<C, V>;
    if (spec.alpha < 0 || spec.beta < 0 || spec.n < 1) throw DomainError("invalid DiffOpSpec");
    P out;
    out.set_degree_budget(p.degree_budget());
    for (const auto& term : spec.expansion()) {
        P t = p;
        for (int i = 0; i < spec.beta - term.j; ++i) t = wirtinger(t, Wirtinger::d, var);
        for (int i = 0; i < spec.alpha - term.j; ++i) t = wirtinger(t, Wirtinger::dbar, var);
        out += t * P::traits::from_int(term.coefficient);
    }
    return out;
}

/// Delta = d dbar (one quarter of the Euclidean Laplacian).
template <class C, std::size_t V>
Polynomial<C, V> laplacian(const Polynomial<C, V>& p, std::size_t var = 0) {
    return wirtinger(wirtinger(p, Wirtinger::dbar, var), Wirtinger::d, var);
}

/// Converts between coefficient modes (exact -> double).
template <std::size_t V>
Polynomial<cdouble, V> to_double(const Polynomial<ExactComplex, V>& p) {
    Polynomial<cdouble, V> out;
    out.set_degree_budget(p.degree_budget());
    for (const auto& [e, c] : p.terms()) out.add_term(e, c.to_complex());
    return out;
}

}  // namespace polygin
