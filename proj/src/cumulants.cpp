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

#include <algorithm>
#include <map>
#include <numeric>

#include "polygin/errors.hpp"
#include "polygin/statistics.hpp"

namespace polygin {

namespace {

mpq_class factorial(int k) {
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return mpq_class(f);
}

/// Every composition of k into positive parts.
void compositions(int k, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (k == 0) {
        out.push_back(prefix);
        return;
    }
    for (int first = 1; first <= k; ++first) {
        prefix.push_back(first);
        compositions(k - first, prefix, out);
        prefix.pop_back();
    }
}

GkRepresentation collect(int k, const std::map<std::vector<int>, mpq_class>& terms) {
    GkRepresentation g;
    g.k = k;
    for (const auto& [e, c] : terms) {
        if (sgn(c) != 0) g.terms.push_back({c, e});
    }
    return g;
}

using ExactMatrix = std::vector<ExactComplex>;  // row-major, dim x dim

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, std::size_t dim) {
    ExactMatrix c(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t l = 0; l < dim; ++l) {
            const auto& x = a[i * dim + l];
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                const auto& y = b[l * dim + j];
                if (!y.is_zero()) c[i * dim + j] += x * y;
            }
        }
    }
    return c;
}

bool is_real_poly(const ExactPoly& g) { return g == g.conj(); }

using ExactPoly2 = Polynomial<ExactComplex, 2>;

/// Analytic Ginibre kernel n sum_{j<n} (n z conj(w))^j / j! with z in
/// variable `zv` and w in variable `wv`.
ExactPoly2 ginibre_kernel_poly(int n, std::size_t zv, std::size_t wv) {
    ExactPoly2 k;
    mpz_class npow = n;  // n^{j+1}
    mpz_class fact = 1;
    for (int j = 0; j < n; ++j) {
        if (j > 0) {
            npow *= n;
            fact *= j;
        }
        ExactPoly2::Exponents e{};
        e[2 * zv] = j;
        e[2 * wv + 1] = j;
        mpq_class c(npow, fact);
        c.canonicalize();
        k.add_term(e, ExactComplex(c));
    }
    return k;
}

double magnitude(const ExactComplex& c) { return std::abs(c.to_complex()); }

}  // namespace

double GkRepresentation::evaluate(std::span<const double> values) const {
    if (values.size() != static_cast<std::size_t>(k)) throw DomainError("G_k: wrong number of arguments");
    double s = 0.0;
    for (const auto& t : terms) {
        double p = t.coefficient.get_d();
        for (int l = 0; l < k; ++l) p *= std::pow(values[l], t.exponents[l]);
        s += p;
    }
    return s;
}

mpq_class GkRepresentation::evaluate_exact(std::span<const mpq_class> values) const {
    if (values.size() != static_cast<std::size_t>(k)) throw DomainError("G_k: wrong number of arguments");
    mpq_class s = 0;
    for (const auto& t : terms) {
        mpq_class p = t.coefficient;
        for (int l = 0; l < k; ++l) {
            for (int e = 0; e < t.exponents[l]; ++e) p *= values[l];
        }
        s += p;
    }
    return s;
}

GkRepresentation GkRepresentation::rotated(int shift) const {
    std::map<std::vector<int>, mpq_class> acc;
    for (const auto& t : terms) {
        std::vector<int> e(k);
        for (int l = 0; l < k; ++l) e[((l + shift) % k + k) % k] = t.exponents[l];
        acc[e] += t.coefficient;
    }
    return collect(k, acc);
}

GkRepresentation build_Gk(int k, bool symmetrized) {
    if (k < 1 || k > 4) throw DomainError("build_Gk: k must be in 1..4, got " + std::to_string(k));
    std::vector<std::vector<int>> comps;
    std::vector<int> prefix;
    compositions(k, prefix, comps);

    std::map<std::vector<int>, mpq_class> acc;
    const mpq_class kfact = factorial(k);
    for (const auto& c : comps) {
        const int j = static_cast<int>(c.size());
        mpq_class coeff = kfact / j;
        for (int part : c) coeff /= factorial(part);
        if (j % 2 == 0) coeff = -coeff;
        std::vector<int> e(k, 0);
        std::copy(c.begin(), c.end(), e.begin());
        acc[e] += coeff;
    }
    GkRepresentation raw = collect(k, acc);
    if (!symmetrized) return raw;

    std::map<std::vector<int>, mpq_class> sym;
    for (int s = 0; s < k; ++s) {
        for (const auto& t : raw.rotated(s).terms) sym[t.exponents] += t.coefficient / k;
    }
    return collect(k, sym);
}

ExactPoly to_exact(const PolyPoly& p) {
    ExactPoly out = ExactPoly::with_budget(p.degree_budget());
    for (const auto& [e, c] : p.terms()) out.add_term(e, ExactComplex(mpq_class(c.real()), mpq_class(c.imag())));
    return out;
}

ExactComplex cumulant_exact_value(int k, const KernelSpec& spec, const ExactPoly& g, int rotation) {
    spec.validate();
    if (k < 1 || k > 3) throw DomainError("exact cumulant oracle supports k <= 3");
    if (spec.n > 8) throw CapacityError("exact cumulant oracle supports n <= 8");
    if (!is_real_poly(g)) throw DomainError("exact cumulant oracle needs a real-valued g");
    const int n = spec.n;

    // Orthogonal (unnormalized) basis T_n^r z^j and its Gram diagonal.
    std::vector<ExactPoly> psi;
    for (int r = spec.lowest_level(); r <= spec.highest_level(); ++r) {
        for (int j = 0; j < n; ++j) psi.push_back(apply_T(ExactPoly::zpow(j, 0), n, r));
    }
    const std::size_t dim = psi.size();
    std::vector<ExactComplex> gram(dim);
    for (std::size_t m = 0; m < dim; ++m) gram[m] = gaussian_inner(psi[m], psi[m], n);

    // M_e = A_e D^{-1} with (A_e)_{ab} = int g^e psi_b conj(psi_a) dmu_n.
    std::vector<ExactMatrix> mats(k + 1);
    ExactPoly gp = ExactPoly::constant(ExactComplex(1));
    for (int e = 1; e <= k; ++e) {
        gp = gp * g;
        ExactMatrix m(dim * dim);
        for (std::size_t b = 0; b < dim; ++b) {
            const ExactPoly gb = gp * psi[b];
            for (std::size_t a = 0; a < dim; ++a) {
                ExactComplex v = gaussian_inner(gb, psi[a], n);
                if (v.is_zero()) continue;
                v.re /= gram[b].re;
                v.im /= gram[b].re;
                m[a * dim + b] = std::move(v);
            }
        }
        mats[e] = std::move(m);
    }

    // Integral of each G_k term against the k-cycle of kernels is the trace
    // of the product of the M_{e_l} (M_0 = identity).
    GkRepresentation gk = build_Gk(k).rotated(rotation);
    ExactComplex total;
    for (const auto& t : gk.terms) {
        ExactMatrix prod;
        bool have = false;
        for (int e : t.exponents) {
            if (e == 0) continue;
            prod = have ? multiply(prod, mats[e], dim) : mats[e];
            have = true;
        }
        ExactComplex tr;
        if (have) {
            for (std::size_t i = 0; i < dim; ++i) tr += prod[i * dim + i];
        } else {
            tr = ExactComplex(static_cast<long>(dim));
        }
        total += tr * ExactComplex(t.coefficient);
    }
    return total;
}

CumulantReport cumulant_exact_smalln(int k, const KernelSpec& spec, const ExactPoly& g) {
    const ExactComplex v = cumulant_exact_value(k, spec, g);
    if (sgn(v.im) != 0) throw NumericalError("exact cumulant has a nonzero imaginary part");
    CumulantReport r;
    r.k = k;
    r.value = v.re.get_d();
    r.method = CumulantMethod::exact_oracle;
    r.spec = spec;
    return r;
}

CumulantReport cumulant_exact_smalln(int k, const KernelSpec& spec, const PolyPoly& g) {
    return cumulant_exact_smalln(k, spec, to_exact(g));
}

CrosstermResult verify_crossterms(int n, int i1, int i2, const ExactPoly& f1, const ExactPoly& f2) {
    if (n < 1 || n > 6) throw DomainError("verify_crossterms: n must be in 1..6");
    if (i1 < 0 || i1 > 3 || i2 < 0 || i2 > 3) throw DomainError("verify_crossterms: indices must be in 0..3");

    const ExactPoly2 k12 = ginibre_kernel_poly(n, 0, 1);  // K_n(z1, z2)
    const ExactPoly2 k21 = ginibre_kernel_poly(n, 1, 0);  // K_n(z2, z1)
    const ExactPoly2 g1 = relabel<2>(f1, {0});
    const ExactPoly2 g2 = relabel<2>(f2, {1});

    const ExactPoly2 p1 = apply_T_conj(apply_T(k12, n, i1, 0), n, i1, 1);
    const ExactPoly2 p2 = apply_T_conj(apply_T(k21, n, i2, 1), n, i2, 0);
    const ExactPoly2 d1 = apply_diffop(DiffOpSpec{i2, i1, n}, g1, 0);
    const ExactPoly2 d2 = apply_diffop(DiffOpSpec{i1, i2, n}, g2, 1);

    CrosstermResult r;
    r.lhs = gaussian_integral(g1 * g2 * p1 * p2, n);
    r.rhs = gaussian_integral(d1 * d2 * k12 * k21, n);
    r.diff = magnitude(r.lhs - r.rhs);
    r.passed = r.diff <= 1e-9 * std::max(magnitude(r.lhs), 1.0);
    return r;
}

std::vector<CrosstermCase> crossterm_lattice() {
    static const char* factors[] = {"re", "abs2", "harm(2)", "im", "rad(1,0.5)", "re*abs2"};
    std::vector<CrosstermCase> cases;
    for (int c = 0; c < 28; ++c) {
        cases.push_back({1 + c % 6, c % 4, (c / 4) % 4, factors[c % 6], factors[(c / 2 + 1) % 6]});
    }
    cases.push_back({2, 1, 1, "abs2", "abs2"});
    cases.push_back({3, 0, 1, "re", "re"});
    return cases;
}

}  // namespace polygin
