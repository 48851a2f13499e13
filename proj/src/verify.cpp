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

#include "polygin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "polygin/errors.hpp"
#include "polygin/kernels.hpp"
#include "polygin/polynomial.hpp"
#include "polygin/quadrature.hpp"
#include "polygin/sampler.hpp"
#include "polygin/statistics.hpp"
#include "polygin/testfn.hpp"

namespace polygin {

namespace {

using ExactPoly2 = Polynomial<ExactComplex, 2>;
using ExactPoly3 = Polynomial<ExactComplex, 3>;

class Draw {
  public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    cdouble in_disk(double radius) {
        return std::polar(radius * std::sqrt(uniform()), 2.0 * 3.141592653589793 * uniform());
    }

  private:
    std::mt19937_64 rng_;
};

ExactComplex small_complex(Draw& d) { return ExactComplex(mpq_class(d.integer(-5, 5)), mpq_class(d.integer(-5, 5))); }

ExactPoly random_analytic(Draw& d, int degree) {
    ExactPoly p;
    for (int a = 0; a <= degree; ++a) p.add_term({a, 0}, small_complex(d));
    return p;
}

ExactPoly random_poly(Draw& d, int degree, int terms) {
    ExactPoly p;
    for (int t = 0; t < terms; ++t) p.add_term({d.integer(0, degree), d.integer(0, degree)}, small_complex(d));
    return p;
}

CheckResult exact_check(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)};
}

CheckResult tolerance_check(std::string name, double error, double tol, std::string detail = {}) {
    return {std::move(name), error <= tol, error, tol, std::move(detail)};
}

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

PolyPoly basis_polynomial(const BasisFunction& f) {
    PolyPoly p = PolyPoly::with_budget(std::max(64, f.index() + f.level() + 1));
    for (const auto& m : f.monomials()) p.add_term({m.a, m.b}, cdouble(m.sign * std::exp(m.log_magnitude)));
    return p;
}

/// Exact kernel sum_m psi_m(z) conj(psi_m(w)) / ||psi_m||^2 with z in
/// variable zv and w in variable wv.
template <std::size_t V>
Polynomial<ExactComplex, V> exact_kernel(const KernelSpec& spec, std::size_t zv, std::size_t wv) {
    Polynomial<ExactComplex, V> k;
    for (int r = spec.lowest_level(); r <= spec.highest_level(); ++r) {
        for (int j = 0; j < spec.n; ++j) {
            const ExactPoly psi = apply_T(ExactPoly::zpow(j, 0), spec.n, r);
            const ExactComplex c = gaussian_inner(psi, psi, spec.n);
            std::array<std::size_t, 1> tz{zv}, tw{wv};
            auto term = relabel<V>(psi, tz) * relabel<V>(psi.conj(), tw);
            mpq_class inv = 1 / c.re;
            k += term * ExactComplex(inv);
        }
    }
    return k;
}

CheckResult orthonormality() {
    double worst = 0.0;
    for (int n : {1, 2, 5}) {
        for (int j = 0; j <= 8; ++j) {
            for (int k = 0; k <= 8; ++k) {
                const cdouble v = gaussian_inner(basis_monomial(j, n), basis_monomial(k, n), n);
                worst = std::max(worst, std::abs(v - cdouble(j == k ? 1.0 : 0.0)));
            }
        }
    }
    return tolerance_check("basis orthonormality (j,k <= 8, n in {1,2,5})", worst, 1e-12);
}

CheckResult raising_isometry() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 5 && ok; ++n) {
        for (int r = 0; r <= 4 && ok; ++r) {
            mpz_class nr = 1, rf = 1;
            for (int i = 0; i < r; ++i) nr *= n;
            for (int i = 2; i <= r; ++i) rf *= i;
            for (int i = 0; i <= 6 && ok; ++i) {
                const ExactPoly ti = apply_T(ExactPoly::zpow(i, 0), n, r);
                mpz_class ni = 1, fi = 1;
                for (int t = 0; t <= i; ++t) ni *= n;
                for (int t = 2; t <= i; ++t) fi *= t;
                for (int j = 0; j <= 6 && ok; ++j) {
                    const ExactPoly tj = apply_T(ExactPoly::zpow(j, 0), n, r);
                    ExactComplex v = gaussian_inner(ti, tj, n);
                    // <T^r e_i, T^r e_j> with e_i = sqrt(n^{i+1}/i!) z^i; only i = j survives.
                    const ExactComplex expect = i == j ? ExactComplex(mpq_class(nr * rf)) : ExactComplex();
                    mpq_class scale(ni, fi);
                    scale.canonicalize();
                    if (i == j) v *= ExactComplex(scale);
                    if (!(v == expect)) {
                        ok = false;
                        std::ostringstream os;
                        os << "n=" << n << " r=" << r << " i=" << i << " j=" << j << ": " << v;
                        detail = os.str();
                    }
                }
            }
        }
    }
    return exact_check("raising isometry <T^r e_i, T^r e_j> = n^r r! delta_ij (exact)", ok, detail);
}

CheckResult lowering() {
    Draw d(11);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 4 && ok; ++trial) {
        const ExactPoly f = random_analytic(d, 8);
        for (int n = 1; n <= 5 && ok; ++n) {
            for (int r = 0; r <= 4 && ok; ++r) {
                const ExactPoly tr = apply_T(f, n, r);
                for (int j = 0; j <= r && ok; ++j) {
                    ExactPoly lhs = tr;
                    for (int t = 0; t < j; ++t) lhs = wirtinger(lhs, Wirtinger::dbar);
                    long long c = falling_factorial(r, j);
                    for (int t = 0; t < j; ++t) c *= n;
                    const ExactPoly rhs = apply_T(f, n, r - j) * ExactComplex(static_cast<long>(c));
                    if (!(lhs == rhs)) {
                        ok = false;
                        detail = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " j=" + std::to_string(j);
                    }
                }
            }
        }
    }
    return exact_check("lowering dbar^j T^r f = (r)_j n^j T^{r-j} f (exact)", ok, detail);
}

CheckResult partial_integration() {
    Draw d(12);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        const int n = 1 + trial % 5;
        const ExactPoly f = random_poly(d, 4, 5);
        const ExactPoly g = random_poly(d, 4, 5);
        const ExactComplex lhs = gaussian_integral(f * apply_T(g, n, 1), n);
        const ExactComplex rhs = gaussian_integral(wirtinger(f, Wirtinger::d) * g, n);
        if (!(lhs == rhs)) {
            ok = false;
            detail = "trial " + std::to_string(trial);
        }
    }
    return exact_check("partial integration int f T_n g = int (df) g (exact)", ok, detail);
}

CheckResult reproducing() {
    Draw d(13);
    double worst = 0.0;
    for (int n : {1, 3, 6, 10}) {
        for (int q = 1; q <= 3; ++q) {
            for (Variant v : {Variant::full, Variant::pure}) {
                const KernelSpec spec{n, q, v};
                const auto fns = basis_functions(spec);
                std::vector<PolyPoly> polys;
                for (const auto& f : fns) polys.push_back(basis_polynomial(f));
                PolyPoly p;
                for (const auto& b : polys) p += b * cdouble(d.uniform() - 0.5, d.uniform() - 0.5);
                for (int t = 0; t < 20; ++t) {
                    const cdouble w = d.in_disk(1.0);
                    PolyPoly kw;
                    for (std::size_t m = 0; m < fns.size(); ++m) kw += polys[m] * std::conj(fns[m].raw(w));
                    const cdouble lhs = gaussian_inner(p, kw, n);
                    const cdouble rhs = p(w);
                    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-3));
                }
            }
        }
    }
    return tolerance_check("reproducing property <p, K_w> = p(w) (n <= 10, q <= 3)", worst, 1e-9);
}

CheckResult idempotence() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 3 && ok; ++n) {
        for (int q = 1; q <= 3 && ok; ++q) {
            for (Variant v : {Variant::full, Variant::pure}) {
                const KernelSpec spec{n, q, v};
                const auto kzu = exact_kernel<3>(spec, 0, 1);
                const auto kuw = exact_kernel<3>(spec, 1, 2);
                const auto kzw = exact_kernel<3>(spec, 0, 2);
                if (!(integrate_variable(kzu * kuw, 1, n) == kzw)) {
                    ok = false;
                    detail = spec.to_string();
                    break;
                }
            }
        }
    }
    return exact_check("projection idempotence int K(z,u) K(u,w) dmu(u) = K(z,w) (exact)", ok, detail);
}

CheckResult decomposition() {
    Draw d(14);
    double worst = 0.0;
    for (int n : {1, 5, 20, 60}) {
        for (int q = 1; q <= 4; ++q) {
            std::vector<KernelEvaluator> levels;
            for (int r = 1; r <= q; ++r) levels.emplace_back(KernelSpec::pure(n, r));
            const KernelEvaluator full(KernelSpec::full(n, q), false);
            for (int t = 0; t < 50; ++t) {
                const cdouble z = d.in_disk(1.5), w = d.in_disk(1.5);
                cdouble sum = 0.0;
                for (const auto& e : levels) sum += e.raising_path(z, w);
                const cdouble direct = full.explicit_path(z, w);
                const double scale = std::sqrt(full.basis().intensity(std::abs(z)) * full.basis().intensity(std::abs(w)));
                worst = std::max(worst, std::abs(sum - direct) / scale);
            }
        }
    }
    return tolerance_check("kernel decomposition K_{n,q} = sum_r K_{delta;n,r}", worst, 1e-9);
}

CheckResult laguerre_diffop() {
    Draw d(15);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 6 && ok; ++trial) {
        const ExactPoly p = trial == 0 ? ExactPoly::zpow(2, 2) : random_poly(d, 6, 6);
        for (int n = 1; n <= 4 && ok; ++n) {
            for (int r = 0; r <= 4 && ok; ++r) {
                const ExactPoly lhs = apply_diffop(DiffOpSpec{r, r, n}, p);
                // n^r r! L_r^0(-Delta/n) = sum_j C(r,j) r!/j! n^{r-j} Delta^j
                ExactPoly rhs;
                ExactPoly lap = p;
                for (int j = 0; j <= r; ++j) {
                    mpz_class num = static_cast<long>(binomial(r, j));
                    for (int t = j + 1; t <= r; ++t) num *= t;  // r!/j!
                    for (int t = 0; t < r - j; ++t) num *= n;
                    rhs += lap * ExactComplex(mpq_class(num));
                    lap = laplacian(lap);
                }
                if (!(lhs == rhs)) {
                    ok = false;
                    detail = "n=" + std::to_string(n) + " r=" + std::to_string(r);
                }
            }
        }
    }
    return exact_check("D_{r,r,n} = n^r r! L_r^0(-Delta/n) with Delta = d dbar (exact)", ok, detail);
}

CheckResult laplacian_expansion() {
    Draw d(16);
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
        const ExactPoly h = random_poly(d, 4, 4);
        const ExactPoly g = h + h.conj();
        const ExactPoly2 gz = relabel<2>(g, {0});
        const ExactPoly2 gw = relabel<2>(g, {1});
        const ExactPoly2 diff = gz - gw;
        const ExactPoly2 sq = diff * diff;
        const ExactPoly2 lhs = laplacian(sq, 0) + laplacian(sq, 1);
        const ExactPoly2 dz = wirtinger(gz, Wirtinger::dbar, 0);
        const ExactPoly2 dw = wirtinger(gw, Wirtinger::dbar, 1);
        const ExactPoly2 rhs = (laplacian(gz, 0) - laplacian(gw, 1)) * diff * ExactComplex(2) +
                               dz * dz.conj() * ExactComplex(2) + dw * dw.conj() * ExactComplex(2);
        ok = lhs == rhs;
    }
    return exact_check("(D_z + D_w)(g(z)-g(w))^2 expansion with Delta = d dbar (exact)", ok);
}

CheckResult gk_diagonal() {
    bool ok = true;
    for (int k = 2; k <= 4; ++k) {
        for (bool sym : {false, true}) {
            const auto gk = build_Gk(k, sym);
            const std::vector<mpq_class> same(k, mpq_class(7, 3));
            ok = ok && sgn(gk.evaluate_exact(same)) == 0;
        }
    }
    return exact_check("G_k vanishes on the diagonal, k = 2..4 (exact)", ok);
}

}  // namespace

Suite parse_suite(std::string_view name) {
    if (name == "identities") return Suite::identities;
    if (name == "kernels") return Suite::kernels;
    if (name == "cumulants") return Suite::cumulants;
    if (name == "all") return Suite::all;
    throw DomainError("unknown suite '" + std::string(name) + "' (identities, kernels, cumulants, all)");
}

std::vector<CheckResult> identity_checks() {
    std::vector<CheckResult> out{orthonormality(), raising_isometry(), lowering(), partial_integration(),
                                 reproducing(), idempotence(), decomposition(), laguerre_diffop(),
                                 laplacian_expansion(), gk_diagonal()};
    for (const auto& c : crossterm_lattice()) {
        const auto f1 = to_exact(TestFunction::parse(c.f1).to_polynomial());
        const auto f2 = to_exact(TestFunction::parse(c.f2).to_polynomial());
        const auto r = verify_crossterms(c.n, c.i1, c.i2, f1, f2);
        std::ostringstream name;
        name << "crossterms n=" << c.n << " i1=" << c.i1 << " i2=" << c.i2 << " F=(" << c.f1 << ")(" << c.f2 << ")";
        std::ostringstream detail;
        detail << "lhs=" << r.lhs << " rhs=" << r.rhs;
        out.push_back({name.str(), r.passed, r.diff, 1e-9, detail.str()});
    }
    return out;
}

double kernel_path_discrepancy(int n, int q, bool pure, int pairs, double radius, unsigned long long seed) {
    const KernelSpec spec = pure ? KernelSpec::pure(n, q) : KernelSpec::full(n, q);
    const KernelEvaluator ev(spec);
    Draw d(seed);
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const cdouble z = d.in_disk(radius), w = d.in_disk(radius);
        const cdouble a = ev.basis_path(z, w);
        const double dz = ev.basis().intensity(std::abs(z)), dw = ev.basis().intensity(std::abs(w));
        worst = std::max(worst, kernel_relative_difference(a, ev.explicit_path(z, w), dz, dw));
        worst = std::max(worst, kernel_relative_difference(a, ev.raising_path(z, w), dz, dw));
    }
    return worst;
}

std::vector<CheckResult> kernel_checks() {
    std::vector<CheckResult> out;
    for (int n : {10, 50, 100}) {
        for (int q = 1; q <= 4; ++q) {
            for (bool pure : {false, true}) {
                const double e = kernel_path_discrepancy(n, q, pure, 1000, 2.0, 1000 + 10 * n + q);
                out.push_back(tolerance_check("path agreement n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                                  (pure ? " pure" : " full"),
                                              e, 1e-8));
            }
        }
    }

    Draw d(21);
    double herm = 0.0;
    for (const auto& spec : {KernelSpec::full(10, 3), KernelSpec::pure(50, 2)}) {
        const KernelEvaluator ev(spec, false);
        for (int i = 0; i < 200; ++i) {
            const cdouble z = d.in_disk(2.0), w = d.in_disk(2.0);
            const double scale = std::sqrt(ev.basis().intensity(std::abs(z)) * ev.basis().intensity(std::abs(w)));
            herm = std::max(herm, std::abs(ev.basis_path(z, w) - std::conj(ev.basis_path(w, z))) / scale);
        }
    }
    out.push_back(tolerance_check("Hermitian symmetry K(z,w) = conj K(w,z)", herm, 1e-12));

    double min_eig = 0.0;
    for (const auto& spec : {KernelSpec::full(32, 2), KernelSpec::pure(20, 3), KernelSpec::ginibre(40)}) {
        const KernelEvaluator ev(spec, false);
        std::vector<cdouble> pts = DppSampler(spec).sample(99).points;
        pts.resize(std::min<std::size_t>(pts.size(), 30));
        while (pts.size() < 40) pts.push_back(d.in_disk(1.2));
        Eigen::MatrixXcd gram(pts.size(), pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) gram(i, j) = ev.basis_path(pts[i], pts[j]);
        }
        const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gram).eigenvalues().minCoeff();
        min_eig = std::min(min_eig, lo / spec.n);
    }
    out.push_back(tolerance_check("Gram matrix positive semidefinite (40 points)", -min_eig, 1e-8));

    double excess = 0.0;
    for (const auto& spec : {KernelSpec::ginibre(50), KernelSpec::full(50, 3), KernelSpec::pure(50, 3)}) {
        const BasisTable t(spec);
        const double cap = double(spec.n) * spec.q;
        for (int i = 0; i <= 400; ++i) excess = std::max(excess, t.intensity(2.0 * i / 400) / cap - 1.0);
    }
    out.push_back(tolerance_check("diagonal bound K(z,z) e^{-n|z|^2} <= n q", excess, 1e-9));

    double norm_err = 0.0;
    for (int n : {1, 10, 100, 400}) {
        for (int q = 1; q <= 3; ++q) {
            for (Variant v : {Variant::full, Variant::pure}) {
                const KernelSpec spec{n, q, v};
                const BasisTable t(spec);
                const auto grid = QuadratureGrid::for_spec(spec);
                const double total = grid.integrate_radial([&](double r) { return t.intensity(r); });
                norm_err = std::max(norm_err, std::abs(total - spec.dimension()) / spec.dimension());
            }
        }
    }
    out.push_back(tolerance_check("intensity integrates to the dimension", norm_err, 1e-9));

    // Only T_{n,r} e_r is nonzero at the origin, and it exists for r < n.
    double origin = 0.0;
    for (int n : {1, 2, 3, 7, 64}) {
        for (int q = 1; q <= 4; ++q) {
            const double expect = double(n) * std::min(n, q);
            origin = std::max(origin, std::abs(intensity(KernelSpec::full(n, q), 0.0) - expect) / expect);
        }
    }
    out.push_back(tolerance_check("full intensity at 0 equals n min(n, q)", origin, 1e-12));
    return out;
}

std::vector<CheckResult> cumulant_checks() {
    std::vector<CheckResult> out;
    for (const char* expr : {"re", "abs2", "harm(2)"}) {
        const TestFunction g = TestFunction::parse(expr);
        const PolyPoly gp = g.to_polynomial();
        double worst = 0.0;
        bool nonneg = true;
        for (int n = 1; n <= 6; ++n) {
            for (int q = 1; q <= 3; ++q) {
                for (Variant v : {Variant::full, Variant::pure}) {
                    const KernelSpec spec{n, q, v};
                    const double exact = cumulant_exact_smalln(2, spec, gp).value;
                    const double quad = variance_quadrature(spec, g, QuadratureGrid::for_spec(spec)).value;
                    worst = std::max(worst, std::abs(quad - exact) / std::abs(exact));
                    nonneg = nonneg && exact >= 0.0;
                }
            }
        }
        out.push_back(tolerance_check(std::string("quadrature variance = exact C_2, g = ") + expr, worst, 1e-6));
        out.push_back(exact_check(std::string("C_2 >= 0, g = ") + expr, nonneg));
    }

    bool cyclic = true;
    for (int n = 1; n <= 3; ++n) {
        for (const auto& spec : {KernelSpec::full(n, 2), KernelSpec::pure(n, 2)}) {
            const ExactPoly g = to_exact(TestFunction::parse("re+abs2").to_polynomial());
            const ExactComplex base = cumulant_exact_value(3, spec, g, 0);
            for (int s = 1; s < 3; ++s) cyclic = cyclic && cumulant_exact_value(3, spec, g, s) == base;
        }
    }
    out.push_back(exact_check("k=3 exact cumulant invariant under cyclic relabeling", cyclic));

    // Kostlan: for Ginibre, n|lambda|^2 are independent Gamma(j), j = 1..n,
    // so C_k(sum |lambda|^2) = (k-1)! sum_j j / n^k.
    bool kostlan = true;
    std::string detail;
    const ExactPoly abs2 = ExactPoly::zpow(1, 1);
    for (int n = 1; n <= 5; ++n) {
        for (int k = 1; k <= 3; ++k) {
            mpz_class kf = 1, nk = 1;
            for (int t = 2; t < k; ++t) kf *= t;
            for (int t = 0; t < k; ++t) nk *= n;
            mpq_class expect(kf * (n * (n + 1) / 2), nk);
            expect.canonicalize();
            const ExactComplex got = cumulant_exact_value(k, KernelSpec::ginibre(n), abs2);
            if (!(got == ExactComplex(expect))) {
                kostlan = false;
                detail = "n=" + std::to_string(n) + " k=" + std::to_string(k);
            }
        }
    }
    out.push_back(exact_check("Ginibre C_k(sum |z|^2) = (k-1)! n(n+1) / (2 n^k) (exact)", kostlan, detail));
    return out;
}

std::vector<CheckResult> run_suite(Suite suite) {
    switch (suite) {
        case Suite::identities: return identity_checks();
        case Suite::kernels: return kernel_checks();
        case Suite::cumulants: return cumulant_checks();
        case Suite::all: {
            auto out = identity_checks();
            for (auto& c : kernel_checks()) out.push_back(std::move(c));
            for (auto& c : cumulant_checks()) out.push_back(std::move(c));
            return out;
        }
    }
    return {};
}

}  // namespace polygin
