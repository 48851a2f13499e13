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

#include <doctest.h>

#include <cmath>
#include <random>

#include "polygin/errors.hpp"
#include "polygin/statistics.hpp"

using namespace polygin;

namespace {

// Kostlan: the |z_j|^2 of the Ginibre ensemble are independent Gamma(j, n),
// j = 1..n, and Gamma(a, rate n) has k-th cumulant a (k-1)!/n^k.
mpq_class kostlan_cumulant(int k, int n) {
    mpq_class per_shape = 1;
    for (int i = 2; i < k; ++i) per_shape *= i;
    for (int i = 0; i < k; ++i) per_shape /= n;
    mpq_class total = 0;
    for (int j = 1; j <= n; ++j) total += per_shape * j;
    total.canonicalize();
    return total;
}

ExactPoly abs2_poly() { return ExactPoly::zpow(1, 1); }

// Unbiased k-statistics from power sums.
struct PowerSumK {
    double k2, k3, k4;
};

PowerSumK k_from_power_sums(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double v : x) {
        s1 += v;
        s2 += v * v;
        s3 += v * v * v;
        s4 += v * v * v * v;
    }
    const double k2 = (n * s2 - s1 * s1) / (n * (n - 1));
    const double k3 = (2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / (n * (n - 1) * (n - 2));
    const double k4 = (-6 * std::pow(s1, 4) + 12 * n * s1 * s1 * s2 - 3 * n * (n - 1) * s2 * s2 -
                       4 * n * (n + 1) * s1 * s3 + n * n * (n + 1) * s4) /
                      (n * (n - 1) * (n - 2) * (n - 3));
    return {k2, k3, k4};
}

}  // namespace

TEST_CASE("Kostlan oracle values") {
    // (k-1)! n(n+1) / (2 n^k)
    CHECK(kostlan_cumulant(2, 5) == mpq_class(3, 5));
    CHECK(kostlan_cumulant(3, 5) == mpq_class(6, 25));
}

TEST_CASE("exact small-n cumulants of sum |z|^2 match Kostlan") {
    for (int n = 1; n <= 6; ++n) {
        for (int k = 1; k <= 3; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            ExactComplex v = cumulant_exact_value(k, KernelSpec::ginibre(n), abs2_poly());
            v.re.canonicalize();
            CHECK(v == ExactComplex(kostlan_cumulant(k, n)));
        }
    }
}

TEST_CASE("exact cumulants are invariant under cyclic relabeling") {
    const ExactPoly g = abs2_poly() + ExactPoly::zpow(1, 0) + ExactPoly::zpow(0, 1);
    const auto spec = KernelSpec::full(3, 2);
    const ExactComplex base = cumulant_exact_value(3, spec, g, 0);
    CHECK(cumulant_exact_value(3, spec, g, 1) == base);
    CHECK(cumulant_exact_value(3, spec, g, 2) == base);
    CHECK_THROWS_AS(cumulant_exact_value(4, spec, g), DomainError);
    CHECK_THROWS_AS(cumulant_exact_value(2, KernelSpec::full(9, 1), g), CapacityError);
}

TEST_CASE("quadrature variance matches the exact oracle") {
    for (const char* e : {"re", "abs2", "harm(2)"}) {
        const TestFunction g = TestFunction::parse(e);
        for (KernelSpec s : {KernelSpec::ginibre(4), KernelSpec::full(5, 2), KernelSpec::pure(3, 3)}) {
            CAPTURE(std::string(e));
            CAPTURE(s.to_string());
            const auto exact = cumulant_exact_smalln(2, s, g.to_polynomial());
            const auto quad = variance_quadrature(s, g, QuadratureGrid::for_spec(s));
            CHECK(exact.method == CumulantMethod::exact_oracle);
            CHECK(quad.converged);
            CHECK(quad.value == doctest::Approx(exact.value).epsilon(1e-10));
        }
    }
}

TEST_CASE("quadrature variance of sum |z|^2 at moderate n") {
    const int n = 40;
    const auto s = KernelSpec::ginibre(n);
    const auto r = variance_quadrature(s, TestFunction::parse("abs2"), QuadratureGrid::for_spec(s));
    CHECK(r.value == doctest::Approx(kostlan_cumulant(2, n).get_d()).epsilon(1e-10));
    CHECK(r.richardson_gap < 1e-10);
}

TEST_CASE("expected trace") {
    const auto s = KernelSpec::ginibre(10);
    const auto grid = QuadratureGrid::for_spec(s);
    CHECK(expected_trace(s, TestFunction::parse("abs2"), grid) == doctest::Approx(5.5).epsilon(1e-12));
    const auto f = KernelSpec::full(10, 3);
    CHECK(expected_trace(f, TestFunction::constant(1), QuadratureGrid::for_spec(f)) ==
          doctest::Approx(30.0).epsilon(1e-12));
    CHECK_THROWS_AS(expected_trace(f, TestFunction::constant(1), QuadratureGrid::make(64, 64, 1.0)), DomainError);
}

TEST_CASE("G_k compositions") {
    const auto g1 = build_Gk(1);
    REQUIRE(g1.terms.size() == 1);
    CHECK(g1.terms[0].coefficient == 1);

    // G_2 = g1^2 - g1 g2
    const auto g2 = build_Gk(2);
    const double v[] = {3.0, 5.0, 7.0, 11.0};
    CHECK(g2.evaluate(std::span(v, 2)) == doctest::Approx(9.0 - 15.0));

    // G_3 = g1^3 - 3/2 (g1^2 g2 + g1 g2^2) + 2 g1 g2 g3
    const auto g3 = build_Gk(3);
    CHECK(g3.evaluate(std::span(v, 3)) == doctest::Approx(27.0 - 1.5 * (45.0 + 75.0) + 2 * 105.0));

    for (int k = 2; k <= 4; ++k) {
        for (bool sym : {false, true}) {
            const double same[] = {1.7, 1.7, 1.7, 1.7};
            CHECK(build_Gk(k, sym).evaluate(std::span(same, k)) == doctest::Approx(0.0).scale(1.0));
        }
    }
    // Symmetrizing keeps the cyclic average, so a cyclic sum is unchanged.
    for (int k = 2; k <= 4; ++k) {
        double raw = 0, sym = 0;
        const auto a = build_Gk(k), b = build_Gk(k, true);
        for (int s = 0; s < k; ++s) {
            raw += a.rotated(s).evaluate(std::span(v, k));
            sym += b.rotated(s).evaluate(std::span(v, k));
        }
        CHECK(raw == doctest::Approx(sym));
    }
    CHECK_THROWS_AS(build_Gk(0), DomainError);
    CHECK_THROWS_AS(build_Gk(5), DomainError);
}

TEST_CASE("partial-integration lattice") {
    const auto lattice = crossterm_lattice();
    CHECK(lattice.size() == 30);
    for (const auto& c : lattice) {
        CHECK(c.n <= 6);
        CHECK(c.i1 <= 3);
        CHECK(c.i2 <= 3);
    }
    const auto r = verify_crossterms(2, 1, 2, ExactPoly::zpow(1, 0), ExactPoly::zpow(0, 1) + ExactPoly::zpow(1, 1));
    CHECK(r.passed);
    CHECK(r.lhs == r.rhs);
}

TEST_CASE("k-statistics agree with the power-sum formulas") {
    std::mt19937_64 rng(3);
    std::gamma_distribution<double> gd(2.0, 1.5);
    std::vector<double> x(500);
    for (double& v : x) v = gd(rng);
    const auto ref = k_from_power_sums(x);
    const KStatistics s = k_statistics(x);
    CHECK(s.count == 500);
    CHECK(s.k2 == doctest::Approx(ref.k2).epsilon(1e-10));
    CHECK(s.k3 == doctest::Approx(ref.k3).epsilon(1e-9));
    CHECK(s.k4 == doctest::Approx(ref.k4).epsilon(1e-8));
    CHECK(s.se_k2 > 0.0);
    CHECK(s.skewness == doctest::Approx(ref.k3 / std::pow(ref.k2, 1.5)).epsilon(1e-9));
    // Gamma(2) is visibly skewed: 2/sqrt(2) = 1.41.
    CHECK(s.skewness > 1.0);
    const double four[] = {1, 2, 3, 4};
    CHECK_NOTHROW(k_statistics(four));
    CHECK_THROWS_AS(k_statistics(std::span(four, 3)), DomainError);
}

TEST_CASE("KS distance of normal quantiles is small") {
    std::vector<double> x;
    for (int i = 1; i <= 999; ++i) {
        // Inverse normal CDF by bisection on erfc.
        const double p = i / 1000.0;
        double lo = -10, hi = 10;
        for (int it = 0; it < 100; ++it) {
            const double mid = (lo + hi) / 2;
            (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
        }
        x.push_back(lo);
    }
    CHECK(k_statistics(x).ks_distance < 0.01);
}

TEST_CASE("Monte Carlo cumulants of the Ginibre sum |z|^2") {
    const int n = 5;
    const auto s = KernelSpec::ginibre(n);
    const auto mc = mc_cumulant_report(s, TestFunction::parse("abs2"), seed_range(100, 2000), 3);
    REQUIRE(mc.cumulants.size() == 3);
    CHECK(mc.cumulants[0].method == CumulantMethod::mc);
    for (int k = 1; k <= 3; ++k) {
        const auto& c = mc.cumulants[k - 1];
        CHECK(std::abs(c.value - kostlan_cumulant(k, n).get_d()) < 4 * c.std_error);
    }
    CHECK_THROWS_AS(mc_cumulant_report(s, TestFunction::parse("abs2"), seed_range(0, 199)), DomainError);
    CHECK_THROWS_AS(mc_cumulant_report(s, TestFunction::parse("abs2"), seed_range(0, 200), 5), DomainError);
}

TEST_CASE("linear statistic and seeds") {
    PointSample p;
    p.points = {{1, 0}, {0, 2}, {-1, 1}};
    CHECK(linear_statistic(p, TestFunction::parse("abs2")) == doctest::Approx(1 + 4 + 2));
    CHECK(seed_range(7, 3) == std::vector<std::uint64_t>{7, 8, 9});
    CHECK(method_name(CumulantMethod::exact_oracle) == "exact_oracle");
}
