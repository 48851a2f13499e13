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
#include <functional>

#include "polygin/errors.hpp"
#include "polygin/quadrature.hpp"
#include "polygin/theory.hpp"

using namespace polygin;

namespace {

double bump_ref(double rho) {
    auto psi = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
    const double t = (0.7 - rho) / 0.2;
    if (t >= 1) return 1.0;
    if (t <= 0) return 0.0;
    return psi(t) / (psi(t) + psi(1 - t));
}

double bump_ref_prime(double rho) {
    const double h = 1e-6;
    return (bump_ref(rho + h) - bump_ref(rho - h)) / (2 * h);
}

// Composite Simpson on [a, b] with m (even) intervals.
double simpson(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
    return s * h / 3;
}

// Dirichlet seminorms of the bump and of Re(z) * bump from the radial
// reductions |dbar b|^2 = b'^2/4 and, averaged over the angle,
// |dbar(x b)|^2 = (b^2 + r b b' + r^2 b'^2 / 2) / 4, against dA = 2 r dr.
double h1_bump_oracle() {
    return simpson([](double r) { return 0.5 * r * std::pow(bump_ref_prime(r), 2); }, 0.5, 0.7, 20000);
}

double h1_bump_harm1_oracle() {
    auto f = [](double r) {
        const double b = bump_ref(r), db = bump_ref_prime(r);
        return 0.5 * r * (b * b + r * b * db + r * r * db * db / 2);
    };
    return simpson(f, 0.0, 0.5, 2000) + simpson(f, 0.5, 0.7, 20000);
}

// Frozen from the oracles above.
constexpr double kH1Bump = 2.45740587209205;
constexpr double kH1BumpHarm1 = 0.445145979897911;

}  // namespace

TEST_CASE("independent oracles reproduce the frozen seminorms") {
    CHECK(h1_bump_oracle() == doctest::Approx(kH1Bump).epsilon(1e-8));
    CHECK(h1_bump_harm1_oracle() == doctest::Approx(kH1BumpHarm1).epsilon(1e-8));
}

TEST_CASE("Dirichlet seminorm") {
    CHECK(h1_seminorm(TestFunction::parse("bump(0.5,0.2)")) == doctest::Approx(kH1Bump).epsilon(1e-12));
    CHECK(h1_seminorm(TestFunction::parse("bump(0.5,0.2)*harm(1)")) ==
          doctest::Approx(kH1BumpHarm1).epsilon(1e-12));
    // dbar Re z = 1/2; dbar Re z^2 = conj z; dbar 1.5|z|^2 = 1.5 z.
    CHECK(h1_seminorm(TestFunction::parse("re")) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(h1_seminorm(TestFunction::parse("harm(2)")) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(h1_seminorm(TestFunction::parse("1.5*rad(0,1)")) == doctest::Approx(1.125).epsilon(1e-13));
    CHECK(h1_seminorm(TestFunction::constant(4.0)) == doctest::Approx(0.0));
}

TEST_CASE("boundary seminorm of harmonics is k/2") {
    for (int k : {1, 2, 5, 17}) {
        CHECK(h_half_seminorm(TestFunction::parse("harm(" + std::to_string(k) + ")")) ==
              doctest::Approx(k / 2.0).epsilon(1e-12));
    }
    CHECK(h_half_seminorm(TestFunction::parse("re + harm(3)")) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(h_half_seminorm(TestFunction::parse("abs2")) == doctest::Approx(0.0).scale(1.0));
    CHECK(h_half_seminorm(TestFunction::parse("bump(0.5,0.2)*harm(1)")) == 0.0);
    CHECK_THROWS(h_half_seminorm(TestFunction::parse("harm(3)"), 8));
}

TEST_CASE("disk integral") {
    CHECK(disk_integral(TestFunction::parse("abs2")) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(disk_integral(TestFunction::parse("harm(2)")) == doctest::Approx(0.0).scale(1.0));
    const double oracle = simpson([](double r) { return 2 * r * bump_ref(r); }, 0.0, 0.5, 200) +
                          simpson([](double r) { return 2 * r * bump_ref(r); }, 0.5, 0.7, 20000);
    CHECK(disk_integral(TestFunction::parse("bump(0.5,0.2)")) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("angular Fourier coefficients") {
    const auto c = angular_fourier(TestFunction::parse("harm(2)"), 0.5, 64, 3);
    REQUIRE(c.size() == 7);
    CHECK(std::abs(c[3 + 2] - 0.125) < 1e-15);
    CHECK(std::abs(c[3 - 2] - 0.125) < 1e-15);
    CHECK(std::abs(c[3]) < 1e-15);
}

TEST_CASE("variance predictions") {
    const TestFunction re = TestFunction::parse("re");
    const auto g = predicted_variance(KernelSpec::ginibre(100), re);
    CHECK(g.total == doctest::Approx(0.5));
    CHECK_FALSE(g.warning.empty());

    const auto p = predicted_variance(KernelSpec::pure(100, 3), re);
    CHECK(p.total == doctest::Approx(5 * 0.25 + 0.25));
    CHECK(p.bulk_coeff == 5.0);
    CHECK(p.boundary_coeff == 1.0);

    const auto f = predicted_variance(KernelSpec::full(100, 3), re);
    CHECK(f.total == doctest::Approx(3 * (0.25 + 0.25)));
    REQUIRE(f.per_level.size() == 3);
    CHECK(f.per_level[2] == doctest::Approx(1.5));

    const auto b = predicted_variance(KernelSpec::pure(400, 2), TestFunction::parse("bump(0.5,0.2)*harm(1)"));
    CHECK(b.total == doctest::Approx(3 * kH1BumpHarm1).epsilon(1e-12));
    CHECK(b.warning.empty());

    // Without a boundary term the full prediction is the mean of the pure levels.
    const auto fb = predicted_variance(KernelSpec::full(400, 3), TestFunction::parse("bump(0.5,0.2)*harm(1)"));
    REQUIRE(fb.per_level.size() == 3);
    CHECK((fb.per_level[0] + fb.per_level[1] + fb.per_level[2]) / 3 == doctest::Approx(fb.total));
}

TEST_CASE("Gauss-Legendre is exact for polynomials of degree 2m-1") {
    const GaussRule r = gauss_legendre(5, -1.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 9);
    CHECK(s == doctest::Approx((std::pow(2.0, 10) - 1.0) / 10).epsilon(1e-14));
}

TEST_CASE("quadrature grid") {
    CHECK(QuadratureGrid::default_rmax(16) == doctest::Approx(3.0));
    CHECK(QuadratureGrid::default_rmax(400) == doctest::Approx(2.0));
    const QuadratureGrid g = QuadratureGrid::make(160, 512, 2.0, {0.5, 0.7, 3.0, -1.0});
    CHECK(g.radii.size() == 160);
    CHECK(g.integrate_radial([](double) { return 1.0; }) == doctest::Approx(4.0).epsilon(1e-14));
    int inner = 0, middle = 0;
    for (double r : g.radii) {
        inner += r < 0.5;
        middle += r > 0.5 && r < 0.7;
    }
    CHECK(middle >= 16);
    CHECK(inner >= 16);
    const QuadratureGrid f = g.refined();
    CHECK(f.radii.size() == 240);
    CHECK(f.ntheta == 1024);
    CHECK_THROWS_AS(QuadratureGrid::make(4, 512, 2.0), DomainError);
    CHECK_THROWS_AS(QuadratureGrid::make(160, 500, 2.0), DomainError);
    CHECK_THROWS_AS(QuadratureGrid::make(160, 512, 0.0), DomainError);
}
