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

#include "polygin/errors.hpp"
#include "polygin/polynomial.hpp"

using namespace polygin;

namespace {

ExactPoly ez(int a, int b) { return ExactPoly::zpow(a, b); }

mpq_class fact(int k) {
    mpq_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("gaussian moments are a!/n^(a+1) against exp(-n|z|^2) dA") {
    for (int n : {1, 2, 5}) {
        for (int a = 0; a <= 6; ++a) {
            mpq_class expect = fact(a);
            for (int i = 0; i <= a; ++i) expect /= n;
            CHECK(gaussian_integral(ez(a, a), n) == ExactComplex(expect));
        }
        // Unequal exponents integrate to zero by rotation invariance.
        CHECK(gaussian_integral(ez(3, 1), n).is_zero());
    }
}

TEST_CASE("wirtinger derivatives of monomials") {
    const ExactPoly p = ez(3, 2);
    CHECK(wirtinger(p, Wirtinger::d) == ez(2, 2) * ExactComplex(3));
    CHECK(wirtinger(p, Wirtinger::dbar) == ez(3, 1) * ExactComplex(2));
    CHECK(laplacian(p) == ez(2, 1) * ExactComplex(6));
    CHECK(wirtinger(ez(0, 4), Wirtinger::d).is_zero());
}

TEST_CASE("raising operator norms n^r r! j!/n^(j+1) on monomials") {
    // ||T^r z^j||^2 = n^r r! ||z^j||^2 with ||z^j||^2 = j!/n^(j+1).
    for (int n : {1, 3}) {
        for (int j = 0; j <= 3; ++j) {
            for (int r = 0; r <= 3; ++r) {
                const ExactPoly t = apply_T(ez(j, 0), n, r);
                mpq_class expect = fact(r) * fact(j);
                for (int i = 0; i < r; ++i) expect *= n;
                for (int i = 0; i <= j; ++i) expect /= n;
                CHECK(gaussian_inner(t, t, n) == ExactComplex(expect));
            }
        }
    }
}

TEST_CASE("raised basis functions of different levels are orthogonal") {
    const int n = 2;
    for (int r1 = 0; r1 <= 2; ++r1) {
        for (int r2 = r1 + 1; r2 <= 3; ++r2) {
            for (int j = 0; j <= 2; ++j) {
                // Same angular momentum j - r requires index j + r2 - r1 on level r2.
                const ExactPoly a = apply_T(ez(j, 0), n, r1);
                const ExactPoly b = apply_T(ez(j + r2 - r1, 0), n, r2);
                CHECK(gaussian_inner(a, b, n).is_zero());
            }
        }
    }
}

TEST_CASE("dbar lowers T: dbar T p = T dbar p + n p") {
    const int n = 3;
    const ExactPoly p = ez(2, 1) + ez(0, 3) * ExactComplex(mpq_class(1, 2));
    const ExactPoly lhs = wirtinger(apply_T(p, n, 1), Wirtinger::dbar);
    const ExactPoly rhs = apply_T(wirtinger(p, Wirtinger::dbar), n, 1) + p * ExactComplex(n);
    CHECK(lhs == rhs);
}

TEST_CASE("conjugation and reality") {
    const ExactPoly re = (ez(1, 0) + ez(0, 1)) * ExactComplex(mpq_class(1, 2));
    CHECK(re.is_real());
    CHECK_FALSE(ez(1, 0).is_real());
    CHECK(ez(2, 1).conj() == ez(1, 2));
}

TEST_CASE("degree budget is enforced") {
    CHECK_THROWS_AS(ExactPoly::zpow(65, 0), CapacityError);
    const ExactPoly p = ExactPoly::zpow(40, 0);
    CHECK_THROWS_AS(p * p, CapacityError);
    CHECK_NOTHROW(ExactPoly::zpow(40, 0, 0, 128) * ExactPoly::zpow(40, 0, 0, 128));
    CHECK_THROWS_AS(apply_T(p, 1, -1), DomainError);
    CHECK_THROWS_AS(gaussian_integral(p, 0), DomainError);
}

TEST_CASE("double and exact modes agree") {
    const ExactPoly e = apply_T(ez(2, 0), 2, 2);
    const PolyPoly d = apply_T(PolyPoly::zpow(2, 0), 2, 2);
    const cdouble z{0.3, -0.7};
    CHECK(std::abs(to_double(e)(z) - d(z)) < 1e-14);
    CHECK(std::abs(gaussian_inner(d, d, 2) - gaussian_inner(e, e, 2).to_complex()) < 1e-14);
}

TEST_CASE("basis monomials are orthonormal") {
    for (int n : {1, 4}) {
        for (int j = 0; j < 6; ++j) {
            const PolyPoly e = basis_monomial(j, n);
            CHECK(std::abs(gaussian_inner(e, e, n) - 1.0) < 1e-13);
            CHECK(std::abs(gaussian_inner(e, basis_monomial(j + 1, n), n)) < 1e-15);
        }
    }
}

TEST_CASE("diffop expansion coefficients") {
    // D_{2,3,n}: m = 2, M = 3, terms C(2,j) (3)_j n^j for j = 0, 1, 2.
    const auto t = DiffOpSpec{2, 3, 5}.expansion();
    REQUIRE(t.size() == 3);
    CHECK(t[0].coefficient == 1);
    CHECK(t[1].coefficient == 2 * 3 * 5);
    CHECK(t[2].coefficient == 1 * 6 * 25);
    CHECK(binomial(6, 2) == 15);
    CHECK(falling_factorial(5, 3) == 60);
}
