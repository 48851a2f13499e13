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

#include <cmath>

#include "polygin/polynomial.hpp"

namespace polygin {

PolyPoly basis_monomial(int j, int n) {
    if (j < 0 || n < 1) throw DomainError("basis_monomial requires j >= 0 and n >= 1");
    const double log_c = 0.5 * ((j + 1.0) * std::log(double(n)) - std::lgamma(j + 1.0));
    if (log_c > 700.0) throw CapacityError("basis_monomial coefficient overflows a double");
    return PolyPoly::monomial({std::exp(log_c), 0.0}, {j, 0});
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long falling_factorial(long long r, int j) {
    long long out = 1;
    for (int i = 0; i < j; ++i) out *= (r - i);
    return out;
}

std::vector<DiffOpSpec::Term> DiffOpSpec::expansion() const {
    const int lo = std::min(alpha, beta);
    const int hi = std::max(alpha, beta);
    std::vector<Term> out;
    out.reserve(lo + 1);
    long long npow = 1;
    for (int j = 0; j <= lo; ++j) {
        out.push_back({j, binomial(lo, j) * falling_factorial(hi, j) * npow});
        npow *= n;
    }
    return out;
}

}  // namespace polygin
