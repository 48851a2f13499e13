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

#include <cmath>
#include <complex>

namespace polygin {

/// Neumaier (improved Kahan) summation.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
  public:
    void add(std::complex<double> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// log|z|, with log 0 = -inf.
inline double log_abs(std::complex<double> z) {
    const double r = std::abs(z);
    return r > 0.0 ? std::log(r) : -HUGE_VAL;
}

/// e^{p*log_r}, treating 0 * (-inf) as 0 (so r^0 = 1 for r = 0).
inline double scaled_power_log(int p, double log_r) { return p == 0 ? 0.0 : p * log_r; }

}  // namespace polygin
