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

#include <complex>
#include <ostream>

#include <gmpxx.h>

namespace polygin {

/// Complex number with exact rational parts; the coefficient type of the
/// exact polynomial mode.
struct ExactComplex {
    mpq_class re;
    mpq_class im;

    ExactComplex() : re(0), im(0) {}
    ExactComplex(mpq_class r) : re(std::move(r)), im(0) {}  // NOLINT
    ExactComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    ExactComplex(long v) : re(v), im(0) {}  // NOLINT
    ExactComplex(int v) : re(v), im(0) {}   // NOLINT

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    ExactComplex conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    ExactComplex& operator+=(const ExactComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        if (sgn(im) == 0 && sgn(o.im) == 0) {
            re *= o.re;
            return *this;
        }
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactComplex& c) {
        os << c.re;
        if (sgn(c.im) != 0) os << (sgn(c.im) > 0 ? "+" : "") << c.im << "i";
        return os;
    }
};

}  // namespace polygin
