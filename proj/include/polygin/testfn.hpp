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
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polygin/polynomial.hpp"

namespace polygin {

/// Value and Wirtinger derivatives of a real function at one point:
/// g, dg, and Delta g = d dbar g. For real g, dbar g = conj(dg).
struct WirtingerJet {
    double value = 0.0;
    cdouble d{};
    double laplacian = 0.0;

    cdouble dbar() const { return std::conj(d); }
};

/// Real test function g parsed from the expression grammar
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := number | '-' factor | '(' expr ')' | builtin
///   builtin:= re | im | abs2 | harm(k) | rad(p0, p1, ...) | bump(r0, w)
///
/// harm(k) = Re z^k, rad(p0, p1, ...) = sum p_i |z|^{2i}, and bump(r0, w) is
/// the C-infinity radial cutoff equal to 1 on |z| <= r0 and 0 on
/// |z| >= r0 + w, with transition psi(t)/(psi(t)+psi(1-t)), psi(t) = e^{-1/t}.
/// Trees are immutable and cheap to copy.
class TestFunction {
  public:
    struct Node;

    /// The zero function.
    TestFunction();

    static TestFunction parse(std::string_view expr);
    static TestFunction constant(double c);

    /// Canonical text; parse(to_string()) reproduces the same tree.
    std::string to_string() const;

    double operator()(cdouble z) const;
    WirtingerJet jet(cdouble z) const;

    /// Angular Fourier modes that may be nonzero on any circle |z| = rho.
    const std::set<int>& modes() const;
    int max_mode() const;

    /// Radius outside which g vanishes identically; +inf if not compactly
    /// supported.
    double support_radius() const;
    bool compactly_supported() const { return support_radius() < std::numeric_limits<double>::infinity(); }

    /// Radii where g is only piecewise smooth enough that quadrature panels
    /// should break there (bump plateau and support edges).
    std::vector<double> breakpoints() const;

    /// Exact polynomial form in z, conj(z) when g uses only constants, re,
    /// im, abs2, harm and rad; DomainError otherwise.
    PolyPoly to_polynomial() const;

    friend bool operator==(const TestFunction& a, const TestFunction& b);

  private:
    explicit TestFunction(std::shared_ptr<const Node> root);

    std::shared_ptr<const Node> root_;
    std::set<int> modes_{0};
};

}  // namespace polygin
