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

#include "polygin/testfn.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "polygin/errors.hpp"

namespace polygin {

enum class NodeKind { constant, re, im, abs2, harm, rad, bump, add, sub, mul, neg };

struct TestFunction::Node {
    NodeKind kind = NodeKind::constant;
    double value = 0.0;
    std::vector<double> params;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const TestFunction::Node>;

NodePtr make_leaf(NodeKind kind, std::vector<double> params = {}, double value = 0.0) {
    auto n = std::make_shared<TestFunction::Node>();
    n->kind = kind;
    n->params = std::move(params);
    n->value = value;
    return n;
}

NodePtr make_binary(NodeKind kind, NodePtr l, NodePtr r) {
    auto n = std::make_shared<TestFunction::Node>();
    n->kind = kind;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
        NodePtr root = expr();
        skip_space();
        if (pos_ < text_.size()) {
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        }
        return root;
    }

  private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (accept('+')) {
                left = make_binary(NodeKind::add, left, term());
            } else if (accept('-')) {
                left = make_binary(NodeKind::sub, left, term());
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        while (accept('*')) left = make_binary(NodeKind::mul, left, factor());
        return left;
    }

    double number() {
        skip_space();
        const std::size_t start = pos_;
        double v = 0.0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (res.ec != std::errc{} || res.ptr == text_.data() + pos_) throw ParseError("expected a number", start);
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        if (!std::isfinite(v)) throw ParseError("non-finite number", start);
        return v;
    }

    double signed_number() {
        skip_space();
        if (accept('-')) return -number();
        return number();
    }

    std::vector<double> arguments(const std::string& name, std::size_t at) {
        if (!accept('(')) throw ParseError("builtin '" + name + "' requires arguments", at);
        std::vector<double> args{signed_number()};
        while (accept(',')) args.push_back(signed_number());
        expect(')');
        return args;
    }

    NodePtr factor() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return make_binary(NodeKind::neg, factor(), nullptr);
        }
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return make_leaf(NodeKind::constant, {}, number());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name(text_.substr(start, pos_ - start));
            if (name == "re") return make_leaf(NodeKind::re);
            if (name == "im") return make_leaf(NodeKind::im);
            if (name == "abs2") return make_leaf(NodeKind::abs2);
            if (name == "harm") {
                auto args = arguments(name, start);
                if (args.size() != 1 || args[0] < 0 || args[0] != std::floor(args[0]) || args[0] > 64) {
                    throw ParseError("harm(k) takes one integer 0 <= k <= 64", start);
                }
                return make_leaf(NodeKind::harm, std::move(args));
            }
            if (name == "rad") {
                auto args = arguments(name, start);
                if (args.size() > 32) throw ParseError("rad() takes at most 32 coefficients", start);
                return make_leaf(NodeKind::rad, std::move(args));
            }
            if (name == "bump") {
                auto args = arguments(name, start);
                if (args.size() != 2 || args[0] < 0.0 || args[1] <= 0.0) {
                    throw ParseError("bump(r0, w) takes r0 >= 0 and w > 0", start);
                }
                return make_leaf(NodeKind::bump, std::move(args));
            }
            throw ParseError("unknown identifier '" + name + "'", start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::add:
        case NodeKind::sub: return 1;
        case NodeKind::mul: return 2;
        case NodeKind::neg: return 3;
        default: return 4;
    }
}

std::string print(const TestFunction::Node& n) {
    auto wrap = [](const TestFunction::Node& child, bool paren) {
        std::string s = print(child);
        return paren ? "(" + s + ")" : s;
    };
    auto params = [](const std::vector<double>& p) {
        std::string s = "(";
        for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + format_number(p[i]);
        return s + ")";
    };
    switch (n.kind) {
        case NodeKind::constant: return format_number(n.value);
        case NodeKind::re: return "re";
        case NodeKind::im: return "im";
        case NodeKind::abs2: return "abs2";
        case NodeKind::harm: return "harm" + params(n.params);
        case NodeKind::rad: return "rad" + params(n.params);
        case NodeKind::bump: return "bump" + params(n.params);
        case NodeKind::add:
            return wrap(*n.lhs, false) + "+" + wrap(*n.rhs, precedence(n.rhs->kind) <= 1);
        case NodeKind::sub:
            return wrap(*n.lhs, false) + "-" + wrap(*n.rhs, precedence(n.rhs->kind) <= 1);
        case NodeKind::mul:
            return wrap(*n.lhs, precedence(n.lhs->kind) < 2) + "*" + wrap(*n.rhs, precedence(n.rhs->kind) <= 2);
        case NodeKind::neg: return "-" + wrap(*n.lhs, precedence(n.lhs->kind) < 3);
    }
    return {};
}

bool equal(const TestFunction::Node* a, const TestFunction::Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->kind == b->kind && a->value == b->value && a->params == b->params && equal(a->lhs.get(), b->lhs.get()) &&
           equal(a->rhs.get(), b->rhs.get());
}

/// Jet of a radial function f(s), s = |z|^2, given f, f', f''.
WirtingerJet radial_jet(cdouble z, double f, double f1, double f2) {
    const double s = std::norm(z);
    return {f, f1 * std::conj(z), f2 * s + f1};
}

/// Smooth step h(rho) of bump(r0, w) with its first two rho-derivatives.
void smooth_step(double rho, double r0, double width, double& h, double& h1, double& h2) {
    const double t = (r0 + width - rho) / width;
    if (t >= 1.0) {
        h = 1.0, h1 = 0.0, h2 = 0.0;
        return;
    }
    if (t <= 0.0) {
        h = 0.0, h1 = 0.0, h2 = 0.0;
        return;
    }
    // h = logistic(u), u = 1/(1-t) - 1/t
    const double u = 1.0 / (1.0 - t) - 1.0 / t;
    const double e = std::exp(-std::abs(u));
    h = u >= 0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    const double hh = e / ((1.0 + e) * (1.0 + e));  // h (1 - h)
    const double du = 1.0 / ((1.0 - t) * (1.0 - t)) + 1.0 / (t * t);
    const double d2u = 2.0 / ((1.0 - t) * (1.0 - t) * (1.0 - t)) - 2.0 / (t * t * t);
    const double ht = hh * du;
    const double htt = hh * (1.0 - 2.0 * h) * du * du + hh * d2u;
    h1 = -ht / width;
    h2 = htt / (width * width);
}

WirtingerJet eval_jet(const TestFunction::Node& n, cdouble z) {
    switch (n.kind) {
        case NodeKind::constant: return {n.value, {}, 0.0};
        case NodeKind::re: return {z.real(), {0.5, 0.0}, 0.0};
        case NodeKind::im: return {z.imag(), {0.0, -0.5}, 0.0};
        case NodeKind::abs2: return {std::norm(z), std::conj(z), 1.0};
        case NodeKind::harm: {
            const int k = static_cast<int>(n.params[0]);
            if (k == 0) return {1.0, {}, 0.0};
            const cdouble zk1 = std::pow(z, k - 1);
            return {(zk1 * z).real(), 0.5 * k * zk1, 0.0};
        }
        case NodeKind::rad: {
            const double s = std::norm(z);
            double f = 0.0, f1 = 0.0, f2 = 0.0;
            for (std::size_t i = n.params.size(); i-- > 0;) {
                // Horner for f, f', f''
                f2 = f2 * s + 2.0 * f1;
                f1 = f1 * s + f;
                f = f * s + n.params[i];
            }
            return radial_jet(z, f, f1, f2);
        }
        case NodeKind::bump: {
            const double rho = std::abs(z);
            double h, h1, h2;
            smooth_step(rho, n.params[0], n.params[1], h, h1, h2);
            if (rho == 0.0) return {h, {}, 0.5 * h2};
            // d = h'(rho)/(2 rho) conj(z); Delta = (h'' + h'/rho)/4
            return {h, h1 / (2.0 * rho) * std::conj(z), 0.25 * (h2 + h1 / rho)};
        }
        case NodeKind::add:
        case NodeKind::sub: {
            const auto a = eval_jet(*n.lhs, z);
            const auto b = eval_jet(*n.rhs, z);
            const double s = n.kind == NodeKind::add ? 1.0 : -1.0;
            return {a.value + s * b.value, a.d + s * b.d, a.laplacian + s * b.laplacian};
        }
        case NodeKind::mul: {
            const auto a = eval_jet(*n.lhs, z);
            const auto b = eval_jet(*n.rhs, z);
            return {a.value * b.value, a.d * b.value + a.value * b.d,
                    a.laplacian * b.value + a.value * b.laplacian + 2.0 * (a.d * std::conj(b.d)).real()};
        }
        case NodeKind::neg: {
            const auto a = eval_jet(*n.lhs, z);
            return {-a.value, -a.d, -a.laplacian};
        }
    }
    return {};
}

double eval_value(const TestFunction::Node& n, cdouble z) {
    switch (n.kind) {
        case NodeKind::constant: return n.value;
        case NodeKind::re: return z.real();
        case NodeKind::im: return z.imag();
        case NodeKind::abs2: return std::norm(z);
        case NodeKind::harm: return std::pow(z, static_cast<int>(n.params[0])).real();
        case NodeKind::rad: {
            const double s = std::norm(z);
            double f = 0.0;
            for (std::size_t i = n.params.size(); i-- > 0;) f = f * s + n.params[i];
            return f;
        }
        case NodeKind::bump: {
            double h, h1, h2;
            smooth_step(std::abs(z), n.params[0], n.params[1], h, h1, h2);
            return h;
        }
        case NodeKind::add: return eval_value(*n.lhs, z) + eval_value(*n.rhs, z);
        case NodeKind::sub: return eval_value(*n.lhs, z) - eval_value(*n.rhs, z);
        case NodeKind::mul: return eval_value(*n.lhs, z) * eval_value(*n.rhs, z);
        case NodeKind::neg: return -eval_value(*n.lhs, z);
    }
    return 0.0;
}

std::set<int> collect_modes(const TestFunction::Node& n) {
    switch (n.kind) {
        case NodeKind::re:
        case NodeKind::im: return {-1, 1};
        case NodeKind::harm: {
            const int k = static_cast<int>(n.params[0]);
            return {-k, k};
        }
        case NodeKind::add:
        case NodeKind::sub: {
            auto a = collect_modes(*n.lhs);
            a.merge(collect_modes(*n.rhs));
            return a;
        }
        case NodeKind::mul: {
            const auto a = collect_modes(*n.lhs);
            const auto b = collect_modes(*n.rhs);
            std::set<int> out;
            for (int x : a)
                for (int y : b) out.insert(x + y);
            return out;
        }
        case NodeKind::neg: return collect_modes(*n.lhs);
        default: return {0};
    }
}

double support(const TestFunction::Node& n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (n.kind) {
        case NodeKind::constant: return n.value == 0.0 ? 0.0 : inf;
        case NodeKind::bump: return n.params[0] + n.params[1];
        case NodeKind::rad:
            return std::all_of(n.params.begin(), n.params.end(), [](double p) { return p == 0.0; }) ? 0.0 : inf;
        case NodeKind::add:
        case NodeKind::sub: return std::max(support(*n.lhs), support(*n.rhs));
        case NodeKind::mul: return std::min(support(*n.lhs), support(*n.rhs));
        case NodeKind::neg: return support(*n.lhs);
        default: return inf;
    }
}

void collect_breaks(const TestFunction::Node& n, std::vector<double>& out) {
    if (n.kind == NodeKind::bump) {
        out.push_back(n.params[0]);
        out.push_back(n.params[0] + n.params[1]);
    }
    if (n.lhs) collect_breaks(*n.lhs, out);
    if (n.rhs) collect_breaks(*n.rhs, out);
}

PolyPoly to_poly(const TestFunction::Node& n) {
    const PolyPoly z = PolyPoly::zpow(1, 0);
    const PolyPoly zb = PolyPoly::zpow(0, 1);
    switch (n.kind) {
        case NodeKind::constant: return PolyPoly::constant(n.value);
        case NodeKind::re: return (z + zb) * cdouble(0.5);
        case NodeKind::im: return (z - zb) * cdouble(0.0, -0.5);
        case NodeKind::abs2: return z * zb;
        case NodeKind::harm: {
            const int k = static_cast<int>(n.params[0]);
            return (PolyPoly::zpow(k, 0) + PolyPoly::zpow(0, k)) * cdouble(0.5);
        }
        case NodeKind::rad: {
            PolyPoly out;
            for (std::size_t i = 0; i < n.params.size(); ++i) {
                out += PolyPoly::zpow(static_cast<int>(i), static_cast<int>(i)) * cdouble(n.params[i]);
            }
            return out;
        }
        case NodeKind::bump: throw DomainError("bump() has no polynomial form");
        case NodeKind::add: return to_poly(*n.lhs) + to_poly(*n.rhs);
        case NodeKind::sub: return to_poly(*n.lhs) - to_poly(*n.rhs);
        case NodeKind::mul: return to_poly(*n.lhs) * to_poly(*n.rhs);
        case NodeKind::neg: return to_poly(*n.lhs) * cdouble(-1.0);
    }
    return {};
}

}  // namespace

PolyPoly TestFunction::to_polynomial() const { return to_poly(*root_); }

TestFunction::TestFunction() : TestFunction(make_leaf(NodeKind::constant, {}, 0.0)) {}

TestFunction::TestFunction(std::shared_ptr<const Node> root) : root_(std::move(root)), modes_(collect_modes(*root_)) {}

TestFunction TestFunction::parse(std::string_view expr) { return TestFunction(Parser(expr).parse()); }

TestFunction TestFunction::constant(double c) { return TestFunction(make_leaf(NodeKind::constant, {}, c)); }

std::string TestFunction::to_string() const { return print(*root_); }

double TestFunction::operator()(cdouble z) const { return eval_value(*root_, z); }

WirtingerJet TestFunction::jet(cdouble z) const { return eval_jet(*root_, z); }

const std::set<int>& TestFunction::modes() const { return modes_; }

int TestFunction::max_mode() const {
    int m = 0;
    for (int k : modes_) m = std::max(m, std::abs(k));
    return m;
}

double TestFunction::support_radius() const { return support(*root_); }

std::vector<double> TestFunction::breakpoints() const {
    std::vector<double> out;
    collect_breaks(*root_, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool operator==(const TestFunction& a, const TestFunction& b) { return equal(a.root_.get(), b.root_.get()); }

}  // namespace polygin
