// Copyright 2026 The pbcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pbcsim/quadsum.h"

#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "pbcsim/parse_error.h"

namespace pbcsim {

namespace {

int mod(int v, int m) {
    return ((v % m) + m) % m;
}

}  // namespace

DegreeTwoPolynomial::DegreeTwoPolynomial(size_t n) : lin_(n, 0), quad_(n, n) {
}

void DegreeTwoPolynomial::check_var(size_t a) const {
    if (a >= lin_.size()) {
        throw std::out_of_range(
            "variable index " + std::to_string(a) + " out of range for " + std::to_string(lin_.size()) + " variables");
    }
}

int DegreeTwoPolynomial::linear(size_t a) const {
    check_var(a);
    return lin_[a];
}

bool DegreeTwoPolynomial::quadratic(size_t a, size_t b) const {
    check_var(a);
    check_var(b);
    return quad_.get(a, b);
}

void DegreeTwoPolynomial::set_constant(int c) {
    constant_ = mod(c, 8);
}

void DegreeTwoPolynomial::add_constant(int c) {
    constant_ = mod(constant_ + c, 8);
}

void DegreeTwoPolynomial::set_linear(size_t a, int v) {
    check_var(a);
    lin_[a] = mod(v, 4);
}

void DegreeTwoPolynomial::add_linear(size_t a, int v) {
    check_var(a);
    lin_[a] = mod(lin_[a] + v, 4);
}

void DegreeTwoPolynomial::set_quadratic(size_t a, size_t b, bool v) {
    if (quadratic(a, b) != v) {
        flip_quadratic(a, b);
    }
}

void DegreeTwoPolynomial::flip_quadratic(size_t a, size_t b) {
    check_var(a);
    check_var(b);
    if (a == b) {
        throw std::invalid_argument("quadratic term needs two distinct variables");
    }
    quad_.flip(a, b);
    quad_.flip(b, a);
}

int DegreeTwoPolynomial::evaluate(const BitVector &x) const {
    if (x.size() != lin_.size()) {
        throw std::invalid_argument(
            "evaluate: got " + std::to_string(x.size()) + " bits for " + std::to_string(lin_.size()) + " variables");
    }
    int v = constant_;
    for (size_t a = 0; a < lin_.size(); a++) {
        if (!x.get(a)) {
            continue;
        }
        v += 2 * lin_[a];
        for (size_t b = a + 1; b < lin_.size(); b++) {
            if (x.get(b) && quad_.get(a, b)) {
                v += 4;
            }
        }
    }
    return mod(v, 8);
}

DegreeTwoPolynomial DegreeTwoPolynomial::negated() const {
    DegreeTwoPolynomial out = *this;
    out.constant_ = mod(-constant_, 8);
    for (auto &l : out.lin_) {
        l = mod(-l, 4);
    }
    return out;
}

DegreeTwoPolynomial DegreeTwoPolynomial::substitute(const BitMatrix &t) const {
    size_t n = lin_.size();
    if (t.cols() != n) {
        throw std::invalid_argument("substitute: matrix has the wrong number of columns");
    }
    size_t m = t.rows();
    DegreeTwoPolynomial out(m);
    out.constant_ = constant_;

    BitMatrix upper(n, n);
    BitVector odd(n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a + 1; b < n; b++) {
            if (quad_.get(a, b)) {
                upper.set(a, b, true);
            }
        }
        if (lin_[a] & 1) {
            odd.set(a, true);
        }
    }
    BitMatrix tt = t.transpose();
    BitMatrix prod = (t * upper) * tt;
    BitMatrix masked = t;
    for (size_t i = 0; i < m; i++) {
        masked.row(i) &= odd;
    }
    // The integer lift of an XOR of bits carries -2 per pair, which turns into
    // a clique of quadratic terms for every odd linear coefficient.
    BitMatrix cliques = masked * tt;

    for (size_t i = 0; i < m; i++) {
        int l = 0;
        for (size_t a = 0; a < n; a++) {
            if (t.get(i, a)) {
                l += lin_[a];
            }
        }
        if (prod.get(i, i)) {
            l += 2;
        }
        out.lin_[i] = mod(l, 4);
        for (size_t j = i + 1; j < m; j++) {
            bool q = prod.get(i, j) ^ prod.get(j, i) ^ cliques.get(i, j);
            if (q) {
                out.quad_.set(i, j, true);
                out.quad_.set(j, i, true);
            }
        }
    }
    return out;
}

DegreeTwoPolynomial DegreeTwoPolynomial::restrict(size_t var, bool value) const {
    check_var(var);
    size_t n = lin_.size();
    DegreeTwoPolynomial out(n - 1);
    out.constant_ = constant_;
    if (value) {
        out.constant_ = mod(constant_ + 2 * lin_[var], 8);
    }
    for (size_t a = 0, i = 0; a < n; a++) {
        if (a == var) {
            continue;
        }
        int l = lin_[a];
        if (value && quad_.get(var, a)) {
            l += 2;
        }
        out.lin_[i] = mod(l, 4);
        for (size_t b = a + 1, j = i + 1; b < n; b++) {
            if (b == var) {
                continue;
            }
            if (quad_.get(a, b)) {
                out.quad_.set(i, j, true);
                out.quad_.set(j, i, true);
            }
            j++;
        }
        i++;
    }
    return out;
}

DegreeTwoPolynomial DegreeTwoPolynomial::direct_sum(const DegreeTwoPolynomial &g) const {
    size_t n = lin_.size();
    DegreeTwoPolynomial out = extended(g.num_vars());
    out.constant_ = mod(constant_ + g.constant_, 8);
    for (size_t a = 0; a < g.num_vars(); a++) {
        out.lin_[n + a] = g.lin_[a];
        for (size_t b = a + 1; b < g.num_vars(); b++) {
            if (g.quad_.get(a, b)) {
                out.quad_.set(n + a, n + b, true);
                out.quad_.set(n + b, n + a, true);
            }
        }
    }
    return out;
}

DegreeTwoPolynomial DegreeTwoPolynomial::extended(size_t extra) const {
    size_t n = lin_.size();
    DegreeTwoPolynomial out(n + extra);
    out.constant_ = constant_;
    for (size_t a = 0; a < n; a++) {
        out.lin_[a] = lin_[a];
        for (size_t b = a + 1; b < n; b++) {
            if (quad_.get(a, b)) {
                out.quad_.set(a, b, true);
                out.quad_.set(b, a, true);
            }
        }
    }
    return out;
}

std::string DegreeTwoPolynomial::str() const {
    std::ostringstream out;
    out << "n: " << lin_.size() << "\n";
    out << "const: " << constant_ << "\n";
    out << "linear:";
    for (int l : lin_) {
        out << " " << l;
    }
    out << "\nquadratic:";
    for (size_t a = 0; a < lin_.size(); a++) {
        for (size_t b = a + 1; b < lin_.size(); b++) {
            if (quad_.get(a, b)) {
                out << " " << a << "-" << b;
            }
        }
    }
    out << "\n";
    return out.str();
}

namespace {

struct Token {
    std::string text;
    size_t column;
};

std::vector<Token> split_tokens(const std::string &line, size_t offset) {
    std::vector<Token> out;
    size_t i = offset;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',')) {
            i++;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',') {
            i++;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return out;
}

long long parse_int_token(const Token &tok, const std::string &source, size_t line_no) {
    try {
        size_t used = 0;
        long long v = std::stoll(tok.text, &used);
        if (used != tok.text.size()) {
            throw std::invalid_argument("junk");
        }
        return v;
    } catch (const std::exception &) {
        throw ParseError(source, line_no, tok.column, "expected an integer, got '" + tok.text + "'");
    }
}

}  // namespace

DegreeTwoPolynomial DegreeTwoPolynomial::parse(std::string_view text, const std::string &source) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    bool have_n = false;
    DegreeTwoPolynomial out;
    std::vector<std::pair<Token, size_t>> pending_linear;
    std::vector<std::pair<Token, size_t>> pending_quad;
    std::optional<std::pair<Token, size_t>> pending_const;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError(source, line_no, first + 1, "expected 'key: value'");
        }
        std::string key = line.substr(first, colon - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) {
            key.pop_back();
        }
        auto toks = split_tokens(line, colon + 1);
        if (key == "n") {
            if (toks.size() != 1) {
                throw ParseError(source, line_no, colon + 2, "'n' takes exactly one value");
            }
            long long n = parse_int_token(toks[0], source, line_no);
            if (n < 0 || n > 4096) {
                throw ParseError(source, line_no, toks[0].column, "variable count out of range");
            }
            out = DegreeTwoPolynomial(static_cast<size_t>(n));
            have_n = true;
        } else if (key == "const") {
            if (toks.size() != 1) {
                throw ParseError(source, line_no, colon + 2, "'const' takes exactly one value");
            }
            pending_const = {toks[0], line_no};
        } else if (key == "linear") {
            for (auto &t : toks) {
                pending_linear.push_back({t, line_no});
            }
        } else if (key == "quadratic") {
            for (auto &t : toks) {
                pending_quad.push_back({t, line_no});
            }
        } else {
            throw ParseError(source, line_no, first + 1, "unknown key '" + key + "'");
        }
    }
    if (!have_n) {
        throw ParseError(source, line_no ? line_no : 1, 0, "missing 'n:' line");
    }
    if (pending_const) {
        out.set_constant(static_cast<int>(parse_int_token(pending_const->first, source, pending_const->second)));
    }
    if (!pending_linear.empty() && pending_linear.size() != out.num_vars()) {
        auto &last = pending_linear.back();
        throw ParseError(
            source, last.second, last.first.column,
            "expected " + std::to_string(out.num_vars()) + " linear coefficients, got " +
                std::to_string(pending_linear.size()));
    }
    for (size_t a = 0; a < pending_linear.size(); a++) {
        out.set_linear(a, static_cast<int>(parse_int_token(pending_linear[a].first, source, pending_linear[a].second)));
    }
    for (auto &[tok, ln] : pending_quad) {
        auto dash = tok.text.find('-', 1);
        if (dash == std::string::npos) {
            throw ParseError(source, ln, tok.column, "expected a pair 'a-b', got '" + tok.text + "'");
        }
        Token ta{tok.text.substr(0, dash), tok.column};
        Token tb{tok.text.substr(dash + 1), tok.column + dash + 1};
        long long a = parse_int_token(ta, source, ln);
        long long b = parse_int_token(tb, source, ln);
        if (a < 0 || b < 0 || static_cast<size_t>(a) >= out.num_vars() || static_cast<size_t>(b) >= out.num_vars() ||
            a == b) {
            throw ParseError(source, ln, tok.column, "invalid variable pair '" + tok.text + "'");
        }
        out.flip_quadratic(static_cast<size_t>(a), static_cast<size_t>(b));
    }
    return out;
}

namespace {

// sum_y (-1)^(q(y)/4) for a polynomial whose linear coefficients are all even.
ExactAmplitude sign_sum(const DegreeTwoPolynomial &q) {
    size_t m = q.num_vars();
    if (m == 0) {
        return ExactAmplitude::from_int(q.constant() == 4 ? -1 : 1);
    }
    SymplecticForm form = symplectic_canonicalize(q.quadratic_matrix());
    DegreeTwoPolynomial c = q.substitute(form.transform.transpose());
    size_t r = form.blocks;
    for (size_t a = 2 * r; a < m; a++) {
        if (c.linear(a) != 0) {
            return ExactAmplitude::zero();
        }
    }
    // Each block sums to 2 (-1)^(u v).
    bool negative = c.constant() == 4;
    for (size_t a = 0; a < r; a++) {
        if (c.linear(2 * a) && c.linear(2 * a + 1)) {
            negative = !negative;
        }
    }
    ExactAmplitude mag = ExactAmplitude::sqrt2_power(static_cast<int>(2 * (m - r)));
    return negative ? -mag : mag;
}

}  // namespace

namespace {

// sum_x (-1)^Q(x) for Q = c0 + g.x + sum_{a<b} quad_ab x_a x_b over F_2, at most 64
// variables. Returns 0 or +-2^power. Eliminates one variable pair at a time:
// summing over x_a forces the linear form multiplying it to vanish.
struct SignSum {
    int sign = 1;
    int power = 0;
    bool zero = false;
};

SignSum word_sign_sum(bool c0, uint64_t g, std::array<uint64_t, 64> quad, uint64_t active) {
    SignSum out;
    while (active) {
        size_t a = std::countr_zero(active);
        uint64_t abit = uint64_t{1} << a;
        uint64_t row = quad[a] & active;
        active &= ~abit;
        bool ga = (g >> a) & 1;
        if (!row) {
            if (ga) {
                out.zero = true;
                return out;
            }
            out.power++;
            continue;
        }
        size_t b = std::countr_zero(row);
        uint64_t bbit = uint64_t{1} << b;
        active &= ~bbit;
        // x_b = ga + l.x and the x_b terms become (ga + l.x)(gb + m.x).
        uint64_t l = row & ~bbit;
        uint64_t m = quad[b] & active;
        bool gb = (g >> b) & 1;
        c0 ^= ga & gb;
        g ^= (ga ? m : 0) ^ (gb ? l : 0) ^ (l & m);
        for (uint64_t bits = l; bits; bits &= bits - 1) {
            quad[std::countr_zero(bits)] ^= m;
        }
        for (uint64_t bits = m; bits; bits &= bits - 1) {
            quad[std::countr_zero(bits)] ^= l;
        }
        out.power++;
    }
    out.sign = c0 ? -1 : 1;
    return out;
}

ExactAmplitude word_exp_sum(const DegreeTwoPolynomial &f) {
    size_t n = f.num_vars();
    std::array<uint64_t, 64> quad{};
    uint64_t odd = 0, g = 0;
    for (size_t a = 0; a < n; a++) {
        quad[a] = f.quadratic_matrix().row(a).words()[0];
        int l = f.linear(a);
        if (l & 1) {
            odd |= uint64_t{1} << a;
        }
        if (l >= 2) {
            g |= uint64_t{1} << a;
        }
    }
    // omega^(2l x) = i^(l x): for odd l, i^x times (-1)^x when l = 3. Over the odd
    // set S, i^|x_S| = i^(parity of x_S) (-1)^(pairs within x_S).
    for (uint64_t bits = odd; bits; bits &= bits - 1) {
        size_t a = std::countr_zero(bits);
        quad[a] ^= odd & ~(uint64_t{1} << a);
    }
    uint64_t active = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    ExactAmplitude phase = ExactAmplitude::omega_power(f.constant());
    SignSum a = word_sign_sum(false, g, quad, active);
    if (!odd) {
        if (a.zero) {
            return ExactAmplitude::zero();
        }
        return phase * ExactAmplitude::sqrt2_power(2 * a.power) * ExactAmplitude::from_int(a.sign);
    }
    // Split on the parity p of x_S: total = (A (1 + i) + B (1 - i)) / 2 with B carrying (-1)^p.
    SignSum b = word_sign_sum(false, g ^ odd, quad, active);
    auto value = [](const SignSum &s) {
        return s.zero ? Integer{0} : checked_shift(Integer{s.sign}, s.power);
    };
    return phase * ExactAmplitude(0, value(a), 0, -value(b), -1);
}

}  // namespace

ExactAmplitude exp_sum(const DegreeTwoPolynomial &f) {
    if (f.num_vars() <= 64) {
        return word_exp_sum(f);
    }
    return exp_sum_symplectic(f);
}

ExactAmplitude exp_sum_symplectic(const DegreeTwoPolynomial &f) {
    size_t n = f.num_vars();
    ExactAmplitude phase = ExactAmplitude::omega_power(f.constant());
    if (n == 0) {
        return phase;
    }

    // omega^f = omega^c * i^(|x_S|) * (-1)^(g.x + quad(x)); then
    // i^|x_S| = i^(parity of x_S) * (-1)^(pairs within x_S).
    std::vector<size_t> odd;
    DegreeTwoPolynomial q(n);
    for (size_t a = 0; a < n; a++) {
        int l = f.linear(a);
        int g = (l & 1) ? (l == 3 ? 1 : 0) : l / 2;
        q.set_linear(a, 2 * g);
        if (l & 1) {
            odd.push_back(a);
        }
        for (size_t b = a + 1; b < n; b++) {
            if (f.quadratic(a, b)) {
                q.flip_quadratic(a, b);
            }
        }
    }
    if (odd.empty()) {
        return phase * sign_sum(q);
    }
    for (size_t i = 0; i < odd.size(); i++) {
        for (size_t j = i + 1; j < odd.size(); j++) {
            q.flip_quadratic(odd[i], odd[j]);
        }
    }
    size_t s = odd.back();
    BitMatrix t = BitMatrix::identity(n);
    for (size_t a : odd) {
        t.set(a, s, true);
    }
    DegreeTwoPolynomial sub = q.substitute(t);
    ExactAmplitude s0 = sign_sum(sub.restrict(s, false));
    ExactAmplitude s1 = sign_sum(sub.restrict(s, true));
    return phase * (s0 + ExactAmplitude::omega_power(2) * s1);
}

ExactAmplitude brute_force_exp_sum(const DegreeTwoPolynomial &f, size_t max_vars) {
    size_t n = f.num_vars();
    if (n > max_vars || n > 40) {
        throw std::invalid_argument(
            "brute_force_exp_sum: " + std::to_string(n) + " variables exceeds the bound of " + std::to_string(max_vars));
    }
    std::vector<uint64_t> rows(n, 0);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            if (f.quadratic(a, b)) {
                rows[a] |= uint64_t{1} << b;
            }
        }
    }
    // Gray-code walk: flipping x_j changes f by +-(2 l_j + 4 sum_b q_jb x_b).
    std::array<uint64_t, 8> counts{};
    uint64_t x = 0;
    int value = f.constant();
    counts[value]++;
    uint64_t total = uint64_t{1} << n;
    for (uint64_t step = 1; step < total; step++) {
        size_t j = std::countr_zero(step);
        int delta = 2 * f.linear(j) + 4 * (std::popcount(rows[j] & x) & 1);
        if ((x >> j) & 1) {
            value -= delta;
        } else {
            value += delta;
        }
        value &= 7;
        x ^= uint64_t{1} << j;
        counts[value]++;
    }
    auto diff = [&](int a, int b) {
        return static_cast<Integer>(counts[a]) - static_cast<Integer>(counts[b]);
    };
    return ExactAmplitude(diff(0, 4), diff(1, 5), diff(2, 6), diff(3, 7), 0);
}

}  // namespace pbcsim
