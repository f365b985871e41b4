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

#pragma once

/// Degree-two polynomials f: F_2^n -> Z_8,
///     f(x) = c + 2 sum_a l_a x_a + 4 sum_{a<b} q_ab x_a x_b  (mod 8),
/// and exact evaluation of the exponential sum sum_x omega^f(x).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pbcsim/f2linalg.h"
#include "pbcsim/octic.h"
#include "pbcsim/parse_error.h"

namespace pbcsim {

class DegreeTwoPolynomial {
   public:
    DegreeTwoPolynomial() = default;
    explicit DegreeTwoPolynomial(size_t n);

    size_t num_vars() const { return lin_.size(); }

    int constant() const { return constant_; }
    int linear(size_t a) const;
    bool quadratic(size_t a, size_t b) const;
    /// Symmetric, zero diagonal; entry (a, b) = q_ab.
    const BitMatrix &quadratic_matrix() const { return quad_; }

    void set_constant(int c);
    void add_constant(int c);
    void set_linear(size_t a, int v);
    void add_linear(size_t a, int v);
    void set_quadratic(size_t a, size_t b, bool v);
    void flip_quadratic(size_t a, size_t b);

    /// Value in 0..7.
    int evaluate(const BitVector &x) const;

    /// -f.
    DegreeTwoPolynomial negated() const;
    /// g(y) = f(yT) for a t.rows() x n matrix T.
    DegreeTwoPolynomial substitute(const BitMatrix &t) const;
    /// Fixes x_var = value and drops that variable.
    DegreeTwoPolynomial restrict(size_t var, bool value) const;
    /// f(x) + g(y) on the concatenated variables (x, y).
    DegreeTwoPolynomial direct_sum(const DegreeTwoPolynomial &g) const;
    /// f(x) with extra variables appended (f does not depend on them).
    DegreeTwoPolynomial extended(size_t extra) const;

    /// Text form used by the exp-sum command:
    ///   n: <count>
    ///   const: <0..7>
    ///   linear: <l_0> ... <l_{n-1}>
    ///   quadratic: a-b a-b ...
    std::string str() const;
    static DegreeTwoPolynomial parse(std::string_view text, const std::string &source = "<input>");

    bool operator==(const DegreeTwoPolynomial &o) const = default;

   private:
    void check_var(size_t a) const;

    int constant_ = 0;
    std::vector<int> lin_;
    BitMatrix quad_;
};

/// sum_x omega^f(x), exactly, in O(n^3) bit operations.
ExactAmplitude exp_sum(const DegreeTwoPolynomial &f);
/// The same sum through canonicalization of the quadratic form; slower, kept as a cross-check.
ExactAmplitude exp_sum_symplectic(const DegreeTwoPolynomial &f);

/// Direct 2^n-term summation. Throws std::invalid_argument when n > max_vars.
ExactAmplitude brute_force_exp_sum(const DegreeTwoPolynomial &f, size_t max_vars = 20);

}  // namespace pbcsim
