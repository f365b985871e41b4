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

/// Exact arithmetic in Z[omega] (omega = e^{i pi/4}) scaled by powers of sqrt(2),
/// plus the real subring Z[sqrt2] scaled by powers of 2.
///
/// Coefficients are 128-bit integers. Every operation checks for overflow and
/// throws std::overflow_error instead of wrapping.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace pbcsim {

using Integer = __int128;

std::string integer_to_string(Integer v);
Integer parse_integer(std::string_view text);

Integer checked_add(Integer a, Integer b);
Integer checked_sub(Integer a, Integer b);
Integer checked_mul(Integer a, Integer b);
/// a * 2^k for k >= 0.
Integer checked_shift(Integer a, int k);

/// p + q sqrt(2).
struct QuadraticInteger {
    Integer p = 0;
    Integer q = 0;

    bool is_zero() const { return p == 0 && q == 0; }
    /// -1, 0 or +1, computed exactly.
    int sign() const;
    double to_double() const;
    /// p - q sqrt(2).
    QuadraticInteger galois() const { return {p, -q}; }

    QuadraticInteger operator-() const;
    QuadraticInteger operator+(const QuadraticInteger &o) const;
    QuadraticInteger operator-(const QuadraticInteger &o) const;
    QuadraticInteger operator*(const QuadraticInteger &o) const;
    bool operator==(const QuadraticInteger &o) const = default;
};

/// value * 2^exp, kept with p, q not both even (zero has exp 0).
class ScaledQuadratic {
   public:
    ScaledQuadratic() = default;
    ScaledQuadratic(QuadraticInteger value, int exp);
    ScaledQuadratic(Integer p, Integer q, int exp) : ScaledQuadratic(QuadraticInteger{p, q}, exp) {}
    static ScaledQuadratic from_int(Integer v) { return {v, 0, 0}; }

    const QuadraticInteger &value() const { return value_; }
    int exp() const { return exp_; }

    bool is_zero() const { return value_.is_zero(); }
    int sign() const { return value_.sign(); }
    double to_double() const;

    ScaledQuadratic operator-() const { return {-value_, exp_}; }
    ScaledQuadratic operator+(const ScaledQuadratic &o) const;
    ScaledQuadratic operator-(const ScaledQuadratic &o) const { return *this + (-o); }
    ScaledQuadratic operator*(const ScaledQuadratic &o) const;
    ScaledQuadratic scaled(int k) const { return {value_, exp_ + k}; }
    bool operator==(const ScaledQuadratic &o) const = default;
    bool operator<(const ScaledQuadratic &o) const { return (*this - o).sign() < 0; }
    bool operator<=(const ScaledQuadratic &o) const { return (*this - o).sign() <= 0; }

    /// "(p, q, e)".
    std::string str() const;
    /// Accepts "(p, q, e)" with optional whitespace. Throws std::invalid_argument.
    static ScaledQuadratic parse(std::string_view text);

   private:
    QuadraticInteger value_;
    int exp_ = 0;
};

/// (c0 + c1 w + c2 w^2 + c3 w^3) * sqrt(2)^e, in the unique form where the
/// coefficient vector is not divisible by sqrt(2) (zero is all zeros, e = 0).
class ExactAmplitude {
   public:
    ExactAmplitude() = default;
    ExactAmplitude(Integer c0, Integer c1, Integer c2, Integer c3, int e);
    explicit ExactAmplitude(const ScaledQuadratic &q);

    static ExactAmplitude zero() { return {}; }
    static ExactAmplitude one() { return {1, 0, 0, 0, 0}; }
    static ExactAmplitude from_int(Integer v) { return {v, 0, 0, 0, 0}; }
    /// omega^k for any integer k.
    static ExactAmplitude omega_power(int k);
    /// sqrt(2)^k.
    static ExactAmplitude sqrt2_power(int k) { return {1, 0, 0, 0, k}; }

    const std::array<Integer, 4> &coefficients() const { return c_; }
    int exponent() const { return e_; }

    bool is_zero() const;
    bool is_real() const;
    ExactAmplitude conj() const;
    std::complex<double> to_complex() const;

    ExactAmplitude operator-() const;
    ExactAmplitude operator+(const ExactAmplitude &o) const;
    ExactAmplitude operator-(const ExactAmplitude &o) const { return *this + (-o); }
    ExactAmplitude operator*(const ExactAmplitude &o) const;
    ExactAmplitude &operator+=(const ExactAmplitude &o) { return *this = *this + o; }
    ExactAmplitude &operator*=(const ExactAmplitude &o) { return *this = *this * o; }
    /// Multiplies by sqrt(2)^k.
    ExactAmplitude times_sqrt2_power(int k) const;
    bool operator==(const ExactAmplitude &o) const = default;

    ScaledQuadratic real_part() const;
    ScaledQuadratic imag_part() const;

    /// "(c0,c1,c2,c3; e)".
    std::string str() const;

   private:
    void canonicalize();

    std::array<Integer, 4> c_{};
    int e_ = 0;
};

/// Re(a) as p + q sqrt2 times a power of 2.
ScaledQuadratic real_part_as_quadratic(const ExactAmplitude &a);

/// For a value with zero imaginary part lying in [0, 1]; throws std::domain_error otherwise.
ScaledQuadratic checked_probability(const ExactAmplitude &a);

}  // namespace pbcsim
