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

#include "pbcsim/octic.h"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pbcsim {

namespace {

[[noreturn]] void overflow() {
    throw std::overflow_error("exact arithmetic overflowed 128-bit coefficients");
}

int sign_of(Integer v) {
    return (v > 0) - (v < 0);
}

long double to_ld(Integer v) {
    return static_cast<long double>(v);
}

constexpr long double SQRT2 = 1.414213562373095048801688724209698079L;

// Accurate p + q sqrt2 even under cancellation.
long double quadratic_value(Integer p, Integer q) {
    if (sign_of(p) * sign_of(q) >= 0) {
        return to_ld(p) + to_ld(q) * SQRT2;
    }
    // (p^2 - 2 q^2) / (p - q sqrt2), numerator exact when it fits.
    Integer num;
    Integer pp, qq, qq2;
    if (__builtin_mul_overflow(p, p, &pp) || __builtin_mul_overflow(q, q, &qq) ||
        __builtin_mul_overflow(qq, Integer{2}, &qq2) || __builtin_sub_overflow(pp, qq2, &num)) {
        return to_ld(p) + to_ld(q) * SQRT2;
    }
    return to_ld(num) / (to_ld(p) - to_ld(q) * SQRT2);
}

void skip_space(std::string_view text, size_t &pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        pos++;
    }
}

void expect_char(std::string_view text, size_t &pos, char c) {
    skip_space(text, pos);
    if (pos >= text.size() || text[pos] != c) {
        throw std::invalid_argument(
            "expected '" + std::string(1, c) + "' at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
    }
    pos++;
}

std::string_view take_number(std::string_view text, size_t &pos) {
    skip_space(text, pos);
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        pos++;
    }
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        pos++;
    }
    return text.substr(start, pos - start);
}

}  // namespace

std::string integer_to_string(Integer v) {
    if (v == 0) {
        return "0";
    }
    bool neg = v < 0;
    // Work with negative values so the minimum is representable.
    Integer t = neg ? v : -v;
    std::string digits;
    while (t != 0) {
        digits.push_back(static_cast<char>('0' - static_cast<int>(t % 10)));
        t /= 10;
    }
    if (neg) {
        digits.push_back('-');
    }
    return std::string(digits.rbegin(), digits.rend());
}

Integer parse_integer(std::string_view text) {
    size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        neg = text[pos] == '-';
        pos++;
    }
    if (pos == text.size()) {
        throw std::invalid_argument("expected an integer, got \"" + std::string(text) + "\"");
    }
    Integer v = 0;
    for (; pos < text.size(); pos++) {
        char c = text[pos];
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("expected an integer, got \"" + std::string(text) + "\"");
        }
        v = checked_add(checked_mul(v, 10), neg ? -(c - '0') : (c - '0'));
    }
    return v;
}

Integer checked_add(Integer a, Integer b) {
    Integer r;
    if (__builtin_add_overflow(a, b, &r)) {
        overflow();
    }
    return r;
}

Integer checked_sub(Integer a, Integer b) {
    Integer r;
    if (__builtin_sub_overflow(a, b, &r)) {
        overflow();
    }
    return r;
}

Integer checked_mul(Integer a, Integer b) {
    Integer r;
    if (__builtin_mul_overflow(a, b, &r)) {
        overflow();
    }
    return r;
}

Integer checked_shift(Integer a, int k) {
    if (k < 0) {
        throw std::invalid_argument("negative shift");
    }
    if (a == 0) {
        return 0;
    }
    if (k >= 126) {
        overflow();
    }
    return checked_mul(a, Integer{1} << k);
}

int QuadraticInteger::sign() const {
    int sp = sign_of(p);
    int sq = sign_of(q);
    if (sp == 0) {
        return sq;
    }
    if (sq == 0 || sp == sq) {
        return sp;
    }
    // Opposite signs: compare p^2 with 2 q^2.
    Integer lhs = checked_mul(p, p);
    Integer rhs = checked_mul(checked_mul(q, q), 2);
    int mag = sign_of(checked_sub(lhs, rhs));
    return sp * mag;
}

double QuadraticInteger::to_double() const {
    return static_cast<double>(quadratic_value(p, q));
}

QuadraticInteger QuadraticInteger::operator-() const {
    return {checked_sub(0, p), checked_sub(0, q)};
}

QuadraticInteger QuadraticInteger::operator+(const QuadraticInteger &o) const {
    return {checked_add(p, o.p), checked_add(q, o.q)};
}

QuadraticInteger QuadraticInteger::operator-(const QuadraticInteger &o) const {
    return {checked_sub(p, o.p), checked_sub(q, o.q)};
}

QuadraticInteger QuadraticInteger::operator*(const QuadraticInteger &o) const {
    Integer a = checked_add(checked_mul(p, o.p), checked_mul(checked_mul(q, o.q), 2));
    Integer b = checked_add(checked_mul(p, o.q), checked_mul(q, o.p));
    return {a, b};
}

ScaledQuadratic::ScaledQuadratic(QuadraticInteger value, int exp) : value_(value), exp_(exp) {
    if (value_.is_zero()) {
        exp_ = 0;
        return;
    }
    while (value_.p % 2 == 0 && value_.q % 2 == 0) {
        value_.p /= 2;
        value_.q /= 2;
        exp_++;
    }
}

double ScaledQuadratic::to_double() const {
    return static_cast<double>(std::ldexp(quadratic_value(value_.p, value_.q), exp_));
}

ScaledQuadratic ScaledQuadratic::operator+(const ScaledQuadratic &o) const {
    if (is_zero()) {
        return o;
    }
    if (o.is_zero()) {
        return *this;
    }
    int e = std::min(exp_, o.exp_);
    QuadraticInteger a{checked_shift(value_.p, exp_ - e), checked_shift(value_.q, exp_ - e)};
    QuadraticInteger b{checked_shift(o.value_.p, o.exp_ - e), checked_shift(o.value_.q, o.exp_ - e)};
    return {a + b, e};
}

ScaledQuadratic ScaledQuadratic::operator*(const ScaledQuadratic &o) const {
    return {value_ * o.value_, exp_ + o.exp_};
}

std::string ScaledQuadratic::str() const {
    return "(" + integer_to_string(value_.p) + ", " + integer_to_string(value_.q) + ", " + std::to_string(exp_) + ")";
}

ScaledQuadratic ScaledQuadratic::parse(std::string_view text) {
    size_t pos = 0;
    expect_char(text, pos, '(');
    Integer p = parse_integer(take_number(text, pos));
    expect_char(text, pos, ',');
    Integer q = parse_integer(take_number(text, pos));
    expect_char(text, pos, ',');
    Integer e = parse_integer(take_number(text, pos));
    expect_char(text, pos, ')');
    skip_space(text, pos);
    if (pos != text.size()) {
        throw std::invalid_argument("trailing characters after \"(p, q, e)\" in \"" + std::string(text) + "\"");
    }
    if (e > 100000 || e < -100000) {
        throw std::invalid_argument("exponent out of range in \"" + std::string(text) + "\"");
    }
    return {p, q, static_cast<int>(e)};
}

ExactAmplitude::ExactAmplitude(Integer c0, Integer c1, Integer c2, Integer c3, int e) : c_{c0, c1, c2, c3}, e_(e) {
    canonicalize();
}

ExactAmplitude::ExactAmplitude(const ScaledQuadratic &q)
    : ExactAmplitude(q.value().p, q.value().q, 0, checked_sub(0, q.value().q), 2 * q.exp()) {
}

ExactAmplitude ExactAmplitude::omega_power(int k) {
    int r = ((k % 8) + 8) % 8;
    ExactAmplitude out;
    out.c_[r % 4] = r < 4 ? 1 : -1;
    return out;
}

void ExactAmplitude::canonicalize() {
    if (is_zero()) {
        e_ = 0;
        return;
    }
    // Divide by sqrt2 while the coefficient vector stays integral.
    while (((c_[0] ^ c_[2]) & 1) == 0 && ((c_[1] ^ c_[3]) & 1) == 0) {
        Integer n0 = checked_sub(c_[1], c_[3]) / 2;
        Integer n1 = checked_add(c_[0], c_[2]) / 2;
        Integer n2 = checked_add(c_[1], c_[3]) / 2;
        Integer n3 = checked_sub(c_[2], c_[0]) / 2;
        c_ = {n0, n1, n2, n3};
        e_++;
    }
}

bool ExactAmplitude::is_zero() const {
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool ExactAmplitude::is_real() const {
    return c_[2] == 0 && c_[1] + c_[3] == 0;
}

ExactAmplitude ExactAmplitude::conj() const {
    // omega -> -omega^3, omega^2 -> -omega^2, omega^3 -> -omega.
    return {c_[0], checked_sub(0, c_[3]), checked_sub(0, c_[2]), checked_sub(0, c_[1]), e_};
}

std::complex<double> ExactAmplitude::to_complex() const {
    long double re = to_ld(c_[0]) + to_ld(c_[1] - c_[3]) / SQRT2;
    long double im = to_ld(c_[2]) + to_ld(c_[1] + c_[3]) / SQRT2;
    long double scale = std::ldexp(1.0L, e_ / 2 - (e_ < 0 && e_ % 2 != 0 ? 1 : 0));
    if (e_ % 2 != 0) {
        scale *= SQRT2;
    }
    return {static_cast<double>(re * scale), static_cast<double>(im * scale)};
}

ExactAmplitude ExactAmplitude::operator-() const {
    ExactAmplitude out = *this;
    for (auto &c : out.c_) {
        c = checked_sub(0, c);
    }
    return out;
}

namespace {

// Coefficients of x * sqrt2^k for k >= 0.
std::array<Integer, 4> lift(std::array<Integer, 4> c, int k) {
    int shift = k / 2;
    for (auto &v : c) {
        v = checked_shift(v, shift);
    }
    if (k % 2) {
        c = {checked_sub(c[1], c[3]), checked_add(c[0], c[2]), checked_add(c[1], c[3]), checked_sub(c[2], c[0])};
    }
    return c;
}

}  // namespace

ExactAmplitude ExactAmplitude::operator+(const ExactAmplitude &o) const {
    if (is_zero()) {
        return o;
    }
    if (o.is_zero()) {
        return *this;
    }
    int e = std::min(e_, o.e_);
    auto a = lift(c_, e_ - e);
    auto b = lift(o.c_, o.e_ - e);
    return {checked_add(a[0], b[0]), checked_add(a[1], b[1]), checked_add(a[2], b[2]), checked_add(a[3], b[3]), e};
}

ExactAmplitude ExactAmplitude::operator*(const ExactAmplitude &o) const {
    std::array<Integer, 4> r{};
    for (int i = 0; i < 4; i++) {
        if (c_[i] == 0) {
            continue;
        }
        for (int j = 0; j < 4; j++) {
            Integer t = checked_mul(c_[i], o.c_[j]);
            int k = i + j;
            if (k >= 4) {
                r[k - 4] = checked_sub(r[k - 4], t);
            } else {
                r[k] = checked_add(r[k], t);
            }
        }
    }
    return {r[0], r[1], r[2], r[3], e_ + o.e_};
}

ExactAmplitude ExactAmplitude::times_sqrt2_power(int k) const {
    if (is_zero()) {
        return *this;
    }
    ExactAmplitude out = *this;
    out.e_ += k;
    return out;
}

namespace {

// (x + y / sqrt2) * sqrt2^e as a ScaledQuadratic.
ScaledQuadratic combine(Integer x, Integer y, int e) {
    if (e % 2 == 0) {
        return {checked_mul(x, 2), y, e / 2 - 1};
    }
    // Odd e: sqrt2^e = sqrt2 * 2^((e-1)/2).
    return {y, x, (e - 1) / 2};
}

}  // namespace

ScaledQuadratic ExactAmplitude::real_part() const {
    return combine(c_[0], checked_sub(c_[1], c_[3]), e_);
}

ScaledQuadratic ExactAmplitude::imag_part() const {
    return combine(c_[2], checked_add(c_[1], c_[3]), e_);
}

std::string ExactAmplitude::str() const {
    return "(" + integer_to_string(c_[0]) + "," + integer_to_string(c_[1]) + "," + integer_to_string(c_[2]) + "," +
           integer_to_string(c_[3]) + "; " + std::to_string(e_) + ")";
}

ScaledQuadratic real_part_as_quadratic(const ExactAmplitude &a) {
    return a.real_part();
}

ScaledQuadratic checked_probability(const ExactAmplitude &a) {
    if (!a.is_real()) {
        throw std::domain_error("probability has a nonzero imaginary part: " + a.str());
    }
    ScaledQuadratic p = a.real_part();
    if (p.sign() < 0 || ScaledQuadratic::from_int(1) < p) {
        throw std::domain_error("probability outside [0, 1]: " + p.str());
    }
    return p;
}

}  // namespace pbcsim
