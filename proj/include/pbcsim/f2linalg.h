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

/// Bit-packed linear algebra over F_2.
///
/// Convention used throughout the library: vectors are ROW vectors and act on
/// the left of matrices. A k x n matrix M maps u in F_2^k to uM in F_2^n, i.e.
/// uM is the XOR of the rows of M selected by u. Indices are logical; the word
/// size and bit order of the packing are not part of the public behavior.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pbcsim {

namespace detail {
[[noreturn]] void throw_bit_index(size_t i, size_t len);
[[noreturn]] void throw_length_mismatch(size_t a, size_t b);
[[noreturn]] void throw_row_index(size_t r, size_t rows);
}  // namespace detail

class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t len);

    /// Parses a string of '0'/'1' characters; position i is bit i.
    static BitVector from_string(std::string_view bits);
    /// Bit i of `value` becomes entry i.
    static BitVector from_uint(size_t len, uint64_t value);
    static BitVector unit(size_t len, size_t index);
    static BitVector ones(size_t len);

    size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(size_t i, bool value) {
        check_index(i);
        uint64_t mask = uint64_t{1} << (i & 63);
        words_[i >> 6] = value ? (words_[i >> 6] | mask) : (words_[i >> 6] & ~mask);
    }
    void flip(size_t i) {
        check_index(i);
        words_[i >> 6] ^= uint64_t{1} << (i & 63);
    }
    bool operator[](size_t i) const { return get(i); }

    BitVector &operator^=(const BitVector &other) {
        check_same_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVector &operator&=(const BitVector &other) {
        check_same_size(other);
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector &b) { return a &= b; }

    /// Parity of the bitwise AND.
    bool dot(const BitVector &other) const {
        check_same_size(other);
        uint64_t acc = 0;
        for (size_t w = 0; w < words_.size(); w++) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }
    size_t popcount() const;
    bool any() const;
    /// Index of the lowest set bit, or size() when all bits are zero.
    size_t first_set() const;
    /// Entries [begin, begin + len).
    BitVector slice(size_t begin, size_t len) const;
    BitVector concat(const BitVector &tail) const;
    /// Entry i becomes bit i of the result; requires size() <= 64.
    uint64_t to_uint() const;

    std::string str() const;
    std::span<const uint64_t> words() const { return words_; }

    bool operator==(const BitVector &other) const = default;

   private:
    void check_index(size_t i) const {
        if (i >= len_) {
            detail::throw_bit_index(i, len_);
        }
    }
    void check_same_size(const BitVector &other) const {
        if (other.len_ != len_) {
            detail::throw_length_mismatch(len_, other.len_);
        }
    }

    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);
    /// Rows given as '0'/'1' strings of equal length.
    static BitMatrix from_rows(const std::vector<std::string> &rows);
    static BitMatrix from_rows(size_t cols, std::vector<BitVector> rows);

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const { return row(r).get(c); }
    void set(size_t r, size_t c, bool value) { row(r).set(c, value); }
    void flip(size_t r, size_t c) { row(r).flip(c); }

    const BitVector &row(size_t r) const {
        if (r >= rows_.size()) {
            detail::throw_row_index(r, rows_.size());
        }
        return rows_[r];
    }
    BitVector &row(size_t r) {
        if (r >= rows_.size()) {
            detail::throw_row_index(r, rows_.size());
        }
        return rows_[r];
    }
    BitVector col(size_t c) const;
    void append_row(const BitVector &row);
    void swap_rows(size_t a, size_t b);

    BitMatrix transpose() const;
    bool is_symmetric() const;
    bool is_zero() const;

    std::string str() const;
    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Row vector times matrix: XOR of the rows of m selected by v.
BitVector operator*(const BitVector &v, const BitMatrix &m);
/// Matrix times column vector: entry r is row(r) . v.
BitVector mul_column(const BitMatrix &m, const BitVector &v);
BitMatrix operator*(const BitMatrix &a, const BitMatrix &b);
BitMatrix operator^(const BitMatrix &a, const BitMatrix &b);

size_t rank(const BitMatrix &m);

/// Reduced row echelon form. `transform` is invertible with transform * m == reduced.
struct RowEchelon {
    BitMatrix reduced;
    BitMatrix transform;
    std::vector<size_t> pivots;
};
RowEchelon row_reduce(const BitMatrix &m);

/// Alternating-form canonicalization: V is invertible and V^T H V has r blocks
/// [[0,1],[1,0]] on positions (2a, 2a+1), a < r, and zeros everywhere else.
struct SymplecticForm {
    BitMatrix transform;  // V
    size_t blocks = 0;    // r, with 2r == rank(H)
};
/// Throws std::invalid_argument unless h is square, symmetric, and zero on the diagonal.
SymplecticForm symplectic_canonicalize(const BitMatrix &h);

/// All solutions of A x^T = b^T (x has length A.cols(), b has length A.rows()).
struct LinearSolution {
    BitVector particular;
    std::vector<BitVector> kernel;
};
/// Returns nullopt when inconsistent. Throws std::invalid_argument when b has the wrong length.
std::optional<LinearSolution> solve_linear(const BitMatrix &a, const BitVector &b);

}  // namespace pbcsim
