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

#include "pbcsim/f2linalg.h"

#include <bit>
#include <stdexcept>

namespace pbcsim {

namespace detail {

void throw_bit_index(size_t i, size_t len) {
    throw std::out_of_range("bit index " + std::to_string(i) + " out of range for length " + std::to_string(len));
}

void throw_length_mismatch(size_t a, size_t b) {
    throw std::invalid_argument("bit vector length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void throw_row_index(size_t r, size_t rows) {
    throw std::out_of_range("row index " + std::to_string(r) + " out of range for " + std::to_string(rows) + " rows");
}

}  // namespace detail

namespace {

constexpr size_t WORD_BITS = 64;

size_t num_words(size_t len) {
    return (len + WORD_BITS - 1) / WORD_BITS;
}

}  // namespace

BitVector::BitVector(size_t len) : len_(len), words_(num_words(len), 0) {
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector result(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            result.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string contains a character other than '0' or '1'");
        }
    }
    return result;
}

BitVector BitVector::from_uint(size_t len, uint64_t value) {
    if (len < 64 && (value >> len) != 0) {
        throw std::invalid_argument("value does not fit in the requested bit length");
    }
    BitVector result(len);
    if (len > 0) {
        result.words_[0] = value;
    }
    return result;
}

BitVector BitVector::unit(size_t len, size_t index) {
    BitVector result(len);
    result.set(index, true);
    return result;
}

BitVector BitVector::ones(size_t len) {
    BitVector result(len);
    for (size_t i = 0; i < len; i++) {
        result.set(i, true);
    }
    return result;
}

size_t BitVector::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVector::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

size_t BitVector::first_set() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return w * WORD_BITS + std::countr_zero(words_[w]);
        }
    }
    return len_;
}

BitVector BitVector::slice(size_t begin, size_t len) const {
    if (begin + len > len_) {
        throw std::out_of_range("slice exceeds bit vector length");
    }
    BitVector result(len);
    for (size_t i = 0; i < len; i++) {
        if (get(begin + i)) {
            result.set(i, true);
        }
    }
    return result;
}

BitVector BitVector::concat(const BitVector &tail) const {
    BitVector result(len_ + tail.len_);
    for (size_t i = 0; i < len_; i++) {
        if (get(i)) {
            result.set(i, true);
        }
    }
    for (size_t i = 0; i < tail.len_; i++) {
        if (tail.get(i)) {
            result.set(len_ + i, true);
        }
    }
    return result;
}

uint64_t BitVector::to_uint() const {
    if (len_ > 64) {
        throw std::out_of_range("bit vector longer than 64 bits cannot be packed into an integer");
    }
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::str() const {
    std::string out(len_, '0');
    for (size_t i = 0; i < len_; i++) {
        if (get(i)) {
            out[i] = '1';
        }
    }
    return out;
}

BitMatrix::BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix result(n, n);
    for (size_t i = 0; i < n; i++) {
        result.set(i, i, true);
    }
    return result;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
    if (rows.empty()) {
        return BitMatrix();
    }
    std::vector<BitVector> parsed;
    for (const auto &r : rows) {
        parsed.push_back(BitVector::from_string(r));
    }
    size_t cols = parsed[0].size();
    return from_rows(cols, std::move(parsed));
}

BitMatrix BitMatrix::from_rows(size_t cols, std::vector<BitVector> rows) {
    BitMatrix result(0, cols);
    for (auto &r : rows) {
        result.append_row(r);
    }
    return result;
}

BitVector BitMatrix::col(size_t c) const {
    if (c >= cols_) {
        throw std::out_of_range("column index out of range");
    }
    BitVector result(rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        if (rows_[r].get(c)) {
            result.set(r, true);
        }
    }
    return result;
}

void BitMatrix::append_row(const BitVector &r) {
    if (r.size() != cols_) {
        throw std::invalid_argument("appended row has the wrong length");
    }
    rows_.push_back(r);
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    std::swap(row(a), row(b));
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix result(cols_, rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        auto words = rows_[r].words();
        for (size_t w = 0; w < words.size(); w++) {
            for (uint64_t bits = words[w]; bits; bits &= bits - 1) {
                result.rows_[w * 64 + std::countr_zero(bits)].set(r, true);
            }
        }
    }
    return result;
}

bool BitMatrix::is_symmetric() const {
    return rows() == cols() && *this == transpose();
}

bool BitMatrix::is_zero() const {
    for (const auto &r : rows_) {
        if (r.any()) {
            return false;
        }
    }
    return true;
}

std::string BitMatrix::str() const {
    std::string out;
    for (const auto &r : rows_) {
        out += r.str();
        out += '\n';
    }
    return out;
}

BitVector operator*(const BitVector &v, const BitMatrix &m) {
    if (v.size() != m.rows()) {
        throw std::invalid_argument("vector length does not match matrix row count");
    }
    BitVector result(m.cols());
    auto words = v.words();
    for (size_t w = 0; w < words.size(); w++) {
        for (uint64_t bits = words[w]; bits; bits &= bits - 1) {
            result ^= m.row(w * 64 + std::countr_zero(bits));
        }
    }
    return result;
}

BitVector mul_column(const BitMatrix &m, const BitVector &v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("vector length does not match matrix column count");
    }
    BitVector result(m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        if (m.row(r).dot(v)) {
            result.set(r, true);
        }
    }
    return result;
}

BitMatrix operator*(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix dimension mismatch in product");
    }
    BitMatrix result(0, b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        result.append_row(a.row(r) * b);
    }
    return result;
}

BitMatrix operator^(const BitMatrix &a, const BitMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix dimension mismatch in sum");
    }
    BitMatrix result = a;
    for (size_t r = 0; r < a.rows(); r++) {
        result.row(r) ^= b.row(r);
    }
    return result;
}

RowEchelon row_reduce(const BitMatrix &m) {
    RowEchelon out{m, BitMatrix::identity(m.rows()), {}};
    size_t next = 0;
    for (size_t c = 0; c < m.cols() && next < m.rows(); c++) {
        size_t p = next;
        while (p < m.rows() && !out.reduced.get(p, c)) {
            p++;
        }
        if (p == m.rows()) {
            continue;
        }
        out.reduced.swap_rows(p, next);
        out.transform.swap_rows(p, next);
        for (size_t r = 0; r < m.rows(); r++) {
            if (r != next && out.reduced.get(r, c)) {
                out.reduced.row(r) ^= out.reduced.row(next);
                out.transform.row(r) ^= out.transform.row(next);
            }
        }
        out.pivots.push_back(c);
        next++;
    }
    return out;
}

size_t rank(const BitMatrix &m) {
    return row_reduce(m).pivots.size();
}

SymplecticForm symplectic_canonicalize(const BitMatrix &h) {
    size_t n = h.rows();
    if (h.cols() != n || !h.is_symmetric()) {
        throw std::invalid_argument("symplectic_canonicalize needs a symmetric matrix");
    }
    for (size_t i = 0; i < n; i++) {
        if (h.get(i, i)) {
            throw std::invalid_argument("symplectic_canonicalize needs a zero diagonal");
        }
    }

    // Symplectic Gram-Schmidt on the standard basis.
    std::vector<BitVector> pending;
    for (size_t i = n; i-- > 0;) {
        pending.push_back(BitVector::unit(n, i));
    }
    std::vector<BitVector> pairs;
    std::vector<BitVector> radical;
    while (!pending.empty()) {
        BitVector a = std::move(pending.back());
        pending.pop_back();
        // h is symmetric, so the form (a, c) is c . (h a).
        BitVector ha = mul_column(h, a);
        size_t partner = pending.size();
        for (size_t j = pending.size(); j-- > 0;) {
            if (pending[j].dot(ha)) {
                partner = j;
                break;
            }
        }
        if (partner == pending.size()) {
            radical.push_back(std::move(a));
            continue;
        }
        BitVector b = std::move(pending[partner]);
        pending.erase(pending.begin() + partner);
        BitVector hb = mul_column(h, b);
        for (auto &c : pending) {
            bool cb = c.dot(hb);
            bool ca = c.dot(ha);
            if (cb) {
                c ^= a;
            }
            if (ca) {
                c ^= b;
            }
        }
        pairs.push_back(std::move(a));
        pairs.push_back(std::move(b));
    }

    SymplecticForm out{BitMatrix(n, n), pairs.size() / 2};
    size_t col = 0;
    for (const auto *group : {&pairs, &radical}) {
        for (const auto &v : *group) {
            for (size_t r = 0; r < n; r++) {
                if (v.get(r)) {
                    out.transform.set(r, col, true);
                }
            }
            col++;
        }
    }
    return out;
}

std::optional<LinearSolution> solve_linear(const BitMatrix &a, const BitVector &b) {
    if (b.size() != a.rows()) {
        throw std::invalid_argument(
            "solve_linear: right-hand side has length " + std::to_string(b.size()) + " but the matrix has " +
            std::to_string(a.rows()) + " rows");
    }
    RowEchelon re = row_reduce(a);
    BitVector rhs = mul_column(re.transform, b);
    size_t r = re.pivots.size();
    for (size_t i = r; i < a.rows(); i++) {
        if (rhs.get(i)) {
            return std::nullopt;
        }
    }
    LinearSolution out{BitVector(a.cols()), {}};
    for (size_t i = 0; i < r; i++) {
        if (rhs.get(i)) {
            out.particular.set(re.pivots[i], true);
        }
    }
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t p : re.pivots) {
        is_pivot[p] = true;
    }
    for (size_t c = 0; c < a.cols(); c++) {
        if (is_pivot[c]) {
            continue;
        }
        BitVector k = BitVector::unit(a.cols(), c);
        for (size_t i = 0; i < r; i++) {
            if (re.reduced.get(i, c)) {
                k.set(re.pivots[i], true);
            }
        }
        out.kernel.push_back(k);
    }
    return out;
}

}  // namespace pbcsim
