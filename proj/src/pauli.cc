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

#include "pbcsim/pauli.h"

#include <bit>
#include <stdexcept>

namespace pbcsim {

namespace {

uint64_t dense_mask(const BitVector &v) {
    size_t n = v.size();
    if (n > 30) {
        throw std::invalid_argument("dense Pauli action is limited to 30 qubits");
    }
    uint64_t m = 0;
    for (size_t q = 0; q < n; q++) {
        if (v.get(q)) {
            m |= uint64_t{1} << (n - 1 - q);
        }
    }
    return m;
}

const std::complex<double> I_POWERS[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliOperator::PauliOperator(size_t n) : x_(n), z_(n), phase_(0) {
}

PauliOperator::PauliOperator(BitVector x, BitVector z, int phase) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) {
        throw std::invalid_argument("Pauli x and z parts have different lengths");
    }
    phase_ = ((phase % 4) + 4) % 4;
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase += text[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        pos++;
    }
    size_t n = text.size() - pos;
    PauliOperator p(n);
    for (size_t q = 0; q < n; q++) {
        char c = text[pos + q];
        switch (c) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x_.set(q, true);
                break;
            case 'Z':
                p.z_.set(q, true);
                break;
            case 'Y':
                p.x_.set(q, true);
                p.z_.set(q, true);
                phase += 1;
                break;
            default:
                throw std::invalid_argument(
                    "invalid Pauli character '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
        }
    }
    p.phase_ = phase % 4;
    return p;
}

PauliOperator PauliOperator::single(size_t n, size_t q, char kind) {
    if (q >= n) {
        throw std::out_of_range("qubit index out of range");
    }
    std::string s(n, 'I');
    s[q] = kind;
    return from_string(s);
}

char PauliOperator::kind(size_t q) const {
    bool x = x_.get(q);
    bool z = z_.get(q);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

int PauliOperator::sign_exponent() const {
    int ys = static_cast<int>((x_ & z_).popcount() % 4);
    return ((phase_ - ys) % 4 + 4) % 4;
}

bool PauliOperator::is_hermitian() const {
    return (phase_ & 1) == static_cast<int>(x_.dot(z_));
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t q = 0; q < num_qubits(); q++) {
        w += x_.get(q) || z_.get(q);
    }
    return w;
}

bool PauliOperator::commutes(const PauliOperator &other) const {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli qubit count mismatch");
    }
    return x_.dot(other.z_) == z_.dot(other.x_);
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli qubit count mismatch");
    }
    // Z(z1) X(x2) = (-1)^(z1.x2) X(x2) Z(z1).
    int phase = phase_ + other.phase_ + (z_.dot(other.x_) ? 2 : 0);
    return PauliOperator(x_ ^ other.x_, z_ ^ other.z_, phase);
}

PauliOperator PauliOperator::operator-() const {
    return times_i_power(2);
}

PauliOperator PauliOperator::times_i_power(int k) const {
    return PauliOperator(x_, z_, phase_ + k);
}

PauliOperator PauliOperator::tensor(const PauliOperator &other) const {
    return PauliOperator(x_.concat(other.x_), z_.concat(other.z_), phase_ + other.phase_);
}

PauliOperator PauliOperator::slice(size_t begin, size_t len) const {
    PauliOperator out(x_.slice(begin, len), z_.slice(begin, len), 0);
    // Keep the same letter-level sign.
    int ys_full = static_cast<int>((x_ & z_).popcount());
    int ys_part = static_cast<int>((out.x_ & out.z_).popcount());
    out.phase_ = (((phase_ - ys_full + ys_part) % 4) + 4) % 4;
    return out;
}

std::string PauliOperator::str() const {
    static const char *SIGNS[4] = {"+", "+i", "-", "-i"};
    std::string out = SIGNS[sign_exponent()];
    for (size_t q = 0; q < num_qubits(); q++) {
        out += kind(q);
    }
    return out;
}

Eigen::MatrixXcd PauliOperator::to_matrix() const {
    size_t dim = size_t{1} << num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t v = 0; v < dim; v++) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e[v] = 1;
        m.col(v) = apply(e);
    }
    return m;
}

Eigen::VectorXcd PauliOperator::apply(const Eigen::VectorXcd &state) const {
    size_t dim = size_t{1} << num_qubits();
    if (static_cast<size_t>(state.size()) != dim) {
        throw std::invalid_argument("state dimension does not match the Pauli qubit count");
    }
    uint64_t xm = dense_mask(x_);
    uint64_t zm = dense_mask(z_);
    Eigen::VectorXcd out(dim);
    for (uint64_t v = 0; v < dim; v++) {
        auto amp = I_POWERS[phase_] * state[v];
        out[v ^ xm] = (std::popcount(zm & v) & 1) ? -amp : amp;
    }
    return out;
}

StabilizerGroupTracker::Classification StabilizerGroupTracker::classify(const PauliOperator &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli qubit count does not match the tracked group");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("measured Pauli " + p.str() + " is not hermitian");
    }
    for (size_t k = 0; k < generators_.size(); k++) {
        if (!generators_[k].commutes(p)) {
            return {Relation::Anticommutes, k, 1};
        }
    }
    PauliOperator r = p;
    for (const auto &[pivot, elem] : reduced_) {
        bool bit = pivot < n_ ? r.x().get(pivot) : r.z().get(pivot - n_);
        if (bit) {
            r = r * elem;
        }
    }
    if (!r.is_identity_up_to_phase()) {
        return {Relation::Independent, 0, 1};
    }
    return {Relation::Dependent, 0, r.phase() == 0 ? 1 : -1};
}

void StabilizerGroupTracker::add(const PauliOperator &p) {
    auto c = classify(p);
    if (c.relation != Relation::Independent) {
        throw std::invalid_argument("generator " + p.str() + " is not independent and commuting");
    }
    PauliOperator r = p;
    for (const auto &[pivot, elem] : reduced_) {
        bool bit = pivot < n_ ? r.x().get(pivot) : r.z().get(pivot - n_);
        if (bit) {
            r = r * elem;
        }
    }
    size_t pivot = r.x().first_set();
    if (pivot == n_) {
        pivot = n_ + r.z().first_set();
    }
    reduced_.push_back({pivot, r});
    generators_.push_back(p);
}

}  // namespace pbcsim
