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

#include "pbcsim/stab.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pbcsim {

namespace {

uint64_t to_index(const BitVector &bits) {
    size_t n = bits.size();
    uint64_t idx = 0;
    for (size_t q = 0; q < n; q++) {
        if (bits.get(q)) {
            idx |= uint64_t{1} << (n - 1 - q);
        }
    }
    return idx;
}

BitVector from_index(size_t n, uint64_t idx) {
    BitVector bits(n);
    for (size_t q = 0; q < n; q++) {
        if ((idx >> (n - 1 - q)) & 1) {
            bits.set(q, true);
        }
    }
    return bits;
}

void check_dense_limit(size_t n, size_t max_qubits) {
    if (n > max_qubits) {
        throw std::invalid_argument(
            "dense expansion of " + std::to_string(n) + " qubits exceeds the limit of " + std::to_string(max_qubits));
    }
}

// Calls visit(index, f(u)) for every u, stepping u in Gray-code order.
template <typename Visit>
void for_each_term(const AffineStabilizerState &s, Visit &&visit) {
    size_t k = s.dimension();
    size_t n = s.num_qubits();
    std::vector<uint64_t> row_index(k);
    for (size_t a = 0; a < k; a++) {
        row_index[a] = to_index(s.basis_matrix().row(a));
    }
    uint64_t idx = to_index(s.offset());
    BitVector u(k);
    visit(idx, s.phase().evaluate(u));
    for (uint64_t step = 1; step < (uint64_t{1} << k); step++) {
        size_t j = std::countr_zero(step);
        u.flip(j);
        idx ^= row_index[j];
        visit(idx, s.phase().evaluate(u));
    }
    (void)n;
}

const std::complex<double> &omega_float(int k) {
    static const std::array<std::complex<double>, 8> table = [] {
        std::array<std::complex<double>, 8> t;
        for (int j = 0; j < 8; j++) {
            t[j] = std::polar(1.0, j * std::numbers::pi / 4);
        }
        t[0] = 1;
        t[2] = {0, 1};
        t[4] = -1;
        t[6] = {0, -1};
        return t;
    }();
    return table[((k % 8) + 8) % 8];
}

}  // namespace

AffineStabilizerState::AffineStabilizerState(
    BitMatrix psi, BitVector offset, DegreeTwoPolynomial phase, ExactAmplitude scale)
    : offset_(std::move(offset)), scale_(scale) {
    if (psi.cols() != offset_.size()) {
        throw std::invalid_argument("affine state: basis matrix width differs from the qubit count");
    }
    if (phase.num_vars() != psi.rows()) {
        throw std::invalid_argument("affine state: phase polynomial variable count differs from the dimension");
    }
    RowEchelon re = row_reduce(psi);
    if (re.pivots.size() != psi.rows()) {
        throw std::invalid_argument("affine state: basis rows are linearly dependent");
    }
    // Psi' = R Psi, so u Psi = u' Psi' with u = u' R.
    psi_ = std::move(re.reduced);
    phase_ = phase.substitute(re.transform);
}

AffineStabilizerState AffineStabilizerState::basis(const BitVector &bits) {
    return AffineStabilizerState(BitMatrix(0, bits.size()), bits, DegreeTwoPolynomial(0));
}

void AffineStabilizerState::check_qubit(size_t q) const {
    if (q >= num_qubits()) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits()));
    }
}

AffineStabilizerState AffineStabilizerState::apply_x(size_t q) const {
    check_qubit(q);
    AffineStabilizerState out = *this;
    out.offset_.flip(q);
    return out;
}

AffineStabilizerState AffineStabilizerState::apply_z(size_t q) const {
    check_qubit(q);
    AffineStabilizerState out = *this;
    if (offset_.get(q)) {
        out.phase_.add_constant(4);
    }
    for (size_t a = 0; a < dimension(); a++) {
        if (psi_.get(a, q)) {
            out.phase_.add_linear(a, 2);
        }
    }
    return out;
}

AffineStabilizerState AffineStabilizerState::apply_cz(size_t i, size_t j) const {
    check_qubit(i);
    check_qubit(j);
    if (i == j) {
        throw std::invalid_argument("CZ needs two distinct qubits");
    }
    // (-1)^(x_i x_j) with x = z + u Psi.
    AffineStabilizerState out = *this;
    bool zi = offset_.get(i);
    bool zj = offset_.get(j);
    if (zi && zj) {
        out.phase_.add_constant(4);
    }
    size_t k = dimension();
    for (size_t a = 0; a < k; a++) {
        bool pai = psi_.get(a, i);
        bool paj = psi_.get(a, j);
        if ((zi && paj) ^ (zj && pai) ^ (pai && paj)) {
            out.phase_.add_linear(a, 2);
        }
        for (size_t b = a + 1; b < k; b++) {
            if ((pai && psi_.get(b, j)) ^ (psi_.get(b, i) && paj)) {
                out.phase_.flip_quadratic(a, b);
            }
        }
    }
    return out;
}

AffineStabilizerState AffineStabilizerState::scaled(const ExactAmplitude &factor) const {
    AffineStabilizerState out = *this;
    out.scale_ = scale_ * factor;
    return out;
}

AffineStabilizerState AffineStabilizerState::tensor(const AffineStabilizerState &other) const {
    size_t n1 = num_qubits();
    size_t n2 = other.num_qubits();
    BitMatrix psi(dimension() + other.dimension(), n1 + n2);
    for (size_t a = 0; a < dimension(); a++) {
        psi.row(a) = psi_.row(a).concat(BitVector(n2));
    }
    for (size_t a = 0; a < other.dimension(); a++) {
        psi.row(dimension() + a) = BitVector(n1).concat(other.psi_.row(a));
    }
    return AffineStabilizerState(
        std::move(psi), offset_.concat(other.offset_), phase_.direct_sum(other.phase_), scale_ * other.scale_);
}

Eigen::VectorXcd AffineStabilizerState::to_dense(size_t max_qubits) const {
    check_dense_limit(num_qubits(), max_qubits);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits());
    std::complex<double> s = scale_.to_complex();
    for_each_term(*this, [&](uint64_t idx, int f) {
        out[idx] += s * omega_float(f);
    });
    return out;
}

std::vector<ExactAmplitude> AffineStabilizerState::to_dense_exact(size_t max_qubits) const {
    check_dense_limit(num_qubits(), max_qubits);
    std::vector<ExactAmplitude> out(size_t{1} << num_qubits());
    for_each_term(*this, [&](uint64_t idx, int f) {
        out[idx] += scale_ * ExactAmplitude::omega_power(f);
    });
    return out;
}

AffineStabilizerState family_state(StateFamily kind, size_t n) {
    if (n == 0) {
        throw std::invalid_argument("family states need at least one qubit");
    }
    switch (kind) {
        case StateFamily::B_n0:
            return AffineStabilizerState::basis(BitVector(n));
        case StateFamily::B_nn:
            return AffineStabilizerState::basis(BitVector::ones(n));
        case StateFamily::E_n:
        case StateFamily::O_n: {
            BitMatrix psi(n - 1, n);
            for (size_t a = 0; a + 1 < n; a++) {
                psi.set(a, a, true);
                psi.set(a, n - 1, true);
            }
            BitVector z(n);
            if (kind == StateFamily::O_n) {
                z.set(0, true);
            }
            return AffineStabilizerState(std::move(psi), z, DegreeTwoPolynomial(n - 1));
        }
        case StateFamily::K_n: {
            DegreeTwoPolynomial f(n);
            for (size_t a = 0; a < n; a++) {
                for (size_t b = a + 1; b < n; b++) {
                    f.flip_quadratic(a, b);
                }
            }
            return AffineStabilizerState(BitMatrix::identity(n), BitVector(n), f);
        }
    }
    throw std::invalid_argument("unknown state family");
}

AffineStabilizerState affine_from_dense(const Eigen::VectorXcd &state, double tolerance) {
    size_t dim = static_cast<size_t>(state.size());
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dense state length is not a power of two");
    }
    size_t n = std::countr_zero(dim);
    std::vector<uint64_t> support;
    for (uint64_t i = 0; i < dim; i++) {
        if (std::abs(state[i]) > tolerance) {
            support.push_back(i);
        }
    }
    if (support.empty()) {
        throw std::invalid_argument("dense state is zero");
    }
    size_t count = support.size();
    if ((count & (count - 1)) != 0) {
        throw std::invalid_argument("support size is not a power of two");
    }
    size_t k = std::countr_zero(count);
    BitVector z = from_index(n, support[0]);
    BitMatrix diffs(0, n);
    for (uint64_t s : support) {
        diffs.append_row(from_index(n, s ^ support[0]));
    }
    RowEchelon re = row_reduce(diffs);
    if (re.pivots.size() != k) {
        throw std::invalid_argument("support is not an affine subspace");
    }
    BitMatrix psi(0, n);
    for (size_t a = 0; a < k; a++) {
        psi.append_row(re.reduced.row(a));
    }

    std::complex<double> base = state[support[0]];
    double log_mag = 2 * std::log2(std::abs(base));
    int p = static_cast<int>(std::lround(log_mag));
    int m = static_cast<int>(std::lround(std::arg(base) / (std::numbers::pi / 4)));
    ExactAmplitude scale = ExactAmplitude::sqrt2_power(p) * ExactAmplitude::omega_power(m);
    if (std::abs(scale.to_complex() - base) > tolerance) {
        throw std::invalid_argument("amplitude is not a power of sqrt2 times a power of omega");
    }

    std::vector<uint64_t> row_index(k);
    for (size_t a = 0; a < k; a++) {
        row_index[a] = to_index(psi.row(a));
    }
    auto quarter_turns = [&](uint64_t u) -> int {
        uint64_t idx = support[0];
        for (size_t a = 0; a < k; a++) {
            if ((u >> a) & 1) {
                idx ^= row_index[a];
            }
        }
        std::complex<double> r = state[idx] / base;
        for (int j = 0; j < 4; j++) {
            if (std::abs(r - omega_float(2 * j)) < tolerance * 4 / std::abs(base)) {
                return j;
            }
        }
        throw std::invalid_argument("relative phase is not a power of i");
    };
    DegreeTwoPolynomial f(k);
    std::vector<int> single(k);
    for (size_t a = 0; a < k; a++) {
        single[a] = quarter_turns(uint64_t{1} << a);
        f.set_linear(a, single[a]);
    }
    for (size_t a = 0; a < k; a++) {
        for (size_t b = a + 1; b < k; b++) {
            int d = ((quarter_turns((uint64_t{1} << a) | (uint64_t{1} << b)) - single[a] - single[b]) % 4 + 4) % 4;
            if (d == 2) {
                f.flip_quadratic(a, b);
            } else if (d != 0) {
                throw std::invalid_argument("phase pattern is not quadratic");
            }
        }
    }
    AffineStabilizerState out(psi, z, f, scale);
    Eigen::VectorXcd check = out.to_dense(std::max<size_t>(n, DEFAULT_DENSE_QUBIT_LIMIT));
    if ((check - state).norm() > tolerance * std::sqrt(static_cast<double>(dim)) * 4) {
        throw std::invalid_argument("dense vector is not a stabilizer state");
    }
    return out;
}

Eigen::MatrixXcd ProjectorForm::to_dense() const {
    size_t n = num_qubits;
    check_dense_limit(n, 12);
    size_t t = num_generators();
    size_t dim = size_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    double norm = std::ldexp(1.0, -static_cast<int>(t));
    for (uint64_t xi = 0; xi < dim; xi++) {
        BitVector x = from_index(n, xi);
        for (uint64_t yi = 0; yi < (uint64_t{1} << t); yi++) {
            BitVector y = BitVector::from_uint(t, yi);
            int phase = g.evaluate(y) + ((y * b).dot(x) ? 4 : 0);
            m(to_index(x ^ (y * a)), xi) += norm * omega_float(phase);
        }
    }
    return m;
}

ProjectorForm projector_form(size_t n, const std::vector<PauliOperator> &generators) {
    StabilizerGroupTracker tracker(n);
    for (const auto &p : generators) {
        if (p.num_qubits() != n) {
            throw std::invalid_argument("generator " + p.str() + " has the wrong qubit count");
        }
        auto c = tracker.classify(p);
        if (c.relation == StabilizerGroupTracker::Relation::Anticommutes) {
            throw std::invalid_argument("generators " + p.str() + " and " + tracker.generators()[c.generator].str() +
                                        " anticommute");
        }
        if (c.relation == StabilizerGroupTracker::Relation::Dependent) {
            throw std::invalid_argument("generator " + p.str() + " depends on earlier generators");
        }
        tracker.add(p);
    }
    size_t t = generators.size();
    ProjectorForm out{n, BitMatrix(t, n), BitMatrix(t, n), DegreeTwoPolynomial(t)};
    for (size_t k = 0; k < t; k++) {
        out.a.row(k) = generators[k].x();
        out.b.row(k) = generators[k].z();
        out.g.set_linear(k, generators[k].phase());
    }
    for (size_t k = 0; k < t; k++) {
        for (size_t l = k + 1; l < t; l++) {
            if (out.b.row(k).dot(out.a.row(l))) {
                out.g.flip_quadratic(k, l);
            }
        }
    }
    return out;
}

ExactAmplitude inner_product_projected(
    const AffineStabilizerState &psi, const ProjectorForm &pi, const AffineStabilizerState &phi) {
    size_t n = psi.num_qubits();
    if (phi.num_qubits() != n || pi.num_qubits != n) {
        throw std::invalid_argument("inner_product_projected: qubit counts differ");
    }
    size_t k = psi.dimension();
    size_t m = phi.dimension();
    size_t t = pi.num_generators();
    // Variables: u (k) | v (m) | x (n) | y (t). The x sum enforces
    // z + u Psi = z' + v Phi + y A.
    size_t ou = 0, ov = k, ox = k + m, oy = k + m + n;
    DegreeTwoPolynomial f = psi.phase().negated().direct_sum(phi.phase()).extended(n).direct_sum(pi.g);

    const BitMatrix &Psi = psi.basis_matrix();
    const BitMatrix &Phi = phi.basis_matrix();
    const BitVector &z1 = psi.offset();
    const BitVector &z2 = phi.offset();

    BitVector bz = mul_column(pi.b, z2);
    for (size_t j = 0; j < t; j++) {
        if (bz.get(j)) {
            f.add_linear(oy + j, 2);
        }
        for (size_t b = 0; b < m; b++) {
            if (pi.b.row(j).dot(Phi.row(b))) {
                f.flip_quadratic(oy + j, ov + b);
            }
        }
    }
    BitVector zs = z1 ^ z2;
    for (size_t i = 0; i < n; i++) {
        if (zs.get(i)) {
            f.add_linear(ox + i, 2);
        }
        for (size_t a = 0; a < k; a++) {
            if (Psi.get(a, i)) {
                f.flip_quadratic(ox + i, ou + a);
            }
        }
        for (size_t b = 0; b < m; b++) {
            if (Phi.get(b, i)) {
                f.flip_quadratic(ox + i, ov + b);
            }
        }
        for (size_t j = 0; j < t; j++) {
            if (pi.a.get(j, i)) {
                f.flip_quadratic(ox + i, oy + j);
            }
        }
    }
    ExactAmplitude sum = exp_sum(f);
    if (sum.is_zero()) {
        return sum;
    }
    return (psi.scale().conj() * phi.scale() * sum).times_sqrt2_power(-2 * static_cast<int>(n + t));
}

ExactAmplitude inner_product(const AffineStabilizerState &psi, const AffineStabilizerState &phi) {
    size_t n = psi.num_qubits();
    ProjectorForm identity{n, BitMatrix(0, n), BitMatrix(0, n), DegreeTwoPolynomial(0)};
    return inner_product_projected(psi, identity, phi);
}

Eigen::MatrixXcd dense_group_projector(size_t n, const std::vector<PauliOperator> &generators) {
    size_t dim = size_t{1} << n;
    size_t t = generators.size();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint64_t y = 0; y < (uint64_t{1} << t); y++) {
        PauliOperator element(n);
        for (size_t j = 0; j < t; j++) {
            if ((y >> j) & 1) {
                element = element * generators[j];
            }
        }
        sum += element.to_matrix();
    }
    return sum * std::ldexp(1.0, -static_cast<int>(t));
}

}  // namespace pbcsim
