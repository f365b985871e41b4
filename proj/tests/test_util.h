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

#include <functional>
#include <random>

#include "pbcsim/circuit.h"
#include "pbcsim/f2linalg.h"
#include "pbcsim/pauli.h"
#include "pbcsim/pbc.h"
#include "pbcsim/quadsum.h"
#include "pbcsim/stab.h"

namespace pbcsim::testing {

inline std::mt19937_64 &shared_rng() {
    static std::mt19937_64 rng(20260101);
    return rng;
}

inline bool coin(std::mt19937_64 &rng) {
    return rng() & 1;
}

inline BitVector random_bits(size_t n, std::mt19937_64 &rng) {
    BitVector v(n);
    for (size_t i = 0; i < n; i++) {
        v.set(i, coin(rng));
    }
    return v;
}

inline BitMatrix random_matrix(size_t rows, size_t cols, std::mt19937_64 &rng) {
    BitMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        m.row(r) = random_bits(cols, rng);
    }
    return m;
}

inline BitMatrix random_symmetric_zero_diagonal(size_t n, std::mt19937_64 &rng) {
    BitMatrix m(n, n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a + 1; b < n; b++) {
            if (coin(rng)) {
                m.set(a, b, true);
                m.set(b, a, true);
            }
        }
    }
    return m;
}

inline DegreeTwoPolynomial random_polynomial(size_t n, std::mt19937_64 &rng) {
    DegreeTwoPolynomial f(n);
    f.set_constant(static_cast<int>(rng() % 8));
    for (size_t a = 0; a < n; a++) {
        f.set_linear(a, static_cast<int>(rng() % 4));
        for (size_t b = a + 1; b < n; b++) {
            if (coin(rng)) {
                f.flip_quadratic(a, b);
            }
        }
    }
    return f;
}

inline BitMatrix random_full_rank(size_t rows, size_t cols, std::mt19937_64 &rng) {
    while (true) {
        BitMatrix m = random_matrix(rows, cols, rng);
        if (rank(m) == rows) {
            return m;
        }
    }
}

inline AffineStabilizerState random_affine_state(size_t n, std::mt19937_64 &rng, bool random_scale = true) {
    size_t k = rng() % (n + 1);
    ExactAmplitude scale = ExactAmplitude::one();
    if (random_scale) {
        scale = ExactAmplitude::omega_power(static_cast<int>(rng() % 8)) *
                ExactAmplitude::sqrt2_power(static_cast<int>(rng() % 5) - 2);
    }
    return AffineStabilizerState(random_full_rank(k, n, rng), random_bits(n, rng), random_polynomial(k, rng), scale);
}

inline PauliOperator random_hermitian_pauli(size_t n, std::mt19937_64 &rng) {
    BitVector x = random_bits(n, rng);
    BitVector z = random_bits(n, rng);
    int phase = (x.dot(z) ? 1 : 0) + (coin(rng) ? 2 : 0);
    return PauliOperator(x, z, phase);
}

/// Up to `t` independent commuting hermitian generators, found by rejection.
inline std::vector<PauliOperator> random_commuting_group(size_t n, size_t t, std::mt19937_64 &rng) {
    StabilizerGroupTracker tracker(n);
    for (int attempt = 0; attempt < 4000 && tracker.generators().size() < t; attempt++) {
        PauliOperator p = random_hermitian_pauli(n, rng);
        if (tracker.classify(p).relation == StabilizerGroupTracker::Relation::Independent) {
            tracker.add(p);
        }
    }
    return tracker.generators();
}

/// Random hermitian Pauli commuting with every operator in `prior`; never +-I.
inline PauliOperator random_commuting_pauli(size_t n, const std::vector<PauliOperator> &prior, std::mt19937_64 &rng) {
    // v = (x|z) commutes with (x'|z') iff x.z' + z.x' = 0, i.e. v . (z'|x') = 0.
    BitMatrix a(0, 2 * n);
    for (const auto &p : prior) {
        a.append_row(p.z().concat(p.x()));
    }
    std::vector<BitVector> kernel;
    if (prior.empty()) {
        for (size_t i = 0; i < 2 * n; i++) {
            kernel.push_back(BitVector::unit(2 * n, i));
        }
    } else {
        kernel = solve_linear(a, BitVector(prior.size()))->kernel;
    }
    while (true) {
        BitVector v(2 * n);
        for (const auto &k : kernel) {
            if (coin(rng)) {
                v ^= k;
            }
        }
        if (!v.any()) {
            continue;
        }
        BitVector x = v.slice(0, n), z = v.slice(n, n);
        return PauliOperator(x, z, (x.dot(z) ? 1 : 0) + (coin(rng) ? 2 : 0));
    }
}

struct RandomProgramOptions {
    size_t depth = 0;              // measurements per path; 0 means n
    double dependent_rate = 0.15;  // chance of re-measuring an element of the group
    double coin_rate = 0.0;
    size_t max_coins = 2;
    bool commuting = true;
};

/// Random adaptive program: every branch picks its own next measurement.
inline PbcTree random_pbc_tree(size_t n, std::mt19937_64 &rng, RandomProgramOptions opt = {}) {
    size_t depth = opt.depth ? opt.depth : n;
    std::vector<PbcTree::Node> nodes;
    std::vector<PauliOperator> path;
    std::function<size_t(size_t)> go = [&](size_t coins) -> size_t {
        size_t index = nodes.size();
        nodes.emplace_back();
        PbcTree::Node node;
        if (path.size() >= depth) {
            node.output = coin(rng);
            nodes[index] = node;
            return index;
        }
        if (coins < opt.max_coins && std::uniform_real_distribution<double>(0, 1)(rng) < opt.coin_rate) {
            node.kind = StepKind::Coin;
            node.on_plus = go(coins + 1);
            node.on_minus = go(coins + 1);
            nodes[index] = node;
            return index;
        }
        PauliOperator p;
        if (!path.empty() && std::uniform_real_distribution<double>(0, 1)(rng) < opt.dependent_rate) {
            p = PauliOperator(n);
            for (const auto &q : path) {
                if (coin(rng)) {
                    p = p * q;
                }
            }
            if (!p.is_hermitian()) {
                p = p.times_i_power(1);  // anticommuting factors
            }
            if (coin(rng)) {
                p = -p;
            }
        } else if (opt.commuting) {
            p = random_commuting_pauli(n, path, rng);
        } else {
            p = random_hermitian_pauli(n, rng);
        }
        node.kind = StepKind::Measure;
        node.pauli = p;
        path.push_back(p);
        node.on_plus = go(coins);
        node.on_minus = go(coins);
        path.pop_back();
        nodes[index] = node;
        return index;
    };
    go(0);
    return PbcTree(n, std::move(nodes));
}

/// A random root-to-leaf outcome path of a program (uniform choices).
inline std::vector<int> random_path(const PbcProgram &program, std::mt19937_64 &rng) {
    std::vector<int> out;
    auto cur = program.start();
    while (cur->step().kind != StepKind::Output) {
        int s = coin(rng) ? 1 : -1;
        out.push_back(s);
        cur->advance(s);
    }
    return out;
}

/// Random circuit over the given gate kinds with exactly `t_count` T gates.
inline Circuit random_circuit(size_t n, size_t clifford_gates, size_t t_count, std::mt19937_64 &rng) {
    static const GateKind one[] = {GateKind::H, GateKind::S, GateKind::SDG, GateKind::X, GateKind::Y, GateKind::Z};
    static const GateKind two[] = {GateKind::CNOT, GateKind::CZ, GateKind::CY};
    Circuit c;
    c.num_qubits = n;
    std::vector<bool> is_t(clifford_gates + t_count, false);
    for (size_t placed = 0; placed < t_count;) {
        size_t i = rng() % is_t.size();
        if (!is_t[i]) {
            is_t[i] = true;
            placed++;
        }
    }
    for (bool t : is_t) {
        Gate g;
        g.q0 = rng() % n;
        if (t) {
            g.kind = coin(rng) ? GateKind::T : GateKind::TDG;
        } else if (n > 1 && rng() % 3 == 0) {
            g.kind = two[rng() % 3];
            do {
                g.q1 = rng() % n;
            } while (g.q1 == g.q0);
        } else {
            g.kind = one[rng() % 6];
        }
        c.gates.push_back(g);
    }
    for (size_t q = 0; q < n; q++) {
        c.measured.push_back(q);
    }
    c.postprocess = BoolExpr::bit(0);
    return c;
}

/// Random circuit where every qubit takes part in at most d two-qubit gates.
/// Postprocess is a random xor/and/or of a few measured bits.
inline Circuit random_sparse_circuit(size_t n, size_t d, size_t gates, std::mt19937_64 &rng, bool with_t = true) {
    static const GateKind one[] = {GateKind::H, GateKind::S, GateKind::SDG, GateKind::X,
                                   GateKind::Y, GateKind::Z, GateKind::T, GateKind::TDG};
    static const GateKind two[] = {GateKind::CNOT, GateKind::CZ, GateKind::CY};
    Circuit c;
    c.num_qubits = n;
    c.sparsity = d;
    std::vector<size_t> degree(n, 0);
    for (size_t i = 0; i < gates; i++) {
        Gate g;
        g.q0 = rng() % n;
        g.q1 = rng() % n;
        if (n > 1 && g.q0 != g.q1 && degree[g.q0] < d && degree[g.q1] < d && rng() % 2 == 0) {
            g.kind = two[rng() % 3];
            degree[g.q0]++;
            degree[g.q1]++;
        } else {
            g.kind = one[rng() % (with_t ? 8 : 6)];
            g.q1 = 0;
        }
        c.gates.push_back(g);
    }
    for (size_t q = 0; q < n; q++) {
        c.measured.push_back(q);
    }
    std::string expr = "b" + std::to_string(rng() % n);
    size_t extra = rng() % 3;
    for (size_t i = 0; i < extra; i++) {
        static const char *ops[] = {" ^ ", " & ", " | "};
        expr += ops[rng() % 3] + ("b" + std::to_string(rng() % n));
    }
    c.postprocess = BoolExpr::parse(expr);
    return c;
}

}  // namespace pbcsim::testing
