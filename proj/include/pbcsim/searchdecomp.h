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

/// Annealed random walk over chi-tuples of stabilizer states, maximizing the
/// norm of the target's projection onto their span.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pbcsim/decomplib.h"
#include "pbcsim/pauli.h"

namespace pbcsim {

struct AnnealConfig {
    size_t chi = 2;
    double beta_in = 1;
    double beta_f = 4000;
    size_t steps_per_beta = 1000;
    size_t anneal_steps = 100;
    uint64_t seed = 1;
    bool restrict_real = true;
    size_t restarts = 10;
    size_t max_qubits = 8;
    double success_threshold = 1e-10;  // F >= 1 - threshold counts as F = 1

    /// Throws std::invalid_argument on a bad configuration.
    void validate() const;
};

/// Geometric schedule from beta_in to beta_f, both endpoints included.
std::vector<double> beta_schedule(const AnnealConfig &config);

struct DenseStabilizerTuple {
    size_t num_qubits = 0;
    std::vector<Eigen::VectorXcd> states;
    Eigen::VectorXcd target;  // unit norm
};

/// Norm of the orthogonal projection of the target onto span(states).
double objective(const DenseStabilizerTuple &tuple);

struct Move {
    size_t index = 0;
    PauliOperator pauli;
    /// Normalized (I + P) phi_index; empty when the move was rejected outright.
    std::optional<Eigen::VectorXcd> state;
    bool odd_y = false;     // rejected by the real restriction
    bool annihilated = false;
};

/// Uniform index and uniform signed hermitian Pauli other than +-I.
Move propose_move(const DenseStabilizerTuple &tuple, std::mt19937_64 &rng, bool restrict_real);
/// (I + P) phi normalized, or nullopt when it vanishes.
std::optional<Eigen::VectorXcd> apply_move(const Eigen::VectorXcd &phi, const PauliOperator &p);

/// Always accepts f_new >= f; otherwise draws one uniform and accepts when it is
/// below exp(-beta (f - f_new)).
bool metropolis_accept(double f, double f_new, double beta, const std::function<double()> &uniform);

/// chi uniformly random computational basis states.
DenseStabilizerTuple random_basis_tuple(const Eigen::VectorXcd &target, size_t chi, std::mt19937_64 &rng);

struct AnnealResult {
    bool success = false;
    double best_f = 0;
    size_t restarts_used = 0;
    uint64_t proposals = 0;
    uint64_t accepted = 0;
    std::optional<StabilizerDecomposition> decomposition;
    double residual = 0;
    bool exact = false;
};

/// Runs up to config.restarts walks; restart r uses the seed sequence (seed, r).
/// target is a name understood by target_dense ("H^k" or "H^k:normalized").
AnnealResult anneal(const std::string &target, const AnnealConfig &config);
AnnealResult anneal(const Eigen::VectorXcd &target, const AnnealConfig &config, const std::string &target_name = "");

/// Least-squares decomposition of target_dense(target) over the given stabilizer states.
/// Coefficients are promoted to exact Z[sqrt2] values when they fit and the result verifies exactly.
StabilizerDecomposition fit_decomposition(const std::string &target, const std::vector<Eigen::VectorXcd> &states);

/// Nearest (p + q sqrt2) 2^e with |q| <= 64 and e in [-12, 0], if within tolerance.
std::optional<ScaledQuadratic> fit_quadratic(double value, double tolerance = 1e-9);

}  // namespace pbcsim
