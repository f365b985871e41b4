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

/// Running a PBC on n + k qubits with PBCs on n qubits: the first k magic
/// states are replaced by the quasi-probability mixture
///     |H><H| = 1/2 |0><0| + (1 - sqrt2)/2 |1><1| + 1/sqrt2 |+><+|
/// and each term is folded into the measurement frame.

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pbcsim/circuit.h"
#include "pbcsim/cliffordt.h"
#include "pbcsim/octic.h"
#include "pbcsim/pbc.h"

namespace pbcsim {

struct VirtualTerm {
    ScaledQuadratic alpha;
    std::string states;      // one of '0', '1', '+' per virtual qubit
    std::vector<Gate> prep;  // U_i with |phi_i> = U_i |0^k>
};

struct VirtualQubitPlan {
    size_t k = 0;
    std::vector<VirtualTerm> terms;

    /// sum_i alpha_i, exactly 1.
    ScaledQuadratic alpha_sum() const;
    /// sum_i alpha_i^2, the variance bound of one sample.
    ScaledQuadratic alpha_square_sum() const;
    /// sum_i alpha_i |phi_i><phi_i| on k qubits. Throws std::invalid_argument for k > 10.
    Eigen::MatrixXcd density() const;
};

/// 3^k terms. Throws std::invalid_argument for k = 0 or k > 12.
VirtualQubitPlan build_plan(size_t k);

/// Q_i: the program with its first k qubits prepared in |phi_i>, reduced to
/// a PBC on the remaining qubits.
class VirtualTermProgram : public PbcProgram {
   public:
    /// Throws std::invalid_argument when the program has fewer than k qubits.
    VirtualTermProgram(std::shared_ptr<const PbcProgram> base, size_t k, VirtualTerm term);
    size_t num_qubits() const override { return base_->num_qubits() - k_; }
    std::unique_ptr<PbcCursor> start() const override;
    const VirtualTerm &term() const { return term_; }

   private:
    std::shared_ptr<const PbcProgram> base_;
    size_t k_;
    VirtualTerm term_;
};

struct VirtualEstimate {
    double mean = 0;
    double stderr_ = 0;
    double sample_variance = 0;
    double variance_bound = 0;  // sum alpha_i^2
    size_t samples = 0;
    size_t terms = 0;
    size_t backend_runs = 0;
};

struct VirtualOptions {
    size_t samples = 0;  // 0 means default_sample_count(plan, epsilon)
    double epsilon = 0.05;
    RankOptions rank;
};

/// ceil(max(1, sum alpha_i^2) / eps^2).
size_t default_sample_count(const VirtualQubitPlan &plan, double epsilon);

/// Monte Carlo estimate of Pr(output = 1): each sample runs every Q_i once
/// and averages xi = sum_i alpha_i b_i.
VirtualEstimate estimate_acceptance(std::shared_ptr<const PbcProgram> program,
                                    size_t k,
                                    Backend backend,
                                    uint64_t seed,
                                    VirtualOptions options = {});

struct VirtualExact {
    double value = 0;
    std::optional<ScaledQuadratic> exact;  // rank backend only
};

/// sum_i alpha_i Pr(Q_i outputs 1) with exact per-term probabilities.
VirtualExact exact_virtual_acceptance(std::shared_ptr<const PbcProgram> program,
                                      size_t k,
                                      Backend backend,
                                      RankOptions options = {});

}  // namespace pbcsim
