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

#include "pbcsim/virtualq.h"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace pbcsim {

namespace {

// 1/2, (1 - sqrt2)/2, sqrt2/2.
const ScaledQuadratic ALPHA[3] = {ScaledQuadratic(1, 0, -1), ScaledQuadratic(1, -1, -1), ScaledQuadratic(0, 1, -1)};
const char STATES[3] = {'0', '1', '+'};

class VirtualCursor : public PbcCursor {
   public:
    VirtualCursor(std::unique_ptr<PbcCursor> base, size_t total, size_t k, const std::vector<Gate> &prep)
        : base_(std::move(base)), reducer_(total, k) {
        for (const auto &g : prep) {
            reducer_.apply_gate(g);
        }
        settle();
    }
    VirtualCursor(const VirtualCursor &o)
        : base_(o.base_->clone()), reducer_(o.reducer_), pending_(o.pending_), base_coin_(o.base_coin_) {}

    PbcStep step() const override {
        PbcStep s;
        if (base_coin_ || (pending_ && pending_->kind == MeasurementReducer::Kind::Coin)) {
            s.kind = StepKind::Coin;
        } else if (pending_) {
            s.kind = StepKind::Measure;
            s.pauli = pending_->reduced;
        } else {
            s = base_->step();
        }
        return s;
    }

    void advance(int sigma) override {
        if (sigma != 1 && sigma != -1) {
            throw std::invalid_argument("outcome must be +1 or -1");
        }
        if (!base_coin_ && !pending_) {
            throw std::invalid_argument("advance past the output");
        }
        if (pending_) {
            reducer_.resolve(*pending_, sigma);
            pending_.reset();
        }
        base_coin_ = false;
        base_->advance(sigma);
        settle();
    }

    std::unique_ptr<PbcCursor> clone() const override { return std::make_unique<VirtualCursor>(*this); }
    std::vector<int> classical_record() const override { return base_->classical_record(); }

   private:
    void settle() {
        while (true) {
            PbcStep s = base_->step();
            if (s.kind == StepKind::Output) {
                return;
            }
            if (s.kind == StepKind::Coin) {
                base_coin_ = true;
                return;
            }
            auto p = reducer_.prepare(s.pauli);
            if (p.kind != MeasurementReducer::Kind::Deterministic) {
                pending_ = std::move(p);
                return;
            }
            reducer_.resolve(p, p.sigma);
            base_->advance(p.sigma);
        }
    }

    std::unique_ptr<PbcCursor> base_;
    MeasurementReducer reducer_;
    std::optional<MeasurementReducer::Pending> pending_;
    bool base_coin_ = false;
};

std::vector<VirtualTermProgram> term_programs(const std::shared_ptr<const PbcProgram> &program, size_t k) {
    VirtualQubitPlan plan = build_plan(k);
    std::vector<VirtualTermProgram> out;
    for (const auto &t : plan.terms) {
        out.emplace_back(program, k, t);
    }
    return out;
}

}  // namespace

ScaledQuadratic VirtualQubitPlan::alpha_sum() const {
    ScaledQuadratic s;
    for (const auto &t : terms) {
        s = s + t.alpha;
    }
    return s;
}

ScaledQuadratic VirtualQubitPlan::alpha_square_sum() const {
    ScaledQuadratic s;
    for (const auto &t : terms) {
        s = s + t.alpha * t.alpha;
    }
    return s;
}

Eigen::MatrixXcd VirtualQubitPlan::density() const {
    if (k > 10) {
        throw std::invalid_argument("plan density: k too large for a dense matrix");
    }
    size_t dim = size_t{1} << k;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : terms) {
        Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(dim);
        phi[0] = 1;
        for (const auto &g : t.prep) {
            apply_gate_dense(phi, k, g);
        }
        rho += t.alpha.to_double() * phi * phi.adjoint();
    }
    return rho;
}

VirtualQubitPlan build_plan(size_t k) {
    if (k == 0 || k > 12) {
        throw std::invalid_argument("virtual qubit count must be in 1..12");
    }
    VirtualQubitPlan plan;
    plan.k = k;
    size_t count = 1;
    for (size_t i = 0; i < k; i++) {
        count *= 3;
    }
    for (size_t index = 0; index < count; index++) {
        VirtualTerm t;
        t.alpha = ScaledQuadratic::from_int(1);
        size_t rest = index;
        std::string states(k, '0');
        // Last qubit varies fastest.
        for (size_t q = k; q-- > 0;) {
            size_t choice = rest % 3;
            rest /= 3;
            states[q] = STATES[choice];
            t.alpha = t.alpha * ALPHA[choice];
        }
        t.states = states;
        for (size_t q = 0; q < k; q++) {
            if (states[q] == '1') {
                t.prep.push_back({GateKind::X, q});
            } else if (states[q] == '+') {
                t.prep.push_back({GateKind::H, q});
            }
        }
        plan.terms.push_back(std::move(t));
    }
    return plan;
}

VirtualTermProgram::VirtualTermProgram(std::shared_ptr<const PbcProgram> base, size_t k, VirtualTerm term)
    : base_(std::move(base)), k_(k), term_(std::move(term)) {
    if (!base_ || base_->num_qubits() < k_) {
        throw std::invalid_argument("program has fewer qubits than the " + std::to_string(k_) + " virtual ones");
    }
    if (term_.states.size() != k_) {
        throw std::invalid_argument("virtual term does not match k");
    }
}

std::unique_ptr<PbcCursor> VirtualTermProgram::start() const {
    return std::make_unique<VirtualCursor>(base_->start(), base_->num_qubits(), k_, term_.prep);
}

size_t default_sample_count(const VirtualQubitPlan &plan, double epsilon) {
    if (!(epsilon > 0) || epsilon >= 1) {
        throw std::invalid_argument("epsilon must be in (0, 1)");
    }
    double bound = std::max(1.0, plan.alpha_square_sum().to_double());
    return static_cast<size_t>(std::ceil(bound / (epsilon * epsilon)));
}

VirtualEstimate estimate_acceptance(std::shared_ptr<const PbcProgram> program,
                                    size_t k,
                                    Backend backend,
                                    uint64_t seed,
                                    VirtualOptions options) {
    VirtualQubitPlan plan = build_plan(k);
    auto programs = term_programs(program, k);
    std::vector<std::unique_ptr<PbcSampler>> samplers;
    std::vector<double> alpha;
    for (size_t i = 0; i < programs.size(); i++) {
        samplers.push_back(std::make_unique<PbcSampler>(programs[i], backend, options.rank));
        alpha.push_back(plan.terms[i].alpha.to_double());
    }
    size_t m = options.samples ? options.samples : default_sample_count(plan, options.epsilon);
    std::mt19937_64 rng(seed);
    VirtualEstimate out;
    out.samples = m;
    out.terms = programs.size();
    out.variance_bound = plan.alpha_square_sum().to_double();
    // Welford.
    double mean = 0, m2 = 0;
    for (size_t s = 0; s < m; s++) {
        double xi = 0;
        for (size_t i = 0; i < samplers.size(); i++) {
            xi += alpha[i] * samplers[i]->sample(rng).output;
        }
        out.backend_runs += samplers.size();
        double delta = xi - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (xi - mean);
    }
    out.mean = mean;
    out.sample_variance = m > 1 ? m2 / static_cast<double>(m - 1) : 0;
    out.stderr_ = std::sqrt(out.sample_variance / static_cast<double>(m));
    return out;
}

VirtualExact exact_virtual_acceptance(std::shared_ptr<const PbcProgram> program,
                                      size_t k,
                                      Backend backend,
                                      RankOptions options) {
    VirtualQubitPlan plan = build_plan(k);
    auto programs = term_programs(program, k);
    VirtualExact out;
    ScaledQuadratic total;
    for (size_t i = 0; i < programs.size(); i++) {
        Acceptance a = exact_acceptance(programs[i], backend, options);
        out.value += plan.terms[i].alpha.to_double() * a.value;
        if (a.exact) {
            total = total + plan.terms[i].alpha * *a.exact;
        }
    }
    if (backend == Backend::Rank) {
        out.exact = total;
        out.value = total.to_double();
    }
    return out;
}

}  // namespace pbcsim
