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

#include "pbcsim/searchdecomp.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "pbcsim/stab.h"

namespace pbcsim {

void AnnealConfig::validate() const {
    if (chi == 0 || steps_per_beta == 0 || anneal_steps == 0 || restarts == 0) {
        throw std::invalid_argument("anneal: chi, steps and restarts must be positive");
    }
    if (!(beta_in > 0) || !(beta_in <= beta_f)) {
        throw std::invalid_argument("anneal: need 0 < beta_in <= beta_f");
    }
}

std::vector<double> beta_schedule(const AnnealConfig &config) {
    config.validate();
    std::vector<double> out(config.anneal_steps);
    if (config.anneal_steps == 1) {
        out[0] = config.beta_in;
        return out;
    }
    double ratio = config.beta_f / config.beta_in;
    for (size_t j = 0; j < out.size(); j++) {
        out[j] = config.beta_in * std::pow(ratio, static_cast<double>(j) / static_cast<double>(out.size() - 1));
    }
    out.back() = config.beta_f;
    return out;
}

double objective(const DenseStabilizerTuple &tuple) {
    if (tuple.states.empty()) {
        return 0;
    }
    Eigen::MatrixXcd a(tuple.target.size(), static_cast<Eigen::Index>(tuple.states.size()));
    for (size_t i = 0; i < tuple.states.size(); i++) {
        a.col(static_cast<Eigen::Index>(i)) = tuple.states[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    qr.setThreshold(1e-10);
    Eigen::Index r = qr.rank();
    if (r == 0) {
        return 0;
    }
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), r);
    double f = (q.adjoint() * tuple.target).norm();
    return std::min(f, 1.0);
}

std::optional<Eigen::VectorXcd> apply_move(const Eigen::VectorXcd &phi, const PauliOperator &p) {
    Eigen::VectorXcd out = phi + p.apply(phi);
    double norm = out.norm();
    if (norm < 1e-9) {
        return std::nullopt;
    }
    return Eigen::VectorXcd(out / norm);
}

Move propose_move(const DenseStabilizerTuple &tuple, std::mt19937_64 &rng, bool restrict_real) {
    size_t n = tuple.num_qubits;
    Move m;
    m.index = std::uniform_int_distribution<size_t>(0, tuple.states.size() - 1)(rng);
    BitVector x(n), z(n);
    do {
        for (size_t q = 0; q < n; q++) {
            uint64_t r = rng();
            x.set(q, r & 1);
            z.set(q, (r >> 1) & 1);
        }
    } while (!x.any() && !z.any());
    bool negative = rng() & 1;
    size_t ys = 0;
    for (size_t q = 0; q < n; q++) {
        ys += x.get(q) && z.get(q);
    }
    // Y = i X Z, so the letter product carries i^(#Y).
    m.pauli = PauliOperator(x, z, static_cast<int>((ys + (negative ? 2 : 0)) % 4));
    if (restrict_real && (ys & 1)) {
        m.odd_y = true;
        return m;
    }
    m.state = apply_move(tuple.states[m.index], m.pauli);
    m.annihilated = !m.state.has_value();
    return m;
}

bool metropolis_accept(double f, double f_new, double beta, const std::function<double()> &uniform) {
    if (f_new >= f) {
        return true;
    }
    return uniform() < std::exp(-beta * (f - f_new));
}

DenseStabilizerTuple random_basis_tuple(const Eigen::VectorXcd &target, size_t chi, std::mt19937_64 &rng) {
    DenseStabilizerTuple t;
    t.num_qubits = static_cast<size_t>(std::countr_zero(static_cast<uint64_t>(target.size())));
    t.target = target / target.norm();
    for (size_t i = 0; i < chi; i++) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(target.size());
        v[static_cast<Eigen::Index>(std::uniform_int_distribution<uint64_t>(0, target.size() - 1)(rng))] = 1;
        t.states.push_back(v);
    }
    return t;
}

std::optional<ScaledQuadratic> fit_quadratic(double value, double tolerance) {
    if (std::abs(value) <= tolerance) {
        return ScaledQuadratic::from_int(0);
    }
    for (int e = 0; e >= -12; e--) {
        double v = std::ldexp(value, -e);
        for (int q = 0; q <= 64; q++) {
            for (int s : {1, -1}) {
                double p = std::round(v - s * q * std::sqrt(2.0));
                if (std::abs(p) > 1e6) {
                    continue;
                }
                ScaledQuadratic c(static_cast<Integer>(p), static_cast<Integer>(s * q), e);
                if (std::abs(c.to_double() - value) <= tolerance) {
                    return c;
                }
                if (q == 0) {
                    break;
                }
            }
        }
    }
    return std::nullopt;
}

StabilizerDecomposition fit_decomposition(const std::string &target, const std::vector<Eigen::VectorXcd> &states) {
    MagicTarget mt = parse_target(target);
    Eigen::VectorXcd t = target_dense(target);
    StabilizerDecomposition d;
    d.num_qubits = mt.num_qubits;
    d.target = target;
    // Unit-modulus, real-leading representatives keep the coefficients in the ring when possible.
    std::vector<Eigen::VectorXcd> canon;
    for (const auto &s : states) {
        Eigen::Index lead = 0;
        while (std::abs(s[lead]) < 1e-9) {
            lead++;
        }
        canon.push_back(s / s[lead]);
    }
    Eigen::MatrixXcd a(t.size(), static_cast<Eigen::Index>(canon.size()));
    for (size_t i = 0; i < canon.size(); i++) {
        a.col(static_cast<Eigen::Index>(i)) = canon[i];
    }
    Eigen::VectorXcd c = a.colPivHouseholderQr().solve(t);
    bool all_real = true;
    for (Eigen::Index i = 0; i < c.size(); i++) {
        all_real = all_real && std::abs(c[i].imag()) < 1e-9;
    }
    std::vector<std::complex<double>> kept;
    for (size_t i = 0; i < canon.size(); i++) {
        std::complex<double> ci = c[static_cast<Eigen::Index>(i)];
        if (std::abs(ci) < 1e-12) {
            continue;
        }
        DecompositionTerm term{Coefficient::approximate(ci), affine_from_dense(canon[i]), ""};
        if (all_real) {
            if (auto q = fit_quadratic(ci.real())) {
                term.coefficient = Coefficient::from_exact(*q);
            }
        }
        d.terms.push_back(std::move(term));
        kept.push_back(ci);
    }
    if (!verify_decomposition(d).exact) {
        for (size_t i = 0; i < d.terms.size(); i++) {
            d.terms[i].coefficient = Coefficient::approximate(kept[i]);
        }
    }
    return d;
}

namespace {

struct Walk {
    bool success = false;
    double best_f = 0;
    uint64_t proposals = 0, accepted = 0;
    std::vector<Eigen::VectorXcd> states;
};

Walk run_walk(const Eigen::VectorXcd &target, const AnnealConfig &config, const std::vector<double> &betas,
              std::mt19937_64 &rng) {
    DenseStabilizerTuple tuple = random_basis_tuple(target, config.chi, rng);
    std::uniform_real_distribution<double> unit(0, 1);
    auto uniform = [&] { return unit(rng); };
    Walk w;
    double f = objective(tuple);
    w.best_f = f;
    w.states = tuple.states;
    if (f >= 1 - config.success_threshold) {
        w.success = true;
        return w;
    }
    for (double beta : betas) {
        for (size_t s = 0; s < config.steps_per_beta; s++) {
            Move m = propose_move(tuple, rng, config.restrict_real);
            w.proposals++;
            if (!m.state) {
                continue;
            }
            Eigen::VectorXcd old = tuple.states[m.index];
            tuple.states[m.index] = *m.state;
            double f_new = objective(tuple);
            if (!metropolis_accept(f, f_new, beta, uniform)) {
                tuple.states[m.index] = old;
                continue;
            }
            w.accepted++;
            f = f_new;
            if (f > w.best_f) {
                w.best_f = f;
                w.states = tuple.states;
            }
            if (f >= 1 - config.success_threshold) {
                w.success = true;
                return w;
            }
        }
    }
    return w;
}

}  // namespace

AnnealResult anneal(const Eigen::VectorXcd &target, const AnnealConfig &config, const std::string &target_name) {
    config.validate();
    uint64_t dim = static_cast<uint64_t>(target.size());
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("anneal: target length must be a power of two");
    }
    if (static_cast<size_t>(std::countr_zero(dim)) > config.max_qubits) {
        throw std::invalid_argument("anneal: target exceeds the dense limit of " + std::to_string(config.max_qubits) +
                                    " qubits");
    }
    std::vector<double> betas = beta_schedule(config);
    AnnealResult out;
    std::vector<Eigen::VectorXcd> winner;
    for (size_t r = 0; r < config.restarts; r++) {
        std::seed_seq seq{config.seed, static_cast<uint64_t>(r)};
        std::mt19937_64 rng(seq);
        Walk w = run_walk(target, config, betas, rng);
        out.restarts_used = r + 1;
        out.proposals += w.proposals;
        out.accepted += w.accepted;
        out.best_f = std::max(out.best_f, w.best_f);
        if (w.success) {
            out.success = true;
            winner = w.states;
            break;
        }
    }
    if (out.success && !target_name.empty()) {
        out.decomposition = fit_decomposition(target_name, winner);
        VerificationResult v = verify_decomposition(*out.decomposition);
        out.residual = v.residual;
        out.exact = v.exact;
    }
    return out;
}

AnnealResult anneal(const std::string &target, const AnnealConfig &config) {
    MagicTarget mt = parse_target(target);
    if (mt.num_qubits > config.max_qubits) {
        throw std::invalid_argument("anneal: target exceeds the dense limit of " + std::to_string(config.max_qubits) +
                                    " qubits");
    }
    return anneal(target_dense(target), config, target);
}

}  // namespace pbcsim
