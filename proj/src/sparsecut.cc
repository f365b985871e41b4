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

#include "pbcsim/sparsecut.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pbcsim/pauli.h"
#include "pbcsim/pbc.h"

namespace pbcsim {

namespace {

Eigen::Matrix2cd pauli_matrix(char p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

GateKind pauli_gate(char p) {
    switch (p) {
        case 'X':
            return GateKind::X;
        case 'Y':
            return GateKind::Y;
        case 'Z':
            return GateKind::Z;
        default:
            throw std::logic_error("no gate for the identity");
    }
}

GateKind controlled_pauli(char p) {
    switch (p) {
        case 'X':
            return GateKind::CNOT;
        case 'Y':
            return GateKind::CY;
        case 'Z':
            return GateKind::CZ;
        default:
            throw std::logic_error("no controlled identity");
    }
}

void apply_single(Eigen::VectorXcd &state, size_t n, size_t q, const Eigen::Matrix2cd &m) {
    Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
    for (Eigen::Index x = 0; x < state.size(); x++) {
        if (x & bit) {
            continue;
        }
        Complex a0 = state[x], a1 = state[x | bit];
        state[x] = m(0, 0) * a0 + m(0, 1) * a1;
        state[x | bit] = m(1, 0) * a0 + m(1, 1) * a1;
    }
}

std::vector<size_t> parse_list(const std::string &text) {
    std::vector<size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) {
            continue;
        }
        if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 6) {
            throw std::invalid_argument("bad qubit index '" + item + "' in partition");
        }
        out.push_back(std::stoul(item));
    }
    return out;
}

/// Distribution of a circuit's outcomes, with a cumulative table for shots.
class DensePrepared : public PreparedCircuit {
   public:
    explicit DensePrepared(std::vector<double> probs) : cdf_(probs.size()) {
        double total = 0;
        for (size_t i = 0; i < probs.size(); i++) {
            total += probs[i];
            cdf_[i] = total;
        }
    }
    uint64_t sample(std::mt19937_64 &rng) const override {
        double u = uniform_unit(rng) * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        size_t i = static_cast<size_t>(it - cdf_.begin());
        return std::min(i, cdf_.size() - 1);
    }

   private:
    std::vector<double> cdf_;
};

std::vector<double> outcome_probabilities(const Circuit &c, size_t max_qubits) {
    Eigen::VectorXcd state = simulate_gates_merged(c.num_qubits, c.gates, max_qubits);
    std::vector<double> p(state.size());
    for (Eigen::Index i = 0; i < state.size(); i++) {
        p[i] = std::norm(state[i]);
    }
    return p;
}

/// f(yz) as a table over the B-local basis index z (local qubit 0 = most significant bit).
std::vector<int8_t> accept_table(const Circuit &circuit, const Partition &part, const std::vector<int> &y) {
    size_t n = part.b.size();
    std::vector<int8_t> table(size_t{1} << n);
    std::vector<int> bits(circuit.num_qubits, 0);
    for (size_t i = 0; i < part.a.size(); i++) {
        bits[part.a[i]] = y[i];
    }
    for (size_t z = 0; z < table.size(); z++) {
        for (size_t j = 0; j < n; j++) {
            bits[part.b[j]] = static_cast<int>((z >> (n - 1 - j)) & 1);
        }
        table[z] = static_cast<int8_t>(circuit.postprocess.evaluate(bits));
    }
    return table;
}

/// Splits an R outcome into the control bit and the B-local index.
struct OutcomeDecoder {
    size_t width;
    size_t control;
    std::vector<size_t> data;

    explicit OutcomeDecoder(const RCircuit &r)
        : width(r.circuit.num_qubits), control(r.control), data(r.data_position) {}

    int sigma(uint64_t outcome, const std::vector<int8_t> &accept) const {
        int b = static_cast<int>((outcome >> (width - 1 - control)) & 1);
        size_t z = 0;
        for (size_t p : data) {
            z = (z << 1) | ((outcome >> (width - 1 - p)) & 1);
        }
        if (!accept[z]) {
            return 0;
        }
        return b ? -1 : 1;
    }
};

std::vector<int> y_bits(size_t y, size_t k) {
    std::vector<int> out(k);
    for (size_t i = 0; i < k; i++) {
        out[i] = static_cast<int>((y >> (k - 1 - i)) & 1);
    }
    return out;
}

double dense_expectation(const RCircuit &r, const std::vector<int8_t> &accept) {
    auto probs = outcome_probabilities(r.circuit, 21);
    OutcomeDecoder dec(r);
    double e = 0;
    for (size_t o = 0; o < probs.size(); o++) {
        if (probs[o] != 0) {
            e += probs[o] * dec.sigma(o, accept);
        }
    }
    return e;
}

}  // namespace

Partition parse_partition(const std::string &text, size_t num_qubits) {
    size_t bar = text.find('|');
    if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos) {
        throw std::invalid_argument("partition must look like \"0,1|2,3\"");
    }
    Partition p{parse_list(text.substr(0, bar)), parse_list(text.substr(bar + 1))};
    std::vector<int> seen(num_qubits, 0);
    for (const auto *side : {&p.a, &p.b}) {
        for (size_t q : *side) {
            if (q >= num_qubits) {
                throw std::invalid_argument("partition names qubit " + std::to_string(q) + " of a " +
                                            std::to_string(num_qubits) + "-qubit circuit");
            }
            if (seen[q]++) {
                throw std::invalid_argument("partition lists qubit " + std::to_string(q) + " twice");
            }
        }
    }
    for (size_t q = 0; q < num_qubits; q++) {
        if (!seen[q]) {
            throw std::invalid_argument("partition misses qubit " + std::to_string(q));
        }
    }
    if (p.b.empty()) {
        throw std::invalid_argument("partition needs at least one qubit on the large side");
    }
    return p;
}

std::vector<Gate> SideCircuit::gates() const {
    std::vector<Gate> out;
    for (const auto &op : ops) {
        if (!op.slot) {
            out.push_back(op.gate);
        } else if (op.pauli != 'I') {
            out.push_back({pauli_gate(op.pauli), op.gate.q0});
        }
    }
    return out;
}

std::vector<PauliTerm> pauli_expansion(GateKind kind) {
    Gate probe{kind, 0, 1};
    if (!probe.is_two_qubit()) {
        throw std::invalid_argument("Pauli expansion needs a two-qubit gate");
    }
    Eigen::MatrixXcd g = gate_matrix(kind);
    std::vector<PauliTerm> out;
    for (char p : {'I', 'X', 'Y', 'Z'}) {
        for (char q : {'I', 'X', 'Y', 'Z'}) {
            Eigen::Matrix4cd pq;
            Eigen::Matrix2cd a = pauli_matrix(p), b = pauli_matrix(q);
            for (int i = 0; i < 2; i++) {
                for (int j = 0; j < 2; j++) {
                    pq.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
                }
            }
            Complex c = (pq.adjoint() * g).trace() / 4.0;
            if (std::abs(c) > 1e-12) {
                out.push_back({p, q, c});
            }
        }
    }
    return out;
}

CutExpansion::CutExpansion(const Circuit &circuit, Partition partition)
    : circuit_(circuit), partition_(std::move(partition)) {
    circuit_.validate();
    size_t total = circuit_.num_qubits;
    if (partition_.a.size() + partition_.b.size() != total) {
        throw std::invalid_argument("partition does not cover the circuit");
    }
    local_.assign(total, 0);
    side_a_.assign(total, false);
    for (size_t i = 0; i < partition_.a.size(); i++) {
        local_.at(partition_.a[i]) = i;
        side_a_[partition_.a[i]] = true;
    }
    for (size_t i = 0; i < partition_.b.size(); i++) {
        local_.at(partition_.b[i]) = i;
    }
    for (size_t i = 0; i < circuit_.gates.size(); i++) {
        const Gate &g = circuit_.gates[i];
        if (g.is_two_qubit() && side_a_[g.q0] != side_a_[g.q1]) {
            crossing_.push_back(i);
            expansions_.push_back(pauli_expansion(g.kind));
            if (num_terms_ > (uint64_t{1} << 58)) {
                throw std::overflow_error("cut expansion has too many terms");
            }
            num_terms_ *= expansions_.back().size();
        }
    }
}

CutTerm CutExpansion::term(uint64_t index) const {
    if (index >= num_terms_) {
        throw std::out_of_range("cut term index out of range");
    }
    CutTerm t;
    t.coefficient = 1;
    t.choice.assign(crossing_.size(), 0);
    for (size_t c = crossing_.size(); c-- > 0;) {
        t.choice[c] = index % expansions_[c].size();
        index /= expansions_[c].size();
    }
    t.v.num_qubits = partition_.a.size();
    t.w.num_qubits = partition_.b.size();
    size_t next = 0;
    for (size_t i = 0; i < circuit_.gates.size(); i++) {
        Gate g = circuit_.gates[i];
        if (next < crossing_.size() && crossing_[next] == i) {
            const PauliTerm &pt = expansions_[next][t.choice[next]];
            t.coefficient *= pt.coefficient;
            for (auto [q, letter] : {std::pair{g.q0, pt.first}, std::pair{g.q1, pt.second}}) {
                SideOp op;
                op.slot = true;
                op.gate = {GateKind::Z, local_[q]};
                op.pauli = letter;
                (side_a_[q] ? t.v : t.w).ops.push_back(op);
            }
            next++;
            continue;
        }
        SideOp op;
        op.gate = g;
        op.gate.q0 = local_[g.q0];
        if (g.is_two_qubit()) {
            op.gate.q1 = local_[g.q1];
        }
        (side_a_[g.q0] ? t.v : t.w).ops.push_back(op);
    }
    return t;
}

double CutExpansion::weight() const {
    double total = 1;
    for (const auto &e : expansions_) {
        double s = 0;
        for (const auto &t : e) {
            s += std::norm(t.coefficient);
        }
        total *= s;
    }
    return total;
}

Eigen::VectorXcd simulate_gates_merged(size_t n, const std::vector<Gate> &gates, size_t max_qubits) {
    if (n > max_qubits) {
        throw std::invalid_argument("dense simulation of " + std::to_string(n) + " qubits exceeds the limit of " +
                                    std::to_string(max_qubits));
    }
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    state[0] = 1;
    std::vector<Eigen::Matrix2cd> pending(n, Eigen::Matrix2cd::Identity());
    std::vector<bool> dirty(n, false);
    auto flush = [&](size_t q) {
        if (dirty[q]) {
            apply_single(state, n, q, pending[q]);
            pending[q].setIdentity();
            dirty[q] = false;
        }
    };
    for (const auto &g : gates) {
        if (g.q0 >= n || (g.is_two_qubit() && g.q1 >= n)) {
            throw std::out_of_range("gate " + gate_str(g) + " outside " + std::to_string(n) + " qubits");
        }
        if (!g.is_two_qubit()) {
            pending[g.q0] = Eigen::Matrix2cd(gate_matrix(g.kind)) * pending[g.q0];
            dirty[g.q0] = true;
            continue;
        }
        flush(g.q0);
        flush(g.q1);
        apply_gate_dense(state, n, g);
    }
    for (size_t q = 0; q < n; q++) {
        flush(q);
    }
    return state;
}

Complex small_side_amplitude(const SideCircuit &v, const std::vector<int> &y, size_t max_qubits) {
    if (y.size() != v.num_qubits) {
        throw std::invalid_argument("bit string length does not match the small side");
    }
    Eigen::VectorXcd state = simulate_gates_merged(v.num_qubits, v.gates(), max_qubits);
    size_t index = 0;
    for (int b : y) {
        index = (index << 1) | (b & 1);
    }
    return state[static_cast<Eigen::Index>(index)];
}

RCircuit build_R(const SideCircuit &wa, const SideCircuit &wb, RFlavor flavor, bool migrate) {
    if (wa.num_qubits != wb.num_qubits || wa.ops.size() != wb.ops.size()) {
        throw std::invalid_argument("build_R: circuits have different shapes");
    }
    size_t n = wa.num_qubits;
    size_t control = n;
    // Logical circuit on n data qubits plus the control.
    std::vector<Gate> logical;
    logical.push_back({GateKind::H, control});
    for (size_t i = 0; i < wa.ops.size(); i++) {
        const SideOp &a = wa.ops[i], &b = wb.ops[i];
        if (a.slot != b.slot || (!a.slot && !(a.gate == b.gate)) || (a.slot && a.gate.q0 != b.gate.q0)) {
            throw std::invalid_argument("build_R: circuits differ outside Pauli slots (op " + std::to_string(i) + ")");
        }
        if (!a.slot) {
            logical.push_back(a.gate);
            continue;
        }
        size_t q = a.gate.q0;
        if (a.pauli == b.pauli) {
            if (a.pauli != 'I') {
                logical.push_back({pauli_gate(a.pauli), q});
            }
            continue;
        }
        // |0><0| Pa + |1><1| Pb = (1 (+) i^s) C-Q Pa with Pb Pa = i^s Q.
        auto single = [](char p) {
            return p == 'I' ? PauliOperator(1) : PauliOperator::single(1, 0, p);
        };
        PauliOperator prod = single(b.pauli) * single(a.pauli);
        if (a.pauli != 'I') {
            logical.push_back({pauli_gate(a.pauli), q});
        }
        logical.push_back({controlled_pauli(prod.kind(0)), control, q});
        switch (prod.sign_exponent()) {
            case 1:
                logical.push_back({GateKind::S, control});
                break;
            case 2:
                logical.push_back({GateKind::Z, control});
                break;
            case 3:
                logical.push_back({GateKind::SDG, control});
                break;
            default:
                break;
        }
    }
    if (flavor == RFlavor::Imag) {
        logical.push_back({GateKind::SDG, control});
    }
    logical.push_back({GateKind::H, control});

    // Remaining two-qubit gates per logical qubit from each position on.
    size_t width = n + 1;
    std::vector<std::vector<size_t>> suffix(logical.size() + 1, std::vector<size_t>(width, 0));
    std::vector<size_t> controlled_after(logical.size() + 1, 0);
    for (size_t i = logical.size(); i-- > 0;) {
        suffix[i] = suffix[i + 1];
        controlled_after[i] = controlled_after[i + 1];
        const Gate &g = logical[i];
        if (g.is_two_qubit()) {
            suffix[i][g.q0]++;
            suffix[i][g.q1]++;
            controlled_after[i] += (g.q0 == control || g.q1 == control);
        }
    }
    std::vector<size_t> pos(width), tenant(width), load(width, 0);
    for (size_t i = 0; i < width; i++) {
        pos[i] = tenant[i] = i;
    }
    RCircuit out;
    out.circuit.num_qubits = width;
    auto emit = [&](Gate g) {
        g.q0 = pos[g.q0];
        if (g.is_two_qubit()) {
            g.q1 = pos[g.q1];
            load[g.q0]++;
            load[g.q1]++;
        }
        out.circuit.gates.push_back(g);
    };
    for (size_t i = 0; i < logical.size(); i++) {
        const Gate &g = logical[i];
        bool controlled = g.is_two_qubit() && (g.q0 == control || g.q1 == control);
        if (migrate && controlled) {
            size_t target = g.q0 == control ? g.q1 : g.q0;
            // Projected final loads if no later moves happen, charging the control's host one future swap.
            auto projected = [&](std::optional<size_t> host) {
                std::vector<size_t> l = load;
                std::vector<size_t> p = pos;
                if (host) {
                    size_t from = pos[control], other = tenant[*host];
                    l[from]++;
                    l[*host]++;
                    p[other] = from;
                    p[control] = *host;
                }
                for (size_t x = 0; x < n; x++) {
                    l[p[x]] += suffix[i][x];
                }
                l[p[control]] += 1 + (controlled_after[i] > 1 ? 1 : 0);
                return *std::max_element(l.begin(), l.end());
            };
            size_t best_cost = projected(std::nullopt);
            std::optional<size_t> best;
            for (size_t h = 0; h < width; h++) {
                if (h == pos[control] || h == pos[target]) {
                    continue;
                }
                size_t c = projected(h);
                if (c < best_cost) {
                    best_cost = c;
                    best = h;
                }
            }
            if (best) {
                size_t from = pos[control], other = tenant[*best];
                out.circuit.gates.push_back({GateKind::SWAP, from, *best});
                load[from]++;
                load[*best]++;
                out.swaps++;
                std::swap(tenant[from], tenant[*best]);
                pos[other] = from;
                pos[control] = *best;
            }
        }
        if (controlled) {
            out.control_gates++;
        }
        emit(g);
    }
    out.control = pos[control];
    out.data_position.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(n));
    for (size_t q = 0; q < width; q++) {
        out.circuit.measured.push_back(q);
    }
    out.circuit.postprocess = BoolExpr::bit(out.control);
    return out;
}

std::unique_ptr<PreparedCircuit> DenseEmulatorBackend::prepare(const Circuit &c) const {
    return std::make_unique<DensePrepared>(outcome_probabilities(c, max_qubits_));
}

Complex projected_overlap_dense(const Circuit &circuit,
                                const CutExpansion &expansion,
                                const CutTerm &alpha,
                                const CutTerm &beta,
                                const std::vector<int> &y) {
    size_t n = alpha.w.num_qubits;
    Eigen::VectorXcd pa = simulate_dense(Circuit{n, alpha.w.gates(), {}, BoolExpr::bit(0), {}});
    Eigen::VectorXcd pb = simulate_dense(Circuit{n, beta.w.gates(), {}, BoolExpr::bit(0), {}});
    auto accept = accept_table(circuit, expansion.partition(), y);
    Complex total = 0;
    for (Eigen::Index z = 0; z < pa.size(); z++) {
        if (accept[static_cast<size_t>(z)]) {
            total += std::conj(pa[z]) * pb[z];
        }
    }
    return total;
}

Complex r_expectation_dense(const Circuit &circuit,
                            const CutExpansion &expansion,
                            const CutTerm &alpha,
                            const CutTerm &beta,
                            const std::vector<int> &y,
                            bool migrate) {
    auto accept = accept_table(circuit, expansion.partition(), y);
    double re = dense_expectation(build_R(alpha.w, beta.w, RFlavor::Real, migrate), accept);
    double im = dense_expectation(build_R(alpha.w, beta.w, RFlavor::Imag, migrate), accept);
    return {re, im};
}

SparseEstimate estimate_pi(const Circuit &circuit,
                           const Partition &partition,
                           uint64_t seed,
                           SparseEstimateOptions options) {
    return estimate_pi(circuit, partition, seed, DenseEmulatorBackend(), options);
}

SparseEstimate estimate_pi(const Circuit &circuit,
                           const Partition &partition,
                           uint64_t seed,
                           const CircuitBackend &backend,
                           SparseEstimateOptions options) {
    if (!(options.epsilon > 0) || !(options.delta > 0) || options.delta >= 1) {
        throw std::invalid_argument("epsilon must be positive and delta in (0, 1)");
    }
    CutExpansion expansion(circuit, partition);
    SparseEstimate out;
    out.chi = expansion.num_terms();
    out.k = partition.a.size();
    if (out.chi > 4096 || out.k > 16) {
        throw std::overflow_error("cut too large: chi = " + std::to_string(out.chi) + ", k = " +
                                  std::to_string(out.k));
    }
    size_t k = out.k;
    size_t ys = size_t{1} << k;
    out.xi_bound = std::ldexp(static_cast<double>(out.chi), static_cast<int>(k) + 1);

    std::vector<CutTerm> terms;
    // amp[alpha][y] = c_alpha <y|V_alpha|0^k>
    std::vector<Eigen::VectorXcd> amp;
    for (uint64_t a = 0; a < out.chi; a++) {
        terms.push_back(expansion.term(a));
        amp.push_back(terms.back().coefficient * simulate_gates_merged(k, terms.back().v.gates()));
    }
    std::vector<std::vector<int8_t>> accept;
    for (size_t y = 0; y < ys; y++) {
        accept.push_back(accept_table(circuit, partition, y_bits(y, k)));
    }

    struct Pair {
        size_t alpha, beta;
        std::vector<std::pair<size_t, Complex>> weights;  // (y, conj(c_alpha(y)) c_beta(y))
        RCircuit real, imag;
        std::unique_ptr<PreparedCircuit> real_run, imag_run;
    };
    std::vector<Pair> pairs;
    double w2 = 0;
    for (size_t a = 0; a < out.chi; a++) {
        for (size_t b = 0; b < out.chi; b++) {
            Pair p;
            p.alpha = a;
            p.beta = b;
            for (size_t y = 0; y < ys; y++) {
                Complex w = std::conj(amp[a][static_cast<Eigen::Index>(y)]) * amp[b][static_cast<Eigen::Index>(y)];
                if (std::abs(w) > 1e-15) {
                    p.weights.push_back({y, w});
                    w2 += std::norm(w);
                }
            }
            if (p.weights.empty()) {
                continue;
            }
            p.real = build_R(terms[a].w, terms[b].w, RFlavor::Real, options.migrate);
            p.imag = build_R(terms[a].w, terms[b].w, RFlavor::Imag, options.migrate);
            out.max_r_degree = std::max(
                {out.max_r_degree, p.real.circuit.max_two_qubit_degree(), p.imag.circuit.max_two_qubit_degree()});
            pairs.push_back(std::move(p));
        }
    }
    out.weight_square_sum = w2;

    if (options.exact_expectation) {
        double total = 0;
        for (const auto &p : pairs) {
            for (const auto &[y, w] : p.weights) {
                Complex e(dense_expectation(p.real, accept[y]), dense_expectation(p.imag, accept[y]));
                total += (w * e).real();
            }
        }
        out.estimate = total;
        out.exact = true;
        return out;
    }

    // Hoeffding over the independent sigma draws inside one xi: each contributes
    // Re(w) sigma' - Im(w) sigma'' with range 2|Re w| and 2|Im w|.
    size_t m = options.samples;
    if (m == 0) {
        double count = 2 * w2 * std::log(2 / options.delta) / (options.epsilon * options.epsilon);
        m = static_cast<size_t>(std::max(1.0, std::ceil(count)));
    }
    if (m > options.max_samples) {
        throw std::overflow_error("sparse estimate needs " + std::to_string(m) + " samples of xi, above the cap of " +
                                  std::to_string(options.max_samples) + "; raise the cap or epsilon");
    }
    for (auto &p : pairs) {
        p.real_run = backend.prepare(p.real.circuit);
        p.imag_run = backend.prepare(p.imag.circuit);
    }
    std::vector<OutcomeDecoder> real_dec, imag_dec;
    for (const auto &p : pairs) {
        real_dec.emplace_back(p.real);
        imag_dec.emplace_back(p.imag);
    }
    std::mt19937_64 rng(seed);
    double sum = 0;
    for (size_t s = 0; s < m; s++) {
        Complex xi = 0;
        for (size_t i = 0; i < pairs.size(); i++) {
            const Pair &p = pairs[i];
            for (const auto &[y, w] : p.weights) {
                int s1 = real_dec[i].sigma(p.real_run->sample(rng), accept[y]);
                int s2 = imag_dec[i].sigma(p.imag_run->sample(rng), accept[y]);
                xi += w * Complex(s1, s2);
                out.backend_runs += 2;
            }
        }
        out.max_abs_xi = std::max(out.max_abs_xi, std::abs(xi));
        if (std::abs(xi) > out.xi_bound * (1 + 1e-12)) {
            throw std::logic_error("|xi| exceeded its bound");
        }
        sum += xi.real();
    }
    out.samples = m;
    out.estimate = sum / static_cast<double>(m);
    return out;
}

}  // namespace pbcsim
