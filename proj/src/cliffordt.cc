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

#include "pbcsim/cliffordt.h"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

namespace pbcsim {

namespace {

PauliOperator letter(size_t n, size_t q, char kind) {
    return PauliOperator::single(n, q, kind);
}

/// Image of X_q (kind 'X') or Z_q (kind 'Z') under G, or under G^dag.
PauliOperator gate_image(const Gate &g, size_t n, size_t q, char kind, bool inverse) {
    GateKind k = g.kind;
    if (inverse) {
        if (k == GateKind::S) {
            k = GateKind::SDG;
        } else if (k == GateKind::SDG) {
            k = GateKind::S;
        }
    }
    PauliOperator p = letter(n, q, kind);
    switch (k) {
        case GateKind::H:
            return letter(n, q, kind == 'X' ? 'Z' : 'X');
        case GateKind::S:
            return kind == 'X' ? letter(n, q, 'Y') : p;
        case GateKind::SDG:
            return kind == 'X' ? -letter(n, q, 'Y') : p;
        case GateKind::X:
            return kind == 'X' ? p : -p;
        case GateKind::Y:
            return -p;
        case GateKind::Z:
            return kind == 'X' ? -p : p;
        case GateKind::CNOT:
            if (q == g.q0) {
                return kind == 'X' ? p * letter(n, g.q1, 'X') : p;
            }
            return kind == 'X' ? p : letter(n, g.q0, 'Z') * p;
        case GateKind::CZ: {
            size_t other = q == g.q0 ? g.q1 : g.q0;
            return kind == 'X' ? p * letter(n, other, 'Z') : p;
        }
        case GateKind::SWAP:
            return letter(n, q == g.q0 ? g.q1 : g.q0, kind);
        case GateKind::CY:
            if (q == g.q0) {
                return kind == 'X' ? p * letter(n, g.q1, 'Y') : p;
            }
            return letter(n, g.q0, 'Z') * p;
        default:
            throw std::invalid_argument("gate " + gate_str(g) + " is not Clifford");
    }
}

std::vector<size_t> gate_qubits(const Gate &g) {
    if (g.is_two_qubit()) {
        return {g.q0, g.q1};
    }
    return {g.q0};
}

void check_gate(const Gate &g, size_t n) {
    if (!g.is_clifford()) {
        throw std::invalid_argument("gate " + gate_str(g) + " is not Clifford");
    }
    for (size_t q : gate_qubits(g)) {
        if (q >= n) {
            throw std::invalid_argument("gate " + gate_str(g) + " acts outside " + std::to_string(n) + " qubits");
        }
    }
}

}  // namespace

PauliOperator conjugate_by_gate(const Gate &g, const PauliOperator &p, bool inverse) {
    size_t n = p.num_qubits();
    check_gate(g, n);
    // p = i^k (x) X^x_j Z^z_j; replace the factors on the gate's qubits by their images.
    BitVector x = p.x(), z = p.z();
    std::vector<PauliOperator> factors;
    for (size_t q : gate_qubits(g)) {
        if (x.get(q)) {
            factors.push_back(gate_image(g, n, q, 'X', inverse));
        }
        if (z.get(q)) {
            factors.push_back(gate_image(g, n, q, 'Z', inverse));
        }
        x.set(q, false);
        z.set(q, false);
    }
    PauliOperator out(x, z, p.phase());
    PauliOperator local(n);
    for (const auto &f : factors) {
        local = local * f;
    }
    return out * local;
}

PauliOperator conjugate_by_pair(const PauliOperator &a, const PauliOperator &b, const PauliOperator &p) {
    if (a.commutes(b) || !a.is_hermitian() || !b.is_hermitian()) {
        throw std::invalid_argument("pair rotation needs anticommuting hermitian Paulis");
    }
    bool ca = p.commutes(a), cb = p.commutes(b);
    if (ca && cb) {
        return p;
    }
    if (!ca && !cb) {
        return -p;
    }
    PauliOperator pab = p * a * b;
    return ca ? pab : -pab;
}

CliffordTableau::CliffordTableau(size_t n) {
    for (size_t j = 0; j < n; j++) {
        x_images_.push_back(letter(n, j, 'X'));
        z_images_.push_back(letter(n, j, 'Z'));
    }
}

PauliOperator CliffordTableau::conjugate(const PauliOperator &p) const {
    size_t n = num_qubits();
    if (p.num_qubits() != n) {
        throw std::invalid_argument("Pauli on " + std::to_string(p.num_qubits()) + " qubits conjugated by a frame on " +
                                    std::to_string(n));
    }
    PauliOperator out = PauliOperator(n).times_i_power(p.phase());
    for (size_t j = 0; j < n; j++) {
        if (p.x().get(j)) {
            out = out * x_images_[j];
        }
        if (p.z().get(j)) {
            out = out * z_images_[j];
        }
    }
    return out;
}

void CliffordTableau::apply_gate(const Gate &g) {
    check_gate(g, num_qubits());
    for (auto *images : {&x_images_, &z_images_}) {
        for (auto &img : *images) {
            img = conjugate_by_gate(g, img);
        }
    }
}

void CliffordTableau::apply_gate_on_right(const Gate &g, bool inverse) {
    size_t n = num_qubits();
    check_gate(g, n);
    std::vector<std::pair<size_t, PauliOperator>> new_x, new_z;
    for (size_t q : gate_qubits(g)) {
        new_x.push_back({q, conjugate(gate_image(g, n, q, 'X', inverse))});
        new_z.push_back({q, conjugate(gate_image(g, n, q, 'Z', inverse))});
    }
    for (auto &[q, img] : new_x) {
        x_images_[q] = std::move(img);
    }
    for (auto &[q, img] : new_z) {
        z_images_[q] = std::move(img);
    }
}

void CliffordTableau::apply_pair_rotation(const PauliOperator &a, const PauliOperator &b) {
    if (a.num_qubits() != num_qubits() || b.num_qubits() != num_qubits()) {
        throw std::invalid_argument("pair rotation size mismatch");
    }
    for (auto *images : {&x_images_, &z_images_}) {
        for (auto &img : *images) {
            img = conjugate_by_pair(a, b, img);
        }
    }
}

bool CliffordTableau::is_valid() const {
    size_t n = num_qubits();
    for (size_t i = 0; i < n; i++) {
        if (!x_images_[i].is_hermitian() || !z_images_[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            bool same = i == j;
            if (x_images_[i].commutes(z_images_[j]) == same) {
                return false;
            }
            if (!x_images_[i].commutes(x_images_[j]) || !z_images_[i].commutes(z_images_[j])) {
                return false;
            }
        }
    }
    return true;
}

void CliffordFrame::apply_gate(const Gate &g) {
    forward_.apply_gate(g);
    inverse_.apply_gate_on_right(g, true);
}

PauliOperator conjugate_pauli(const CliffordFrame &frame, const PauliOperator &p) {
    return frame.conjugate(p);
}

CliffordFrame frame_of(size_t n, const std::vector<Gate> &gates) {
    CliffordFrame f(n);
    for (const auto &g : gates) {
        f.apply_gate(g);
    }
    return f;
}

MeasurementReducer::MeasurementReducer(size_t num_qubits, size_t num_zero)
    : num_zero_(num_zero), inverse_(num_qubits), group_(num_qubits) {
    if (num_zero > num_qubits) {
        throw std::invalid_argument("more zero qubits than qubits");
    }
    for (size_t q = 0; q < num_zero; q++) {
        group_.add(letter(num_qubits, q, 'Z'));
    }
}

void MeasurementReducer::apply_gate(const Gate &g) {
    // C <- G C, so C^dag <- C^dag G^dag.
    inverse_.apply_gate_on_right(g, true);
}

MeasurementReducer::Pending MeasurementReducer::prepare(const PauliOperator &physical) const {
    if (physical.num_qubits() != num_qubits()) {
        throw std::invalid_argument("measurement " + physical.str() + " does not act on " +
                                    std::to_string(num_qubits()) + " qubits");
    }
    if (!physical.is_hermitian()) {
        throw std::invalid_argument("measurement " + physical.str() + " is not hermitian");
    }
    Pending out;
    if (physical.is_identity_up_to_phase()) {
        out.frame_pauli = physical;
        out.sigma = physical.phase() == 0 ? 1 : -1;
        return out;
    }
    out.frame_pauli = inverse_.conjugate(physical);
    auto c = group_.classify(out.frame_pauli);
    switch (c.relation) {
        case StabilizerGroupTracker::Relation::Anticommutes:
            out.kind = Kind::Coin;
            out.partner = group_.generators()[c.generator];
            break;
        case StabilizerGroupTracker::Relation::Dependent:
            out.kind = Kind::Deterministic;
            out.sigma = c.sign;
            break;
        case StabilizerGroupTracker::Relation::Independent:
            out.kind = Kind::Quantum;
            // Commutes with every dummy Z, so it is Z-type on the zero qubits and those factors act as +1.
            out.reduced = out.frame_pauli.slice(num_zero_, num_magic());
            break;
    }
    return out;
}

void MeasurementReducer::resolve(const Pending &pending, int sigma) {
    if (sigma != 1 && sigma != -1) {
        throw std::invalid_argument("outcome must be +1 or -1");
    }
    switch (pending.kind) {
        case Kind::Quantum:
            group_.add(sigma == 1 ? pending.frame_pauli : -pending.frame_pauli);
            break;
        case Kind::Coin:
            // (1 + s P)|chi> = (s P + g)|chi> for g|chi> = |chi>: the state becomes V|chi>, C <- C V.
            inverse_.apply_pair_rotation(sigma == 1 ? pending.frame_pauli : -pending.frame_pauli, pending.partner);
            break;
        case Kind::Deterministic:
            if (sigma != pending.sigma) {
                throw std::invalid_argument("outcome contradicts a deterministic measurement");
            }
            break;
    }
}

namespace {

class CompilerCursor : public PbcCursor {
   public:
    CompilerCursor(const CompiledPbc &program, bool record)
        : program_(&program),
          reducer_(program.circuit().num_qubits + program.num_qubits(), program.circuit().num_qubits),
          slots_(program.num_slots(), 0),
          record_(record) {
        settle();
    }

    PbcStep step() const override {
        PbcStep s;
        if (!pending_) {
            s.kind = StepKind::Output;
            s.output = output();
        } else if (pending_->kind == MeasurementReducer::Kind::Coin) {
            s.kind = StepKind::Coin;
        } else {
            s.kind = StepKind::Measure;
            s.pauli = pending_->reduced;
        }
        return s;
    }

    void advance(int sigma) override {
        if (!pending_) {
            throw std::invalid_argument("advance past the output of a compiled program");
        }
        if (sigma != 1 && sigma != -1) {
            throw std::invalid_argument("outcome must be +1 or -1");
        }
        take(sigma);
        settle();
    }

    std::unique_ptr<PbcCursor> clone() const override { return std::make_unique<CompilerCursor>(*this); }

    std::vector<int> classical_record() const override { return measured_bits(); }

    const std::vector<TraceEvent> &events() const { return events_; }
    bool finished() const { return !pending_; }

    std::vector<int> measured_bits() const {
        std::vector<int> bits;
        for (size_t s : program_->final_slots()) {
            bits.push_back(slots_[s] == -1 ? 1 : 0);
        }
        return bits;
    }

   private:
    int output() const {
        const Circuit &c = program_->circuit();
        std::vector<int> bits(c.num_qubits, 0);
        auto mb = measured_bits();
        for (size_t i = 0; i < c.measured.size(); i++) {
            bits[c.measured[i]] = mb[i];
        }
        return c.postprocess.evaluate(bits);
    }

    void take(int sigma) {
        const auto &op = program_->ops()[index_];
        reducer_.resolve(*pending_, sigma);
        slots_[op.slot] = sigma;
        if (record_) {
            events_.push_back({op.pauli, pending_->frame_pauli, pending_->kind, pending_->reduced, sigma, op.label});
        }
        pending_.reset();
        index_++;
    }

    void settle() {
        const auto &ops = program_->ops();
        while (index_ < ops.size()) {
            const auto &op = ops[index_];
            if (op.kind == CompiledPbc::MicroOp::Clifford) {
                reducer_.apply_gate(op.gate);
                index_++;
                continue;
            }
            if (op.kind == CompiledPbc::MicroOp::Correct) {
                int s1 = slots_[op.slot], s2 = slots_[op.second_slot];
                // ++: I, +-: Z, -+: S, --: Z S.
                if (s1 == -1) {
                    reducer_.apply_gate({GateKind::S, op.qubit});
                }
                if (s2 == -1) {
                    reducer_.apply_gate({GateKind::Z, op.qubit});
                }
                index_++;
                continue;
            }
            pending_ = reducer_.prepare(op.pauli);
            if (pending_->kind == MeasurementReducer::Kind::Deterministic) {
                take(pending_->sigma);
                continue;
            }
            return;
        }
    }

    const CompiledPbc *program_;
    MeasurementReducer reducer_;
    std::vector<int> slots_;
    size_t index_ = 0;
    std::optional<MeasurementReducer::Pending> pending_;
    bool record_ = false;
    std::vector<TraceEvent> events_;
};

CompilerCursor replay(const CompiledPbc &program, const std::vector<int> &outcomes) {
    CompilerCursor cur(program, true);
    for (int s : outcomes) {
        cur.advance(s);
    }
    if (!cur.finished()) {
        throw std::invalid_argument("outcome path " + outcomes_to_string(outcomes) + " stops before the output");
    }
    return cur;
}

}  // namespace

CompiledPbc::CompiledPbc(Circuit circuit) : circuit_(std::move(circuit)) {
    circuit_.validate();
    magic_ = circuit_.t_count();
    size_t n = circuit_.num_qubits;
    size_t total = n + magic_;
    size_t ancilla = n;
    for (const auto &g : circuit_.gates) {
        if (g.is_clifford()) {
            ops_.push_back({MicroOp::Clifford, g, {}, 0, 0, 0, ""});
            continue;
        }
        size_t a = ancilla++;
        std::string tag = "gadget " + std::to_string(a - n);
        // |T> ~ H S^dag |H>.
        ops_.push_back({MicroOp::Clifford, {GateKind::SDG, a}, {}, 0, 0, 0, ""});
        ops_.push_back({MicroOp::Clifford, {GateKind::H, a}, {}, 0, 0, 0, ""});
        size_t s1 = slots_++, s2 = slots_++;
        ops_.push_back({MicroOp::Measure, {}, letter(total, g.q0, 'Z') * letter(total, a, 'Z'), s1, 0, 0, tag + " ZZ"});
        ops_.push_back({MicroOp::Measure, {}, letter(total, a, 'X'), s2, 0, 0, tag + " X"});
        ops_.push_back({MicroOp::Correct, {}, {}, s1, s2, g.q0, ""});
        if (g.kind == GateKind::TDG) {
            // T^dag = S^dag T.
            ops_.push_back({MicroOp::Clifford, {GateKind::SDG, g.q0}, {}, 0, 0, 0, ""});
        }
    }
    for (size_t q : circuit_.measured) {
        final_slots_.push_back(slots_);
        ops_.push_back({MicroOp::Measure, {}, letter(total, q, 'Z'), slots_++, 0, 0, "final q" + std::to_string(q)});
    }
}

std::unique_ptr<PbcCursor> CompiledPbc::start() const {
    return std::make_unique<CompilerCursor>(*this, false);
}

std::vector<TraceEvent> CompiledPbc::trace(const std::vector<int> &outcomes) const {
    return replay(*this, outcomes).events();
}

std::vector<int> CompiledPbc::measured_bits(const std::vector<int> &outcomes) const {
    return replay(*this, outcomes).measured_bits();
}

std::shared_ptr<CompiledPbc> compile_to_pbc(const Circuit &circuit) {
    return std::make_shared<CompiledPbc>(circuit);
}

PbcTree materialize_tree(const PbcProgram &program, size_t max_nodes) {
    std::vector<PbcTree::Node> nodes;
    std::function<size_t(const PbcCursor &)> go = [&](const PbcCursor &cur) -> size_t {
        if (nodes.size() >= max_nodes) {
            throw std::length_error("program has more than " + std::to_string(max_nodes) + " nodes");
        }
        size_t index = nodes.size();
        nodes.emplace_back();
        PbcStep s = cur.step();
        PbcTree::Node node;
        node.kind = s.kind;
        if (s.kind == StepKind::Output) {
            node.output = s.output;
            nodes[index] = node;
            return index;
        }
        node.pauli = s.pauli;
        auto plus = cur.clone();
        plus->advance(1);
        node.on_plus = go(*plus);
        auto minus = cur.clone();
        minus->advance(-1);
        node.on_minus = go(*minus);
        nodes[index] = node;
        return index;
    };
    go(*program.start());
    return PbcTree(program.num_qubits(), std::move(nodes));
}

std::array<GadgetBranch, 4> gadget_semantics_check(const Eigen::Vector2cd &psi) {
    if (std::abs(psi.squaredNorm() - 1) > 1e-9) {
        throw std::invalid_argument("gadget input state is not normalized");
    }
    using cd = std::complex<double>;
    const double r = 1 / std::sqrt(2.0);
    const cd w = std::polar(1.0, M_PI / 4);
    Eigen::Vector2cd t_state(r, r * w);
    Eigen::Vector4cd joint;
    for (int d = 0; d < 2; d++) {
        for (int a = 0; a < 2; a++) {
            joint[2 * d + a] = psi[d] * t_state[a];
        }
    }
    Eigen::Vector2cd target(psi[0], w * psi[1]);
    std::array<GadgetBranch, 4> out;
    int idx = 0;
    for (int s1 : {1, -1}) {
        for (int s2 : {1, -1}) {
            GadgetBranch &b = out[idx++];
            b.sigma1 = s1;
            b.sigma2 = s2;
            // (1 + s1 ZZ)/2: keep basis states whose parity matches.
            Eigen::Vector4cd phi = joint;
            for (int v = 0; v < 4; v++) {
                int parity = ((v >> 1) ^ v) & 1;
                if ((parity ? -1 : 1) != s1) {
                    phi[v] = 0;
                }
            }
            // <s2|_ancilla, with |s2> = (|0> + s2 |1>)/sqrt2; the ancilla is left in |s2>.
            Eigen::Vector2cd data(r * (phi[0] + double(s2) * phi[1]), r * (phi[2] + double(s2) * phi[3]));
            b.probability = data.squaredNorm();
            b.post_state = data / std::sqrt(b.probability);
            Eigen::Vector2cd fixed = b.post_state;
            if (s1 == -1) {
                fixed[1] *= cd(0, 1);
            }
            if (s2 == -1) {
                fixed[1] *= -1.0;
            }
            b.corrected_state = fixed;
            b.fidelity_before = std::norm(target.dot(b.post_state));
            b.fidelity_after = std::norm(target.dot(b.corrected_state));
        }
    }
    return out;
}

}  // namespace pbcsim
