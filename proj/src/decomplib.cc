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

#include "pbcsim/decomplib.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "pbcsim/json_io.h"
#include "pbcsim/parse_error.h"

namespace pbcsim {

namespace {

using json = nlohmann::json;

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

size_t parse_size(const std::string &s, const std::string &context) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
        throw std::invalid_argument("expected a non-negative integer in " + context + ", got '" + s + "'");
    }
    return std::stoul(s);
}

std::string edges_descriptor(const std::vector<std::pair<int, int>> &edges) {
    std::string out = "CZ:";
    for (size_t i = 0; i < edges.size(); i++) {
        if (i) {
            out += ",";
        }
        out += std::to_string(edges[i].first) + "-" + std::to_string(edges[i].second);
    }
    return out;
}

DecompositionTerm term(Integer p, Integer q, const std::string &descriptor) {
    return {Coefficient::from_exact(ScaledQuadratic(p, q, 0)), state_from_descriptor(descriptor), descriptor};
}

// The six-vertex edges in lexicographic order; bit k of a graph mask selects EDGES[k].
const std::vector<std::pair<int, int>> &six_vertex_edges() {
    static const std::vector<std::pair<int, int>> edges = [] {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < 6; i++) {
            for (int j = i + 1; j < 6; j++) {
                e.push_back({i, j});
            }
        }
        return e;
    }();
    return edges;
}

std::vector<std::pair<int, int>> edges_of(uint32_t graph) {
    std::vector<std::pair<int, int>> out;
    const auto &edges = six_vertex_edges();
    for (size_t k = 0; k < edges.size(); k++) {
        if ((graph >> k) & 1) {
            out.push_back(edges[k]);
        }
    }
    return out;
}

// The five symmetric terms of the H^6 decomposition.
std::vector<DecompositionTerm> h6_symmetric_terms() {
    return {
        term(-16, 12, "B6,0"),
        term(96, -68, "B6,6"),
        term(10, -7, "E6"),
        term(-14, 10, "O6"),
        term(7, -5, "K6 Z:0,1,2,3,4,5"),
    };
}

}  // namespace

MagicTarget parse_target(const std::string &target) {
    std::string body = target;
    bool normalized = false;
    const std::string suffix = ":normalized";
    if (body.size() > suffix.size() && body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
        normalized = true;
        body.resize(body.size() - suffix.size());
    }
    if (body.rfind("H^", 0) != 0) {
        throw std::invalid_argument("unknown target '" + target + "' (expected H^k or H^k:normalized)");
    }
    size_t k = parse_size(body.substr(2), "target '" + target + "'");
    if (k == 0 || k > 24) {
        throw std::invalid_argument("target qubit count out of range in '" + target + "'");
    }
    return {k, normalized};
}

std::string target_name(size_t k, bool normalized) {
    return "H^" + std::to_string(k) + (normalized ? ":normalized" : "");
}

ScaledQuadratic magic_t() {
    return ScaledQuadratic(-1, 1, 0);
}

std::optional<std::vector<ExactAmplitude>> target_exact(const std::string &target) {
    MagicTarget m = parse_target(target);
    if (m.normalized && m.num_qubits % 2) {
        return std::nullopt;
    }
    size_t k = m.num_qubits;
    std::vector<ExactAmplitude> powers(k + 1);
    ScaledQuadratic norm = ScaledQuadratic::from_int(1);
    if (m.normalized) {
        // (1 + t^2)^(-k/2) = ((2 + sqrt2) / 4)^(k/2).
        for (size_t i = 0; i < k / 2; i++) {
            norm = norm * ScaledQuadratic(2, 1, -2);
        }
    }
    ScaledQuadratic p = norm;
    for (size_t w = 0; w <= k; w++) {
        powers[w] = ExactAmplitude(p);
        p = p * magic_t();
    }
    std::vector<ExactAmplitude> out(size_t{1} << k);
    for (size_t x = 0; x < out.size(); x++) {
        out[x] = powers[std::popcount(x)];
    }
    return out;
}

Eigen::VectorXcd target_dense(const std::string &target) {
    MagicTarget m = parse_target(target);
    double t = std::sqrt(2.0) - 1;
    double scale = m.normalized ? std::pow(1 + t * t, -0.5 * double(m.num_qubits)) : 1.0;
    Eigen::VectorXcd out(Eigen::Index{1} << m.num_qubits);
    for (Eigen::Index x = 0; x < out.size(); x++) {
        out[x] = scale * std::pow(t, std::popcount(static_cast<uint64_t>(x)));
    }
    return out;
}

AffineStabilizerState state_from_descriptor(const std::string &descriptor) {
    std::istringstream in(descriptor);
    std::string family;
    if (!(in >> family) || family.size() < 2) {
        throw std::invalid_argument("empty state descriptor");
    }
    AffineStabilizerState s;
    char kind = family[0];
    std::string rest = family.substr(1);
    if (kind == 'B') {
        auto parts = split(rest, ',');
        if (parts.size() != 2) {
            throw std::invalid_argument("expected B<n>,0 or B<n>,<n>, got '" + family + "'");
        }
        size_t n = parse_size(parts[0], family);
        size_t w = parse_size(parts[1], family);
        if (w != 0 && w != n) {
            throw std::invalid_argument("only B<n>,0 and B<n>,<n> are stabilizer states, got '" + family + "'");
        }
        s = family_state(w == 0 ? StateFamily::B_n0 : StateFamily::B_nn, n);
    } else {
        size_t n = parse_size(rest, family);
        if (n == 0 || n > 64) {
            throw std::invalid_argument("qubit count out of range in '" + family + "'");
        }
        switch (kind) {
            case 'E':
                s = family_state(StateFamily::E_n, n);
                break;
            case 'O':
                s = family_state(StateFamily::O_n, n);
                break;
            case 'K':
                s = family_state(StateFamily::K_n, n);
                break;
            default:
                throw std::invalid_argument("unknown state family '" + family + "'");
        }
    }
    size_t n = s.num_qubits();
    auto qubit = [&](const std::string &text) {
        size_t q = parse_size(text, "decoration of '" + descriptor + "'");
        if (q >= n) {
            throw std::invalid_argument("qubit " + text + " out of range in '" + descriptor + "'");
        }
        return q;
    };
    std::string deco;
    while (in >> deco) {
        if (deco == "CZALL") {
            for (size_t a = 0; a < n; a++) {
                for (size_t b = a + 1; b < n; b++) {
                    s = s.apply_cz(a, b);
                }
            }
            continue;
        }
        auto colon = deco.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("unknown decoration '" + deco + "'");
        }
        std::string op = deco.substr(0, colon);
        auto args = split(deco.substr(colon + 1), ',');
        for (const auto &arg : args) {
            if (op == "Z") {
                s = s.apply_z(qubit(arg));
            } else if (op == "X") {
                s = s.apply_x(qubit(arg));
            } else if (op == "CZ") {
                auto ends = split(arg, '-');
                if (ends.size() != 2) {
                    throw std::invalid_argument("expected an edge a-b, got '" + arg + "'");
                }
                size_t a = qubit(ends[0]);
                size_t b = qubit(ends[1]);
                if (a == b) {
                    throw std::invalid_argument("self-loop '" + arg + "' in '" + descriptor + "'");
                }
                s = s.apply_cz(a, b);
            } else {
                throw std::invalid_argument("unknown decoration '" + deco + "'");
            }
        }
    }
    return s;
}

GraphPair derive_h6_graphs() {
    auto target = *target_exact("H^6");
    std::vector<ExactAmplitude> residual = target;
    for (const auto &t : h6_symmetric_terms()) {
        ExactAmplitude c(*t.coefficient.exact);
        auto v = t.state.to_dense_exact();
        for (size_t x = 0; x < 64; x++) {
            residual[x] = residual[x] - c * v[x];
        }
    }
    // Divide by 10 - 7 sqrt2 using (10 - 7 sqrt2)(10 + 7 sqrt2) = 2.
    std::vector<int> quotient(64);
    for (size_t x = 0; x < 64; x++) {
        ScaledQuadratic r = residual[x].real_part();
        if (!residual[x].is_real()) {
            throw std::logic_error("H^6 residual is not real");
        }
        QuadraticInteger q = r.value() * QuadraticInteger{10, 7};
        int e = r.exp() - 1;
        if (q.q != 0 || e < 0 || e > 4) {
            if (!q.is_zero()) {
                throw std::logic_error("H^6 residual is not an integer multiple of 10 - 7 sqrt2");
            }
        }
        quotient[x] = q.is_zero() ? 0 : static_cast<int>(q.p) << e;
    }

    std::vector<uint64_t> odd;
    for (uint64_t x = 0; x < 64; x++) {
        if (std::popcount(x) % 2) {
            odd.push_back(x);
        } else if (quotient[x] != 0) {
            throw std::logic_error("H^6 residual is nonzero on an even-weight string");
        }
    }
    // Sign masks over the odd strings: forced bits where the residual is +-2,
    // free (and opposite between the two graphs) where it is 0.
    uint32_t forced_mask = 0, forced_value = 0;
    for (size_t i = 0; i < odd.size(); i++) {
        int q = quotient[odd[i]];
        if (q == 2 || q == -2) {
            forced_mask |= uint32_t{1} << i;
            if (q < 0) {
                forced_value |= uint32_t{1} << i;
            }
        } else if (q != 0) {
            throw std::logic_error("unexpected H^6 residual value");
        }
    }
    const auto &edges = six_vertex_edges();
    std::vector<uint32_t> inside(odd.size(), 0);
    for (size_t i = 0; i < odd.size(); i++) {
        for (size_t k = 0; k < edges.size(); k++) {
            uint64_t x = odd[i];
            if (((x >> (5 - edges[k].first)) & 1) && ((x >> (5 - edges[k].second)) & 1)) {
                inside[i] |= uint32_t{1} << k;
            }
        }
    }
    std::vector<uint32_t> order(1u << edges.size());
    for (uint32_t g = 0; g < order.size(); g++) {
        order[g] = g;
    }
    auto key = [](uint32_t g) {
        return std::make_pair(std::popcount(g), g);
    };
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return key(a) < key(b);
    });
    std::unordered_map<uint32_t, uint32_t> representative;
    for (uint32_t g : order) {
        uint32_t mask = 0;
        for (size_t i = 0; i < odd.size(); i++) {
            if (std::popcount(g & inside[i]) & 1) {
                mask |= uint32_t{1} << i;
            }
        }
        representative.emplace(mask, g);
    }

    GraphPair best;
    std::optional<std::pair<std::pair<int, uint32_t>, std::pair<int, uint32_t>>> best_key;
    uint32_t free_mask = ~forced_mask & ((odd.size() == 32) ? 0xFFFFFFFFu : ((1u << odd.size()) - 1));
    for (const auto &[mask, g1] : representative) {
        if ((mask & forced_mask) != forced_value) {
            continue;
        }
        uint32_t other = mask ^ free_mask;
        auto it = representative.find(other);
        if (it == representative.end() || other < mask) {
            continue;
        }
        best.valid_pairs++;
        uint32_t g2 = it->second;
        auto k1 = key(g1), k2 = key(g2);
        auto pair_key = std::make_pair(std::min(k1, k2), std::max(k1, k2));
        if (!best_key || pair_key < *best_key) {
            best_key = pair_key;
            best.first = edges_of(pair_key.first.second);
            best.second = edges_of(pair_key.second.second);
        }
    }
    if (!best_key) {
        throw std::logic_error("no graph pair completes the H^6 decomposition");
    }
    return best;
}

GraphPair frozen_h6_graphs() {
    // Output of derive_h6_graphs, kept as data so lookups stay cheap.
    return {{{0, 1}, {0, 2}, {1, 2}}, {{3, 4}, {3, 5}, {4, 5}}, 16};
}

std::string graph_pair_text(const GraphPair &p) {
    std::ostringstream out;
    out << "# Graphs G' and G'' on six vertices (qubits 0..5) completing the H^6 decomposition.\n";
    out << "# Produced by derive_h6_graphs; " << p.valid_pairs << " valid graph-class pairs exist.\n";
    for (const auto *g : {&p.first, &p.second}) {
        out << (g == &p.first ? "first:" : "second:");
        for (auto [a, b] : *g) {
            out << " " << a << "-" << b;
        }
        out << "\n";
    }
    out << "pairs: " << p.valid_pairs << "\n";
    return out.str();
}

GraphPair parse_graph_pair_text(const std::string &text) {
    GraphPair p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string tok;
        if (key == "pairs:") {
            ls >> p.valid_pairs;
            continue;
        }
        auto *target = key == "first:" ? &p.first : key == "second:" ? &p.second : nullptr;
        if (!target) {
            throw std::invalid_argument("unknown key in graph file: '" + key + "'");
        }
        while (ls >> tok) {
            auto ends = split(tok, '-');
            if (ends.size() != 2) {
                throw std::invalid_argument("bad edge '" + tok + "'");
            }
            target->push_back({static_cast<int>(parse_size(ends[0], tok)), static_cast<int>(parse_size(ends[1], tok))});
        }
    }
    return p;
}

StabilizerDecomposition magic_decomposition(size_t k) {
    StabilizerDecomposition d{k, target_name(k, false), {}};
    switch (k) {
        case 1:
            d.terms = {term(1, 0, "B1,0"), term(-1, 1, "B1,1")};
            break;
        case 2:
            d.terms = {term(2, -1, "E2"), term(-1, 1, "K2")};
            break;
        case 3:
            d.terms = {term(-8, 6, "B3,3"), term(2, -1, "E3"), term(-1, 1, "K3")};
            break;
        case 4:
            d.terms = {term(4, -2, "B4,0"), term(20, -14, "B4,4"), term(-4, 3, "O4"), term(-3, 2, "K4 Z:0,1,2,3")};
            break;
        case 5:
            d.terms = {
                term(-16, 12, "B5,0"), term(-40, 28, "B5,5"),   term(-4, 3, "O5"),
                term(10, -7, "E5"),    term(3, -2, "O5 CZALL"), term(7, -5, "E5 CZALL"),
            };
            break;
        case 6: {
            d.terms = h6_symmetric_terms();
            GraphPair g = frozen_h6_graphs();
            d.terms.push_back(term(10, -7, "O6 " + edges_descriptor(g.first)));
            d.terms.push_back(term(10, -7, "O6 " + edges_descriptor(g.second)));
            break;
        }
        default:
            throw std::invalid_argument("built-in decompositions exist for 1 <= k <= 6, got " + std::to_string(k));
    }
    return d;
}

StabilizerDecomposition normalized_h2_decomposition() {
    StabilizerDecomposition d{2, target_name(2, true), {}};
    d.terms.push_back({Coefficient::from_exact(ScaledQuadratic(1, 0, -1)), state_from_descriptor("E2"), "E2"});
    d.terms.push_back({Coefficient::from_exact(ScaledQuadratic(0, 1, -2)), state_from_descriptor("K2"), "K2"});
    return d;
}

VerificationResult verify_decomposition(const StabilizerDecomposition &d, size_t max_qubits) {
    if (d.num_qubits > max_qubits) {
        throw std::invalid_argument("verify_decomposition: " + std::to_string(d.num_qubits) +
                                    " qubits exceeds the dense limit of " + std::to_string(max_qubits));
    }
    for (const auto &t : d.terms) {
        if (t.state.num_qubits() != d.num_qubits) {
            throw std::invalid_argument("decomposition term has the wrong qubit count");
        }
    }
    VerificationResult out;
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(Eigen::Index{1} << d.num_qubits);
    for (const auto &t : d.terms) {
        sum += t.coefficient.value * t.state.to_dense(max_qubits);
    }
    out.residual = (sum - target_dense(d.target)).norm();

    auto target = target_exact(d.target);
    bool all_exact = target.has_value() && std::all_of(d.terms.begin(), d.terms.end(), [](const auto &t) {
                         return t.coefficient.exact.has_value();
                     });
    if (all_exact) {
        std::vector<ExactAmplitude> acc(size_t{1} << d.num_qubits);
        for (const auto &t : d.terms) {
            ExactAmplitude c(*t.coefficient.exact);
            auto v = t.state.to_dense_exact(max_qubits);
            for (size_t x = 0; x < acc.size(); x++) {
                if (!v[x].is_zero()) {
                    acc[x] += c * v[x];
                }
            }
        }
        out.exact = acc == *target;
    }
    return out;
}

ProductDecomposition::ProductDecomposition(std::vector<StabilizerDecomposition> blocks) : blocks_(std::move(blocks)) {
    for (const auto &b : blocks_) {
        if (b.terms.empty()) {
            throw std::invalid_argument("decomposition block without terms");
        }
        num_qubits_ += b.num_qubits;
    }
}

ProductDecomposition ProductDecomposition::tensor_power(const StabilizerDecomposition &d, size_t m) {
    if (m == 0) {
        throw std::invalid_argument("tensor power needs m >= 1");
    }
    return ProductDecomposition(std::vector<StabilizerDecomposition>(m, d));
}

ProductDecomposition ProductDecomposition::magic(size_t n, size_t base_k) {
    if (base_k < 1 || base_k > 6) {
        throw std::invalid_argument("base block size must be between 1 and 6");
    }
    std::vector<StabilizerDecomposition> blocks(n / base_k, magic_decomposition(base_k));
    if (n % base_k) {
        blocks.push_back(magic_decomposition(n % base_k));
    }
    return ProductDecomposition(std::move(blocks));
}

uint64_t ProductDecomposition::num_terms() const {
    uint64_t total = 1;
    for (const auto &b : blocks_) {
        if (__builtin_mul_overflow(total, b.terms.size(), &total) || total > (uint64_t{1} << 62)) {
            throw std::overflow_error("product decomposition has too many terms");
        }
    }
    return total;
}

std::vector<size_t> ProductDecomposition::multi_index(uint64_t index) const {
    if (index >= num_terms()) {
        throw std::out_of_range("term index out of range");
    }
    std::vector<size_t> out(blocks_.size());
    for (size_t i = blocks_.size(); i-- > 0;) {
        size_t r = blocks_[i].terms.size();
        out[i] = index % r;
        index /= r;
    }
    return out;
}

Coefficient ProductDecomposition::coefficient(uint64_t index) const {
    auto idx = multi_index(index);
    std::optional<ScaledQuadratic> exact = ScaledQuadratic::from_int(1);
    std::complex<double> value = 1;
    for (size_t i = 0; i < blocks_.size(); i++) {
        const auto &c = blocks_[i].terms[idx[i]].coefficient;
        value *= c.value;
        if (exact && c.exact) {
            exact = *exact * *c.exact;
        } else {
            exact.reset();
        }
    }
    if (exact) {
        return Coefficient::from_exact(*exact);
    }
    return Coefficient::approximate(value);
}

AffineStabilizerState ProductDecomposition::state(uint64_t index) const {
    auto idx = multi_index(index);
    AffineStabilizerState s = blocks_[0].terms[idx[0]].state;
    for (size_t i = 1; i < blocks_.size(); i++) {
        s = s.tensor(blocks_[i].terms[idx[i]].state);
    }
    return s;
}

StabilizerDecomposition ProductDecomposition::materialize() const {
    std::string target;
    bool all_magic = true;
    for (const auto &b : blocks_) {
        auto m = parse_target(b.target);
        all_magic &= !m.normalized;
    }
    target = all_magic ? target_name(num_qubits_, false) : "";
    if (!all_magic) {
        bool all_normalized = true;
        for (const auto &b : blocks_) {
            all_normalized &= parse_target(b.target).normalized;
        }
        if (!all_normalized) {
            throw std::invalid_argument("cannot name the target of mixed normalized and unnormalized blocks");
        }
        target = target_name(num_qubits_, true);
    }
    StabilizerDecomposition d{num_qubits_, target, {}};
    uint64_t count = num_terms();
    for (uint64_t i = 0; i < count; i++) {
        d.terms.push_back({coefficient(i), state(i), ""});
    }
    return d;
}

ProductDecomposition tensor_power_decomposition(const StabilizerDecomposition &d, size_t m) {
    return ProductDecomposition::tensor_power(d, m);
}

ExactAmplitude parse_exact_amplitude(const std::string &text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw std::invalid_argument("expected \"(c0,c1,c2,c3; e)\", got \"" + text + "\"");
    }
    s = s.substr(1, s.size() - 2);
    auto semi = s.find(';');
    if (semi == std::string::npos) {
        throw std::invalid_argument("expected \"(c0,c1,c2,c3; e)\", got \"" + text + "\"");
    }
    auto cs = split(s.substr(0, semi), ',');
    if (cs.size() != 4) {
        throw std::invalid_argument("expected four coefficients in \"" + text + "\"");
    }
    Integer e = parse_integer(s.substr(semi + 1));
    if (e > 100000 || e < -100000) {
        throw std::invalid_argument("exponent out of range in \"" + text + "\"");
    }
    return ExactAmplitude(
        parse_integer(cs[0]), parse_integer(cs[1]), parse_integer(cs[2]), parse_integer(cs[3]), static_cast<int>(e));
}

std::string decomposition_to_json(const StabilizerDecomposition &d) {
    json root;
    root["qubits"] = d.num_qubits;
    root["target"] = d.target;
    root["terms"] = json::array();
    for (const auto &t : d.terms) {
        json jt;
        if (t.coefficient.exact) {
            jt["coefficient"] = t.coefficient.exact->str();
        } else {
            jt["coefficient"] = {{"re", t.coefficient.value.real()}, {"im", t.coefficient.value.imag()}};
        }
        if (!t.descriptor.empty()) {
            jt["state"] = t.descriptor;
        } else {
            const auto &s = t.state;
            json js;
            js["basis"] = json::array();
            for (size_t a = 0; a < s.dimension(); a++) {
                js["basis"].push_back(s.basis_matrix().row(a).str());
            }
            js["offset"] = s.offset().str();
            json phase;
            phase["const"] = s.phase().constant();
            phase["linear"] = json::array();
            phase["quadratic"] = json::array();
            for (size_t a = 0; a < s.dimension(); a++) {
                phase["linear"].push_back(s.phase().linear(a));
                for (size_t b = a + 1; b < s.dimension(); b++) {
                    if (s.phase().quadratic(a, b)) {
                        phase["quadratic"].push_back({a, b});
                    }
                }
            }
            js["phase"] = phase;
            js["scale"] = s.scale().str();
            jt["state"] = js;
        }
        root["terms"].push_back(jt);
    }
    return root.dump(2) + "\n";
}

namespace {

AffineStabilizerState state_from_json(const json &js, size_t n) {
    if (js.is_string()) {
        return state_from_descriptor(js.get<std::string>());
    }
    if (!js.is_object()) {
        throw std::invalid_argument("state must be a descriptor string or an object");
    }
    BitVector offset = BitVector::from_string(js.at("offset").get<std::string>());
    BitMatrix basis(0, offset.size());
    for (const auto &row : js.at("basis")) {
        basis.append_row(BitVector::from_string(row.get<std::string>()));
    }
    DegreeTwoPolynomial f(basis.rows());
    if (js.contains("phase")) {
        const auto &ph = js.at("phase");
        f.set_constant(ph.value("const", 0));
        if (ph.contains("linear")) {
            if (ph.at("linear").size() != basis.rows()) {
                throw std::invalid_argument("phase.linear length differs from the number of basis rows");
            }
            for (size_t a = 0; a < basis.rows(); a++) {
                f.set_linear(a, ph.at("linear")[a].get<int>());
            }
        }
        if (ph.contains("quadratic")) {
            for (const auto &pair : ph.at("quadratic")) {
                f.flip_quadratic(pair.at(0).get<size_t>(), pair.at(1).get<size_t>());
            }
        }
    }
    ExactAmplitude scale = ExactAmplitude::one();
    if (js.contains("scale")) {
        scale = parse_exact_amplitude(js.at("scale").get<std::string>());
    }
    (void)n;
    return AffineStabilizerState(basis, offset, f, scale);
}

}  // namespace

StabilizerDecomposition decomposition_from_json(const std::string &text, const std::string &source) {
    LocatedJson doc(text, source);
    const json &root = doc.root();
    StabilizerDecomposition d;
    std::string where;
    try {
        if (!root.is_object()) {
            throw std::invalid_argument("expected a JSON object");
        }
        where = "/qubits";
        d.num_qubits = root.at("qubits").get<size_t>();
        where = "/target";
        d.target = root.at("target").get<std::string>();
        auto m = parse_target(d.target);
        if (m.num_qubits != d.num_qubits) {
            throw std::invalid_argument("target qubit count differs from 'qubits'");
        }
        where = "/terms";
        const auto &terms = root.at("terms");
        if (!terms.is_array() || terms.empty()) {
            throw std::invalid_argument("'terms' must be a non-empty array");
        }
        for (size_t i = 0; i < terms.size(); i++) {
            const auto &jt = terms[i];
            where = "/terms/" + std::to_string(i) + "/coefficient";
            DecompositionTerm t;
            const auto &jc = jt.at("coefficient");
            if (jc.is_string()) {
                t.coefficient = Coefficient::from_exact(ScaledQuadratic::parse(jc.get<std::string>()));
            } else {
                t.coefficient = Coefficient::approximate({jc.at("re").get<double>(), jc.value("im", 0.0)});
            }
            where = "/terms/" + std::to_string(i) + "/state";
            const auto &js = jt.at("state");
            t.state = state_from_json(js, d.num_qubits);
            if (js.is_string()) {
                t.descriptor = js.get<std::string>();
            }
            if (t.state.num_qubits() != d.num_qubits) {
                throw std::invalid_argument("state has " + std::to_string(t.state.num_qubits()) + " qubits");
            }
            d.terms.push_back(std::move(t));
        }
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        doc.fail(where, (where.empty() ? std::string() : where.substr(1) + ": ") + e.what());
    }
    return d;
}

InnerProductInput inner_input_from_json(const std::string &text, const std::string &source) {
    LocatedJson doc(text, source);
    const json &root = doc.root();
    InnerProductInput in;
    std::string where;
    try {
        if (!root.is_object()) {
            throw std::invalid_argument("expected a JSON object");
        }
        where = "/qubits";
        in.num_qubits = root.at("qubits").get<size_t>();
        for (auto [key, state] : {std::pair{"psi", &in.psi}, std::pair{"phi", &in.phi}}) {
            where = std::string("/") + key;
            *state = state_from_json(root.at(key), in.num_qubits);
            if (state->num_qubits() != in.num_qubits) {
                throw std::invalid_argument("state has " + std::to_string(state->num_qubits()) + " qubits");
            }
        }
        if (root.contains("generators")) {
            where = "/generators";
            const auto &gens = root.at("generators");
            if (!gens.is_array()) {
                throw std::invalid_argument("'generators' must be an array of Pauli strings");
            }
            for (size_t i = 0; i < gens.size(); i++) {
                where = "/generators/" + std::to_string(i);
                PauliOperator p = PauliOperator::from_string(gens[i].get<std::string>());
                if (p.num_qubits() != in.num_qubits) {
                    throw std::invalid_argument("generator acts on " + std::to_string(p.num_qubits()) + " qubits");
                }
                in.generators.push_back(p);
            }
        }
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        doc.fail(where, where.substr(1) + ": " + e.what());
    }
    return in;
}

}  // namespace pbcsim
