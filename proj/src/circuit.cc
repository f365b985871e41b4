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

#include "pbcsim/circuit.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pbcsim/parse_error.h"

namespace pbcsim {

namespace {

using cd = std::complex<double>;

struct GateSpec {
    const char *name;
    GateKind kind;
    int arity;
};

const std::vector<GateSpec> &gate_specs() {
    static const std::vector<GateSpec> specs = {
        {"H", GateKind::H, 1},         {"S", GateKind::S, 1},      {"SDG", GateKind::SDG, 1},
        {"S_DAG", GateKind::SDG, 1},   {"T", GateKind::T, 1},      {"TDG", GateKind::TDG, 1},
        {"T_DAG", GateKind::TDG, 1},   {"X", GateKind::X, 1},      {"Y", GateKind::Y, 1},
        {"Z", GateKind::Z, 1},         {"CNOT", GateKind::CNOT, 2}, {"CX", GateKind::CNOT, 2},
        {"CZ", GateKind::CZ, 2},       {"CY", GateKind::CY, 2},    {"SWAP", GateKind::SWAP, 2},
    };
    return specs;
}

struct Token {
    std::string text;
    size_t column;
};

std::vector<Token> tokenize(const std::string &line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

size_t parse_index(const Token &tok, const std::string &source, size_t line, const char *what) {
    const std::string &s = tok.text;
    if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(source, line, tok.column, std::string("expected ") + what + ", got '" + s + "'");
    }
    return std::stoul(s);
}

}  // namespace

bool Gate::is_two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::CZ || kind == GateKind::CY || kind == GateKind::SWAP;
}

bool Gate::is_clifford() const {
    return kind != GateKind::T && kind != GateKind::TDG;
}

std::string gate_name(GateKind kind) {
    for (const auto &s : gate_specs()) {
        if (s.kind == kind) {
            return s.name;
        }
    }
    throw std::logic_error("unknown gate kind");
}

std::string gate_str(const Gate &g) {
    std::string out = gate_name(g.kind) + " " + std::to_string(g.q0);
    if (g.is_two_qubit()) {
        out += " " + std::to_string(g.q1);
    }
    return out;
}

BoolExpr BoolExpr::bit(size_t q) {
    BoolExpr e;
    e.nodes_.push_back({'b', q});
    e.root_ = 0;
    e.text_ = "b" + std::to_string(q);
    return e;
}

BoolExpr BoolExpr::parse(const std::string &text) {
    BoolExpr e;
    e.text_ = text;
    size_t pos = 0;
    auto fail = [&](const std::string &msg) -> void {
        throw ParseError("postprocess", 0, 0, "column " + std::to_string(pos + 1) + ": " + msg);
    };
    auto skip = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            pos++;
        }
    };
    auto add = [&](Node n) {
        e.nodes_.push_back(n);
        return static_cast<int>(e.nodes_.size() - 1);
    };
    std::function<int(int)> parse_level;
    std::function<int()> parse_unary = [&]() -> int {
        skip();
        if (pos >= text.size()) {
            fail("unexpected end of expression");
        }
        char c = text[pos];
        if (c == '!' || c == '~') {
            pos++;
            int inner = parse_unary();
            return add({'!', 0, inner, -1});
        }
        if (c == '(') {
            pos++;
            int inner = parse_level(0);
            skip();
            if (pos >= text.size() || text[pos] != ')') {
                fail("expected ')'");
            }
            pos++;
            return inner;
        }
        if (c == '0' || c == '1') {
            pos++;
            return add({'c', static_cast<size_t>(c - '0')});
        }
        if (c == 'b') {
            size_t start = ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                pos++;
            }
            if (pos == start || pos - start > 6) {
                pos = start;
                fail("expected a bit name like b0");
            }
            return add({'b', std::stoul(text.substr(start, pos - start))});
        }
        fail(std::string("unexpected character '") + c + "'");
        return -1;
    };
    // Levels: 0 = '|', 1 = '^', 2 = '&'.
    static const char ops[] = {'|', '^', '&'};
    parse_level = [&](int level) -> int {
        if (level == 3) {
            return parse_unary();
        }
        int left = parse_level(level + 1);
        while (true) {
            skip();
            if (pos < text.size() && text[pos] == ops[level]) {
                pos++;
                int right = parse_level(level + 1);
                left = add({ops[level], 0, left, right});
            } else {
                return left;
            }
        }
    };
    e.root_ = parse_level(0);
    skip();
    if (pos != text.size()) {
        fail(std::string("unexpected character '") + text[pos] + "'");
    }
    return e;
}

int BoolExpr::eval(int node, const std::vector<int> &bits) const {
    const Node &n = nodes_[node];
    switch (n.op) {
        case 'b':
            if (n.value >= bits.size()) {
                throw std::out_of_range("postprocessing refers to bit b" + std::to_string(n.value) + " which is absent");
            }
            return bits[n.value] & 1;
        case 'c':
            return static_cast<int>(n.value);
        case '!':
            return 1 - eval(n.left, bits);
        case '&':
            return eval(n.left, bits) & eval(n.right, bits);
        case '^':
            return eval(n.left, bits) ^ eval(n.right, bits);
        default:
            return eval(n.left, bits) | eval(n.right, bits);
    }
}

int BoolExpr::evaluate(const std::vector<int> &bits) const {
    if (root_ < 0) {
        throw std::logic_error("evaluating an empty expression");
    }
    return eval(root_, bits);
}

std::vector<size_t> BoolExpr::variables() const {
    std::set<size_t> vars;
    for (const auto &n : nodes_) {
        if (n.op == 'b') {
            vars.insert(n.value);
        }
    }
    return {vars.begin(), vars.end()};
}

size_t Circuit::t_count() const {
    size_t count = 0;
    for (const auto &g : gates) {
        count += !g.is_clifford();
    }
    return count;
}

bool Circuit::is_clifford() const {
    return t_count() == 0;
}

size_t Circuit::max_two_qubit_degree() const {
    std::vector<size_t> degree(num_qubits, 0);
    size_t best = 0;
    for (const auto &g : gates) {
        if (g.is_two_qubit()) {
            best = std::max({best, ++degree.at(g.q0), ++degree.at(g.q1)});
        }
    }
    return best;
}

void Circuit::validate() const {
    if (num_qubits == 0) {
        throw std::invalid_argument("circuit has no qubits");
    }
    for (const auto &g : gates) {
        if (g.q0 >= num_qubits || (g.is_two_qubit() && g.q1 >= num_qubits)) {
            throw std::invalid_argument("gate '" + gate_str(g) + "' acts outside " + std::to_string(num_qubits) +
                                        " qubits");
        }
        if (g.is_two_qubit() && g.q0 == g.q1) {
            throw std::invalid_argument("gate '" + gate_str(g) + "' repeats a qubit");
        }
    }
    std::set<size_t> seen;
    for (size_t q : measured) {
        if (q >= num_qubits || !seen.insert(q).second) {
            throw std::invalid_argument("bad measured qubit " + std::to_string(q));
        }
    }
    if (postprocess.empty()) {
        throw std::invalid_argument("circuit has no postprocessing function");
    }
    for (size_t q : postprocess.variables()) {
        if (!seen.count(q)) {
            throw std::invalid_argument("postprocessing uses b" + std::to_string(q) + " but qubit " +
                                        std::to_string(q) + " is not measured");
        }
    }
    if (sparsity && max_two_qubit_degree() > *sparsity) {
        throw std::invalid_argument("circuit is not " + std::to_string(*sparsity) + "-sparse");
    }
}

Circuit parse_circuit(const std::string &text, const std::string &source) {
    Circuit c;
    std::optional<size_t> declared;
    size_t max_index = 0;
    bool any_index = false;
    bool measured_seen = false;
    std::optional<std::pair<std::string, size_t>> post;  // text and line
    size_t post_column = 0;
    std::vector<size_t> gate_lines;
    std::istringstream in(text);
    std::string raw;
    size_t line = 0;
    auto note_index = [&](size_t q) {
        max_index = std::max(max_index, q);
        any_index = true;
    };
    while (std::getline(in, raw)) {
        line++;
        std::string body = raw.substr(0, raw.find('#'));
        auto toks = tokenize(body);
        if (toks.empty()) {
            continue;
        }
        std::string head = toks[0].text;
        for (auto &ch : head) {
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        }
        if (head == "POSTPROCESS") {
            if (post) {
                throw ParseError(source, line, toks[0].column, "POSTPROCESS given twice");
            }
            size_t start = toks.size() > 1 ? toks[1].column - 1 : body.size();
            std::string expr = body.substr(start);
            while (!expr.empty() && std::isspace(static_cast<unsigned char>(expr.back()))) {
                expr.pop_back();
            }
            if (expr.empty()) {
                throw ParseError(source, line, toks[0].column, "POSTPROCESS needs an expression");
            }
            post = {{expr, line}};
            post_column = start + 1;
            continue;
        }
        if (post) {
            throw ParseError(source, line, toks[0].column, "statements after POSTPROCESS");
        }
        if (head == "QUBITS" || head == "SPARSITY") {
            if (toks.size() != 2) {
                throw ParseError(source, line, toks[0].column, head + " takes one integer");
            }
            if (!c.gates.empty() || measured_seen) {
                throw ParseError(source, line, toks[0].column, head + " must come before the gates");
            }
            size_t v = parse_index(toks[1], source, line, "an integer");
            if (head == "QUBITS") {
                if (declared) {
                    throw ParseError(source, line, toks[0].column, "QUBITS given twice");
                }
                if (v == 0) {
                    throw ParseError(source, line, toks[1].column, "a circuit needs at least one qubit");
                }
                declared = v;
            } else {
                if (c.sparsity) {
                    throw ParseError(source, line, toks[0].column, "SPARSITY given twice");
                }
                c.sparsity = v;
            }
            continue;
        }
        if (head == "MEASURE") {
            if (measured_seen) {
                throw ParseError(source, line, toks[0].column, "MEASURE given twice");
            }
            measured_seen = true;
            if (toks.size() == 2 && (toks[1].text == "all" || toks[1].text == "ALL")) {
                continue;
            }
            if (toks.size() < 2) {
                throw ParseError(source, line, toks[0].column, "MEASURE needs 'all' or a list of qubits");
            }
            std::set<size_t> seen;
            for (size_t i = 1; i < toks.size(); i++) {
                size_t q = parse_index(toks[i], source, line, "a qubit index");
                if (!seen.insert(q).second) {
                    throw ParseError(source, line, toks[i].column, "qubit " + toks[i].text + " measured twice");
                }
                if (declared && q >= *declared) {
                    throw ParseError(source, line, toks[i].column, "qubit " + toks[i].text + " out of range");
                }
                note_index(q);
                c.measured.push_back(q);
            }
            continue;
        }
        if (measured_seen) {
            throw ParseError(source, line, toks[0].column, "gates after MEASURE");
        }
        const GateSpec *spec = nullptr;
        for (const auto &s : gate_specs()) {
            if (head == s.name) {
                spec = &s;
            }
        }
        if (!spec) {
            throw ParseError(source, line, toks[0].column, "unknown gate '" + toks[0].text + "'");
        }
        if (toks.size() != static_cast<size_t>(spec->arity) + 1) {
            throw ParseError(source, line, toks[0].column,
                             std::string(spec->name) + " takes " + std::to_string(spec->arity) + " qubit(s)");
        }
        Gate g;
        g.kind = spec->kind;
        g.q0 = parse_index(toks[1], source, line, "a qubit index");
        if (spec->arity == 2) {
            g.q1 = parse_index(toks[2], source, line, "a qubit index");
            if (g.q0 == g.q1) {
                throw ParseError(source, line, toks[2].column, "two-qubit gate repeats qubit " + toks[2].text);
            }
        }
        for (size_t i = 1; i < toks.size(); i++) {
            size_t q = i == 1 ? g.q0 : g.q1;
            if (declared && q >= *declared) {
                throw ParseError(source, line, toks[i].column,
                                 "qubit " + toks[i].text + " out of range for " + std::to_string(*declared) +
                                     " qubits");
            }
            note_index(q);
        }
        c.gates.push_back(g);
        gate_lines.push_back(line);
    }
    if (post) {
        try {
            c.postprocess = BoolExpr::parse(post->first);
        } catch (const ParseError &e) {
            std::string msg = e.what();
            // "postprocess: column K: ..." -> re-anchor at the file position.
            size_t k = msg.find("column ");
            size_t col = post_column;
            std::string rest = msg;
            if (k != std::string::npos) {
                size_t colon = msg.find(':', k);
                col += std::stoul(msg.substr(k + 7, colon - k - 7)) - 1;
                rest = msg.substr(colon + 2);
            }
            throw ParseError(source, post->second, col, rest);
        }
        for (size_t q : c.postprocess.variables()) {
            note_index(q);
        }
    }
    c.num_qubits = declared ? *declared : (any_index ? max_index + 1 : 0);
    if (c.num_qubits == 0) {
        throw ParseError(source, 0, 0, "circuit has no qubits");
    }
    if (!measured_seen || c.measured.empty()) {
        for (size_t q = 0; q < c.num_qubits; q++) {
            c.measured.push_back(q);
        }
    }
    if (!post) {
        c.postprocess = BoolExpr::bit(c.measured[0]);
    } else {
        std::set<size_t> m(c.measured.begin(), c.measured.end());
        for (size_t q : c.postprocess.variables()) {
            if (!m.count(q) || q >= c.num_qubits) {
                throw ParseError(source, post->second, post_column,
                                 "postprocessing uses b" + std::to_string(q) + " but qubit " + std::to_string(q) +
                                     " is not measured");
            }
        }
    }
    if (c.sparsity) {
        std::vector<size_t> degree(c.num_qubits, 0);
        for (size_t i = 0; i < c.gates.size(); i++) {
            const Gate &g = c.gates[i];
            if (!g.is_two_qubit()) {
                continue;
            }
            for (size_t q : {g.q0, g.q1}) {
                if (++degree[q] > *c.sparsity) {
                    throw ParseError(source, gate_lines[i], 1,
                                     "qubit " + std::to_string(q) + " is in more than " +
                                         std::to_string(*c.sparsity) + " two-qubit gates (SPARSITY " +
                                         std::to_string(*c.sparsity) + ")");
                }
            }
        }
    }
    return c;
}

std::string circuit_to_text(const Circuit &c) {
    std::ostringstream out;
    out << "QUBITS " << c.num_qubits << "\n";
    if (c.sparsity) {
        out << "SPARSITY " << *c.sparsity << "\n";
    }
    for (const auto &g : c.gates) {
        out << gate_str(g) << "\n";
    }
    out << "MEASURE";
    for (size_t q : c.measured) {
        out << " " << q;
    }
    out << "\n";
    out << "POSTPROCESS " << c.postprocess.str() << "\n";
    return out.str();
}

Eigen::MatrixXcd gate_matrix(GateKind kind) {
    const double r = 1 / std::sqrt(2.0);
    const cd i(0, 1);
    const cd w = std::polar(1.0, M_PI / 4);
    Eigen::MatrixXcd m;
    switch (kind) {
        case GateKind::H:
            m.resize(2, 2);
            m << r, r, r, -r;
            break;
        case GateKind::S:
            m.resize(2, 2);
            m << 1, 0, 0, i;
            break;
        case GateKind::SDG:
            m.resize(2, 2);
            m << 1, 0, 0, -i;
            break;
        case GateKind::T:
            m.resize(2, 2);
            m << 1, 0, 0, w;
            break;
        case GateKind::TDG:
            m.resize(2, 2);
            m << 1, 0, 0, std::conj(w);
            break;
        case GateKind::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateKind::Y:
            m.resize(2, 2);
            m << 0, -i, i, 0;
            break;
        case GateKind::Z:
            m.resize(2, 2);
            m << 1, 0, 0, -1;
            break;
        case GateKind::CNOT:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m.block(2, 2, 2, 2) = gate_matrix(GateKind::X);
            break;
        case GateKind::CZ:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateKind::CY:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m.block(2, 2, 2, 2) = gate_matrix(GateKind::Y);
            break;
        case GateKind::SWAP:
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1;
            break;
    }
    return m;
}

void apply_gate_dense(Eigen::VectorXcd &state, size_t n, const Gate &g) {
    if (state.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("state dimension does not match the qubit count");
    }
    Eigen::MatrixXcd m = gate_matrix(g.kind);
    if (!g.is_two_qubit()) {
        if (g.q0 >= n) {
            throw std::out_of_range("gate qubit out of range");
        }
        Eigen::Index bit = Eigen::Index{1} << (n - 1 - g.q0);
        for (Eigen::Index x = 0; x < state.size(); x++) {
            if (x & bit) {
                continue;
            }
            cd a0 = state[x], a1 = state[x | bit];
            state[x] = m(0, 0) * a0 + m(0, 1) * a1;
            state[x | bit] = m(1, 0) * a0 + m(1, 1) * a1;
        }
        return;
    }
    if (g.q0 >= n || g.q1 >= n || g.q0 == g.q1) {
        throw std::out_of_range("gate qubits out of range");
    }
    Eigen::Index hi = Eigen::Index{1} << (n - 1 - g.q0);
    Eigen::Index lo = Eigen::Index{1} << (n - 1 - g.q1);
    for (Eigen::Index x = 0; x < state.size(); x++) {
        if (x & (hi | lo)) {
            continue;
        }
        Eigen::Index idx[4] = {x, x | lo, x | hi, x | hi | lo};
        cd a[4];
        for (int k = 0; k < 4; k++) {
            a[k] = state[idx[k]];
        }
        for (int r = 0; r < 4; r++) {
            cd v = 0;
            for (int k = 0; k < 4; k++) {
                v += m(r, k) * a[k];
            }
            state[idx[r]] = v;
        }
    }
}

Eigen::VectorXcd simulate_dense(const Circuit &c, size_t max_qubits) {
    if (c.num_qubits > max_qubits) {
        throw std::invalid_argument("dense simulation: " + std::to_string(c.num_qubits) +
                                    " qubits exceeds the limit of " + std::to_string(max_qubits));
    }
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(Eigen::Index{1} << c.num_qubits);
    state[0] = 1;
    for (const auto &g : c.gates) {
        apply_gate_dense(state, c.num_qubits, g);
    }
    return state;
}

std::map<std::string, double> measured_distribution_dense(const Circuit &c) {
    Eigen::VectorXcd state = simulate_dense(c);
    std::map<std::string, double> out;
    for (Eigen::Index x = 0; x < state.size(); x++) {
        double p = std::norm(state[x]);
        if (p == 0) {
            continue;
        }
        std::string key;
        for (size_t q : c.measured) {
            key.push_back(((x >> (c.num_qubits - 1 - q)) & 1) ? '1' : '0');
        }
        out[key] += p;
    }
    return out;
}

double acceptance_dense(const Circuit &c) {
    double total = 0;
    for (const auto &[key, p] : measured_distribution_dense(c)) {
        std::vector<int> bits(c.num_qubits, 0);
        for (size_t i = 0; i < c.measured.size(); i++) {
            bits[c.measured[i]] = key[i] - '0';
        }
        total += p * c.postprocess.evaluate(bits);
    }
    return total;
}

}  // namespace pbcsim
