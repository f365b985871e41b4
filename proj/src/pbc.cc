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

#include "pbcsim/pbc.h"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "pbcsim/json_io.h"
#include "pbcsim/parse_error.h"

namespace pbcsim {

namespace {

using json = nlohmann::json;

void check_sigma(int sigma) {
    if (sigma != 1 && sigma != -1) {
        throw std::invalid_argument("outcome must be +1 or -1, got " + std::to_string(sigma));
    }
}

class TreeCursor : public PbcCursor {
   public:
    TreeCursor(const PbcTree *tree, size_t node) : tree_(tree), node_(node) {}

    PbcStep step() const override {
        const auto &n = tree_->nodes()[node_];
        return {n.kind, n.pauli, n.output};
    }

    void advance(int sigma) override {
        check_sigma(sigma);
        const auto &n = tree_->nodes()[node_];
        if (n.kind == StepKind::Output) {
            throw std::logic_error("advance past an output node");
        }
        node_ = sigma == 1 ? n.on_plus : n.on_minus;
    }

    std::unique_ptr<PbcCursor> clone() const override { return std::make_unique<TreeCursor>(*this); }

   private:
    const PbcTree *tree_;
    size_t node_;
};

PauliOperator signed_pauli(const PauliOperator &p, int sigma) {
    return sigma == 1 ? p : -p;
}

void check_measurement(const PauliOperator &p, size_t n) {
    if (p.num_qubits() != n) {
        throw std::invalid_argument("measured Pauli " + p.str() + " does not act on " + std::to_string(n) + " qubits");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("measured Pauli " + p.str() + " is not hermitian");
    }
}

ScaledQuadratic magic_normalization(size_t n) {
    // <H|H> = 1 + t^2 = 4 - 2 sqrt2, whose inverse is (2 + sqrt2) / 4.
    ScaledQuadratic out = ScaledQuadratic::from_int(1);
    for (size_t i = 0; i < n; i++) {
        out = out * ScaledQuadratic(2, 1, -2);
    }
    return out;
}

}  // namespace

PbcTree::PbcTree(size_t num_qubits, std::vector<Node> nodes, size_t root)
    : n_(num_qubits), nodes_(std::move(nodes)), root_(root) {
    if (root_ >= nodes_.size()) {
        throw std::invalid_argument("PBC tree root out of range");
    }
    for (size_t i = 0; i < nodes_.size(); i++) {
        const auto &node = nodes_[i];
        if (node.kind == StepKind::Output) {
            if (node.output != 0 && node.output != 1) {
                throw std::invalid_argument("leaf output must be 0 or 1");
            }
            continue;
        }
        if (node.on_plus >= nodes_.size() || node.on_minus >= nodes_.size()) {
            throw std::invalid_argument("PBC tree node " + std::to_string(i) + " has a dangling child");
        }
        if (node.kind == StepKind::Measure && node.pauli.num_qubits() != n_) {
            throw std::invalid_argument("PBC tree node " + std::to_string(i) + " measures " + node.pauli.str() +
                                        " on a " + std::to_string(n_) + "-qubit program");
        }
    }
    // Reject cycles reachable from the root.
    std::vector<int> color(nodes_.size(), 0);
    std::function<void(size_t)> visit = [&](size_t i) {
        if (color[i] == 2) {
            return;
        }
        if (color[i] == 1) {
            throw std::invalid_argument("PBC tree contains a cycle");
        }
        color[i] = 1;
        if (nodes_[i].kind != StepKind::Output) {
            visit(nodes_[i].on_plus);
            visit(nodes_[i].on_minus);
        }
        color[i] = 2;
    };
    visit(root_);
}

PbcTree PbcTree::leaf(size_t num_qubits, int output) {
    Node n;
    n.output = output;
    return PbcTree(num_qubits, {n});
}

PbcTree PbcTree::sequence(size_t num_qubits, const std::vector<PauliOperator> &paulis) {
    std::vector<Node> nodes;
    if (paulis.empty()) {
        return leaf(num_qubits, 0);
    }
    // Node i measures paulis[i]; both children continue; the last one feeds two leaves.
    size_t m = paulis.size();
    for (size_t i = 0; i < m; i++) {
        Node n;
        n.kind = StepKind::Measure;
        n.pauli = paulis[i];
        n.on_plus = i + 1 < m ? i + 1 : m;
        n.on_minus = i + 1 < m ? i + 1 : m + 1;
        nodes.push_back(n);
    }
    Node zero, one;
    one.output = 1;
    nodes.push_back(zero);
    nodes.push_back(one);
    return PbcTree(num_qubits, std::move(nodes));
}

std::unique_ptr<PbcCursor> PbcTree::start() const {
    return std::make_unique<TreeCursor>(this, root_);
}

size_t PbcTree::depth() const {
    std::vector<std::optional<size_t>> memo(nodes_.size());
    std::function<size_t(size_t)> go = [&](size_t i) -> size_t {
        if (memo[i]) {
            return *memo[i];
        }
        const auto &n = nodes_[i];
        size_t d = 0;
        if (n.kind != StepKind::Output) {
            d = std::max(go(n.on_plus), go(n.on_minus)) + (n.kind == StepKind::Measure ? 1 : 0);
        }
        memo[i] = d;
        return d;
    };
    return go(root_);
}

std::string pbc_tree_to_json(const PbcTree &tree) {
    std::function<json(size_t)> go = [&](size_t i) {
        const auto &n = tree.nodes()[i];
        json out;
        if (n.kind == StepKind::Output) {
            out["output"] = n.output;
            return out;
        }
        if (n.kind == StepKind::Measure) {
            out["pauli"] = n.pauli.str();
        } else {
            out["coin"] = true;
        }
        out["on_plus"] = go(n.on_plus);
        out["on_minus"] = go(n.on_minus);
        return out;
    };
    json root;
    root["qubits"] = tree.num_qubits();
    root["root"] = go(tree.root());
    return root.dump(2) + "\n";
}

PbcTree pbc_tree_from_json(const std::string &text, const std::string &source) {
    LocatedJson doc(text, source);
    const json &root = doc.root();
    if (!root.is_object()) {
        doc.fail("", "expected a JSON object with 'qubits' and 'root'");
    }
    if (!root.contains("qubits") || !root["qubits"].is_number_unsigned()) {
        doc.fail("/qubits", "'qubits' must be a non-negative integer");
    }
    size_t n = root["qubits"].get<size_t>();
    if (n > 64) {
        doc.fail("/qubits", "at most 64 qubits are supported");
    }
    if (!root.contains("root")) {
        doc.fail("", "missing 'root'");
    }
    std::vector<PbcTree::Node> nodes;
    std::function<size_t(const json &, const std::string &)> go = [&](const json &j, const std::string &path) {
        if (!j.is_object()) {
            doc.fail(path, "a node must be an object");
        }
        PbcTree::Node node;
        size_t index = nodes.size();
        nodes.emplace_back();
        bool has_output = j.contains("output"), has_pauli = j.contains("pauli"), has_coin = j.contains("coin");
        if (has_output + has_pauli + has_coin != 1) {
            doc.fail(path, "a node needs exactly one of 'output', 'pauli' or 'coin'");
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            static const std::set<std::string> known = {"output", "pauli", "coin", "on_plus", "on_minus"};
            if (!known.count(it.key())) {
                doc.fail(path + "/" + it.key(), "unknown key '" + it.key() + "'");
            }
        }
        if (has_output) {
            const auto &o = j["output"];
            if (!o.is_number_integer() || (o.get<int64_t>() != 0 && o.get<int64_t>() != 1)) {
                doc.fail(path + "/output", "'output' must be 0 or 1");
            }
            if (j.contains("on_plus") || j.contains("on_minus")) {
                doc.fail(path, "a leaf cannot have children");
            }
            node.output = o.get<int>();
            nodes[index] = node;
            return index;
        }
        if (has_pauli) {
            if (!j["pauli"].is_string()) {
                doc.fail(path + "/pauli", "'pauli' must be a string");
            }
            try {
                node.pauli = PauliOperator::from_string(j["pauli"].get<std::string>());
            } catch (const std::invalid_argument &e) {
                doc.fail(path + "/pauli", e.what());
            }
            if (node.pauli.num_qubits() != n) {
                doc.fail(path + "/pauli", "Pauli " + node.pauli.str() + " does not act on " + std::to_string(n) +
                                              " qubits");
            }
            if (!node.pauli.is_hermitian()) {
                doc.fail(path + "/pauli", "Pauli " + node.pauli.str() + " is not hermitian");
            }
            node.kind = StepKind::Measure;
        } else {
            if (j["coin"] != true) {
                doc.fail(path + "/coin", "'coin' must be true");
            }
            node.kind = StepKind::Coin;
        }
        for (const char *child : {"on_plus", "on_minus"}) {
            if (!j.contains(child)) {
                doc.fail(path, std::string("missing '") + child + "'");
            }
        }
        node.on_plus = go(j["on_plus"], path + "/on_plus");
        node.on_minus = go(j["on_minus"], path + "/on_minus");
        nodes[index] = node;
        return index;
    };
    go(root["root"], "/root");
    return PbcTree(n, std::move(nodes));
}

std::vector<int> parse_outcomes(const std::string &text) {
    std::vector<int> out;
    for (char c : text) {
        if (c == '+') {
            out.push_back(1);
        } else if (c == '-') {
            out.push_back(-1);
        } else {
            throw std::invalid_argument("outcomes must be a string of '+' and '-', got '" + text + "'");
        }
    }
    return out;
}

std::string outcomes_to_string(const std::vector<int> &sigmas) {
    std::string out;
    for (int s : sigmas) {
        check_sigma(s);
        out.push_back(s == 1 ? '+' : '-');
    }
    return out;
}

Eigen::VectorXcd magic_state_dense(size_t n) {
    if (n > 30) {
        throw std::invalid_argument("dense magic state too large");
    }
    double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);
    Eigen::VectorXcd out(Eigen::Index{1} << n);
    for (Eigen::Index x = 0; x < out.size(); x++) {
        int w = __builtin_popcountll(static_cast<uint64_t>(x));
        out[x] = std::pow(c, double(n) - w) * std::pow(s, w);
    }
    return out;
}

double brute_force_probability(const PbcProgram &program,
                               const std::vector<int> &outcomes,
                               const std::optional<Eigen::VectorXcd> &initial,
                               size_t max_qubits) {
    size_t n = program.num_qubits();
    if (n > max_qubits) {
        throw std::invalid_argument("brute force: " + std::to_string(n) + " qubits exceeds the limit of " +
                                    std::to_string(max_qubits));
    }
    Eigen::VectorXcd phi = initial ? *initial : magic_state_dense(n);
    if (phi.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("initial state has the wrong dimension");
    }
    double norm0 = phi.squaredNorm();
    if (norm0 == 0) {
        throw std::invalid_argument("initial state is zero");
    }
    double factor = 1;
    auto cursor = program.start();
    for (int sigma : outcomes) {
        check_sigma(sigma);
        PbcStep step = cursor->step();
        if (step.kind == StepKind::Output) {
            throw std::invalid_argument("outcome prefix is longer than the program path");
        }
        if (step.kind == StepKind::Coin) {
            factor *= 0.5;
        } else {
            check_measurement(step.pauli, n);
            phi = 0.5 * (phi + double(sigma) * step.pauli.apply(phi));
        }
        cursor->advance(sigma);
    }
    return factor * phi.squaredNorm() / norm0;
}

MeasuredPath collect_path(const PbcProgram &program, const std::vector<int> &outcomes) {
    size_t n = program.num_qubits();
    MeasuredPath path;
    StabilizerGroupTracker tracker(n);
    auto cursor = program.start();
    for (int sigma : outcomes) {
        check_sigma(sigma);
        PbcStep step = cursor->step();
        if (step.kind == StepKind::Output) {
            throw std::invalid_argument("outcome prefix is longer than the program path");
        }
        if (step.kind == StepKind::Coin) {
            path.coins++;
        } else if (!path.contradictory) {
            check_measurement(step.pauli, n);
            PauliOperator p = signed_pauli(step.pauli, sigma);
            auto c = tracker.classify(p);
            switch (c.relation) {
                case StabilizerGroupTracker::Relation::Anticommutes:
                    throw std::invalid_argument("measurement " + step.pauli.str() + " anticommutes with earlier " +
                                                tracker.generators()[c.generator].str());
                case StabilizerGroupTracker::Relation::Dependent:
                    path.contradictory = c.sign != 1;
                    break;
                case StabilizerGroupTracker::Relation::Independent:
                    tracker.add(p);
                    path.generators.push_back(p);
                    break;
            }
        }
        cursor->advance(sigma);
    }
    return path;
}

RankEvaluator::RankEvaluator(size_t num_qubits, RankOptions options)
    : n_(num_qubits), options_(options), normalization_(magic_normalization(num_qubits)) {
    if (n_ == 0) {
        return;
    }
    auto d = ProductDecomposition::magic(n_, options_.base_k);
    uint64_t count = d.num_terms();
    for (uint64_t i = 0; i < count; i++) {
        auto c = d.coefficient(i);
        coefficients_.push_back(*c.exact);
        terms_.push_back(d.state(i));
    }
}

ExactAmplitude RankEvaluator::projected_norm(const std::vector<PauliOperator> &generators) const {
    if (n_ == 0) {
        return ExactAmplitude::one();
    }
    ProjectorForm pi = projector_form(n_, generators);
    ExactAmplitude total;
    size_t r = terms_.size();
    for (size_t a = 0; a < r; a++) {
        ExactAmplitude ca(coefficients_[a]);
        size_t b0 = options_.hermitian_symmetry ? a : 0;
        for (size_t b = b0; b < r; b++) {
            ExactAmplitude cb(coefficients_[b]);
            ExactAmplitude v = inner_product_projected(terms_[a], pi, terms_[b]);
            if (v.is_zero()) {
                continue;
            }
            if (options_.hermitian_symmetry && b != a) {
                v = v + v.conj();
            }
            total += ca * cb * v;
        }
    }
    return total;
}

ScaledQuadratic RankEvaluator::projected_probability(const std::vector<PauliOperator> &generators) const {
    return checked_probability(projected_norm(generators) * ExactAmplitude(normalization_));
}

ScaledQuadratic rank_probability(const PbcProgram &program, const std::vector<int> &outcomes, RankOptions options) {
    MeasuredPath path = collect_path(program, outcomes);
    if (path.contradictory) {
        return ScaledQuadratic();
    }
    RankEvaluator eval(program.num_qubits(), options);
    return eval.projected_probability(path.generators).scaled(-static_cast<int>(path.coins));
}

Backend parse_backend(const std::string &name) {
    if (name == "brute") {
        return Backend::Brute;
    }
    if (name == "rank") {
        return Backend::Rank;
    }
    throw std::invalid_argument("unknown method '" + name + "' (expected brute or rank)");
}

double uniform_unit(std::mt19937_64 &rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

PbcSampler::PbcSampler(const PbcProgram &program, Backend backend, RankOptions options)
    : program_(program), backend_(backend), options_(options) {
    if (backend_ == Backend::Brute && program.num_qubits() > DEFAULT_BRUTE_QUBIT_LIMIT) {
        throw std::invalid_argument("brute force: too many qubits");
    }
}

ScaledQuadratic PbcSampler::cached_rank(const std::vector<int> &outcomes) {
    auto it = cache_.find(outcomes);
    if (it != cache_.end()) {
        return it->second;
    }
    if (!evaluator_) {
        evaluator_.emplace(program_.num_qubits(), options_);
    }
    MeasuredPath path = collect_path(program_, outcomes);
    ScaledQuadratic p;
    if (!path.contradictory) {
        p = evaluator_->projected_probability(path.generators).scaled(-static_cast<int>(path.coins));
    }
    cache_.emplace(outcomes, p);
    return p;
}

OutcomeRecord PbcSampler::sample_brute(std::mt19937_64 &rng) {
    OutcomeRecord rec;
    auto cursor = program_.start();
    size_t n = program_.num_qubits();
    Eigen::VectorXcd phi = magic_state_dense(n);
    double prob = 1;
    while (true) {
        PbcStep step = cursor->step();
        if (step.kind == StepKind::Output) {
            rec.output = step.output;
            break;
        }
        int sigma;
        if (step.kind == StepKind::Coin) {
            sigma = uniform_unit(rng) < 0.5 ? 1 : -1;
            prob *= 0.5;
        } else {
            check_measurement(step.pauli, n);
            Eigen::VectorXcd plus = 0.5 * (phi + step.pauli.apply(phi));
            double p_plus = std::clamp(plus.squaredNorm(), 0.0, 1.0);
            sigma = uniform_unit(rng) < p_plus ? 1 : -1;
            Eigen::VectorXcd next = sigma == 1 ? plus : Eigen::VectorXcd(phi - plus);
            double p = sigma == 1 ? p_plus : 1 - p_plus;
            prob *= p;
            phi = next / std::sqrt(next.squaredNorm());
        }
        rec.outcomes.push_back(sigma);
        cursor->advance(sigma);
    }
    rec.probability = prob;
    return rec;
}

size_t PbcSampler::make_node(std::unique_ptr<PbcCursor> cursor, std::vector<int> outcomes, ScaledQuadratic reach) {
    Node node;
    PbcStep step = cursor->step();
    node.kind = step.kind;
    node.output = step.output;
    node.reach = reach;
    node.outcomes = std::move(outcomes);
    if (step.kind == StepKind::Measure) {
        node.outcomes.push_back(1);
        node.plus = cached_rank(node.outcomes);
        node.outcomes.pop_back();
        node.cond_plus = node.plus.to_double() / reach.to_double();
    }
    if (step.kind != StepKind::Output) {
        node.cursor = std::move(cursor);
    }
    trie_.push_back(std::move(node));
    return trie_.size() - 1;
}

OutcomeRecord PbcSampler::sample(std::mt19937_64 &rng) {
    if (backend_ == Backend::Brute) {
        return sample_brute(rng);
    }
    if (trie_.empty()) {
        make_node(program_.start(), {}, ScaledQuadratic::from_int(1));
    }
    OutcomeRecord rec;
    size_t at = 0;
    while (trie_[at].kind != StepKind::Output) {
        // Same draw order as a cursor walk: one uniform per step.
        int sigma = uniform_unit(rng) < trie_[at].cond_plus ? 1 : -1;
        rec.outcomes.push_back(sigma);
        size_t side = sigma == 1 ? 0 : 1;
        if (trie_[at].child[side] < 0) {
            Node &node = trie_[at];
            ScaledQuadratic reach = node.kind == StepKind::Coin ? node.reach.scaled(-1)
                                    : sigma == 1                ? node.plus
                                                                : node.reach - node.plus;
            auto next = node.cursor->clone();
            next->advance(sigma);
            size_t made = make_node(std::move(next), rec.outcomes, reach);
            trie_[at].child[side] = static_cast<int64_t>(made);
            if (trie_[at].child[1 - side] >= 0) {
                trie_[at].cursor.reset();
            }
        }
        at = static_cast<size_t>(trie_[at].child[side]);
    }
    rec.output = trie_[at].output;
    rec.exact_probability = trie_[at].reach;
    rec.probability = trie_[at].reach.to_double();
    return rec;
}

OutcomeRecord sample_run(const PbcProgram &program, Backend backend, uint64_t seed, RankOptions options) {
    std::mt19937_64 rng(seed);
    PbcSampler sampler(program, backend, options);
    return sampler.sample(rng);
}

std::vector<LeafProbability> enumerate_leaves(
    const PbcProgram &program, Backend backend, RankOptions options, size_t max_leaves) {
    size_t n = program.num_qubits();
    std::vector<LeafProbability> leaves;
    std::vector<int> outcomes;
    auto push_leaf = [&](int output, double p, std::optional<ScaledQuadratic> exact) {
        if (leaves.size() >= max_leaves) {
            throw std::overflow_error("enumerate_leaves: more than " + std::to_string(max_leaves) + " leaves");
        }
        leaves.push_back({outcomes, output, p, exact, {}});
    };
    if (backend == Backend::Brute) {
        if (n > DEFAULT_BRUTE_QUBIT_LIMIT) {
            throw std::invalid_argument("brute force: too many qubits");
        }
        // phi is unnormalized; its squared norm is the path probability.
        std::function<void(const PbcCursor &, const Eigen::VectorXcd &, double)> go =
            [&](const PbcCursor &cur, const Eigen::VectorXcd &phi, double coin_factor) {
                PbcStep step = cur.step();
                double p = coin_factor * phi.squaredNorm();
                if (p < 1e-15) {
                    return;
                }
                if (step.kind == StepKind::Output) {
                    push_leaf(step.output, p, std::nullopt);
                    leaves.back().record = cur.classical_record();
                    return;
                }
                Eigen::VectorXcd plus = phi, minus = phi;
                double factor = coin_factor;
                if (step.kind == StepKind::Measure) {
                    check_measurement(step.pauli, n);
                    Eigen::VectorXcd pphi = step.pauli.apply(phi);
                    plus = 0.5 * (phi + pphi);
                    minus = 0.5 * (phi - pphi);
                } else {
                    factor *= 0.5;
                }
                for (int sigma : {1, -1}) {
                    auto next = cur.clone();
                    next->advance(sigma);
                    outcomes.push_back(sigma);
                    go(*next, sigma == 1 ? plus : minus, factor);
                    outcomes.pop_back();
                }
            };
        go(*program.start(), magic_state_dense(n), 1.0);
        return leaves;
    }
    RankEvaluator eval(n, options);
    // The measured group is carried down the recursion instead of replaying each prefix.
    std::function<void(const PbcCursor &, const ScaledQuadratic &, const StabilizerGroupTracker &, size_t)> go =
        [&](const PbcCursor &cur, const ScaledQuadratic &p, const StabilizerGroupTracker &group, size_t coins) {
            if (p.is_zero()) {
                return;
            }
            PbcStep step = cur.step();
            if (step.kind == StepKind::Output) {
                push_leaf(step.output, p.to_double(), p);
                leaves.back().record = cur.classical_record();
                return;
            }
            auto descend = [&](int sigma, const ScaledQuadratic &q, const StabilizerGroupTracker &g, size_t c) {
                auto next = cur.clone();
                next->advance(sigma);
                outcomes.push_back(sigma);
                go(*next, q, g, c);
                outcomes.pop_back();
            };
            if (step.kind == StepKind::Coin) {
                ScaledQuadratic half = p.scaled(-1);
                descend(1, half, group, coins + 1);
                descend(-1, half, group, coins + 1);
                return;
            }
            check_measurement(step.pauli, n);
            auto c = group.classify(step.pauli);
            switch (c.relation) {
                case StabilizerGroupTracker::Relation::Anticommutes:
                    throw std::invalid_argument("measurement " + step.pauli.str() + " anticommutes with earlier " +
                                                group.generators()[c.generator].str());
                case StabilizerGroupTracker::Relation::Dependent:
                    descend(c.sign, p, group, coins);
                    descend(-c.sign, ScaledQuadratic(), group, coins);
                    return;
                case StabilizerGroupTracker::Relation::Independent:
                    break;
            }
            StabilizerGroupTracker plus_group = group;
            plus_group.add(step.pauli);
            ScaledQuadratic plus = eval.projected_probability(plus_group.generators()).scaled(-static_cast<int>(coins));
            descend(1, plus, plus_group, coins);
            StabilizerGroupTracker minus_group = group;
            minus_group.add(-step.pauli);
            descend(-1, p - plus, minus_group, coins);
        };
    go(*program.start(), ScaledQuadratic::from_int(1), StabilizerGroupTracker(n), 0);
    return leaves;
}

Acceptance exact_acceptance(const PbcProgram &program, Backend backend, RankOptions options) {
    Acceptance out;
    ScaledQuadratic exact;
    for (const auto &leaf : enumerate_leaves(program, backend, options)) {
        if (leaf.output == 1) {
            out.value += leaf.probability;
            if (leaf.exact_probability) {
                exact = exact + *leaf.exact_probability;
            }
        }
    }
    if (backend == Backend::Rank) {
        out.exact = exact;
        out.value = exact.to_double();
    }
    return out;
}

StandardFormReport validate_standard_form(const PbcProgram &program, StandardFormOptions options) {
    StandardFormReport report;
    size_t n = program.num_qubits();
    std::set<std::string> seen;
    auto violation = [&](const std::vector<int> &path, const std::string &msg) {
        std::string text = "path '" + outcomes_to_string(path) + "': " + msg;
        if (seen.insert(text).second && report.violations.size() < 100) {
            report.violations.push_back(text);
        }
    };
    std::vector<int> outcomes;
    std::vector<PauliOperator> measured;
    std::function<void(const PbcCursor &)> go = [&](const PbcCursor &cur) {
        if (report.truncated) {
            return;
        }
        PbcStep step = cur.step();
        if (step.kind == StepKind::Output) {
            report.paths_explored++;
            if (report.paths_explored >= options.max_paths) {
                report.truncated = true;
            }
            return;
        }
        if (outcomes.size() >= options.max_steps) {
            report.truncated = true;
            return;
        }
        bool pushed = false;
        if (step.kind == StepKind::Measure) {
            const PauliOperator &p = step.pauli;
            if (p.num_qubits() != n) {
                violation(outcomes, "measurement " + p.str() + " has the wrong qubit count");
                report.paths_explored++;
                return;
            }
            if (!p.is_hermitian()) {
                violation(outcomes, "measurement " + p.str() + " is not hermitian");
            }
            if (options.require_commuting) {
                for (size_t i = 0; i < measured.size(); i++) {
                    if (!measured[i].commutes(p)) {
                        violation(outcomes, "measurement " + std::to_string(measured.size() + 1) + " (" + p.str() +
                                                ") anticommutes with measurement " + std::to_string(i + 1) + " (" +
                                                measured[i].str() + ")");
                        break;
                    }
                }
            }
            measured.push_back(p);
            pushed = true;
            if (measured.size() > n) {
                violation(outcomes, "more than " + std::to_string(n) + " measurements on " + std::to_string(n) +
                                        " qubits");
                measured.pop_back();
                report.paths_explored++;
                return;
            }
        }
        for (int sigma : {1, -1}) {
            auto next = cur.clone();
            next->advance(sigma);
            outcomes.push_back(sigma);
            go(*next);
            outcomes.pop_back();
        }
        if (pushed) {
            measured.pop_back();
        }
    };
    go(*program.start());
    return report;
}

}  // namespace pbcsim
