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

#include "pbcsim/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbcsim/circuit.h"
#include "pbcsim/cliffordt.h"
#include "pbcsim/decomplib.h"
#include "pbcsim/parse_error.h"
#include "pbcsim/pbc.h"
#include "pbcsim/quadsum.h"
#include "pbcsim/searchdecomp.h"
#include "pbcsim/sparsecut.h"
#include "pbcsim/stab.h"
#include "pbcsim/virtualq.h"

namespace pbcsim {

namespace {

using json = nlohmann::ordered_json;

/// Input problems that should map to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(15) << v;
    return s.str();
}

/// Ordered key: value report, printed as text lines or one JSON object.
class Report {
   public:
    explicit Report(bool as_json) : as_json_(as_json) {}

    void put(const std::string &key, json value) { fields_.emplace_back(key, std::move(value)); }
    void line(const std::string &text) { raw_.push_back(text); }

    void print(std::ostream &out) const {
        if (as_json_) {
            json obj = json::object();
            for (const auto &[k, v] : fields_) {
                obj[k] = v;
            }
            out << obj.dump(2) << "\n";
            return;
        }
        for (const auto &r : raw_) {
            out << r << "\n";
        }
        for (const auto &[k, v] : fields_) {
            out << k << ": " << (v.is_string() ? v.get<std::string>() : v.is_number_float() ? num(v.get<double>()) : v.dump())
                << "\n";
        }
    }

   private:
    bool as_json_;
    std::vector<std::string> raw_;
    std::vector<std::pair<std::string, json>> fields_;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

/// Wraps parsing so that semantic failures of the input count as bad input.
template <typename F>
auto load(const std::string &path, F parse) {
    std::string text = read_file(path);
    try {
        return parse(text, path);
    } catch (const ParseError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InputError(path + ": " + e.what());
    }
}

PbcTree load_pbc(const std::string &path) {
    return load(path, [](const std::string &t, const std::string &s) { return pbc_tree_from_json(t, s); });
}

Circuit load_circuit(const std::string &path) {
    return load(path, [](const std::string &t, const std::string &s) { return parse_circuit(t, s); });
}

std::vector<int> checked_outcomes(const std::string &text) {
    try {
        return parse_outcomes(text);
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string("--outcomes: ") + e.what());
    }
}

void put_amplitude(Report &r, const std::string &prefix, const ExactAmplitude &a) {
    auto c = a.to_complex();
    r.put(prefix + "exact", a.str());
    r.put(prefix + "re", c.real());
    r.put(prefix + "im", c.imag());
}

void put_probability(Report &r, const std::string &key, double value, const std::optional<ScaledQuadratic> &exact) {
    r.put(key, value);
    if (exact) {
        r.put(key + "_exact", exact->str());
    }
}

StabilizerDecomposition load_decomposition(const std::string &name) {
    const std::string prefix = "builtin:";
    if (name.rfind(prefix, 0) != 0) {
        return load(name, [](const std::string &t, const std::string &s) { return decomposition_from_json(t, s); });
    }
    std::string body = name.substr(prefix.size());
    if (body == "H2:normalized" || body == "H^2:normalized") {
        return normalized_h2_decomposition();
    }
    std::string digits = body.rfind("H^", 0) == 0 ? body.substr(2) : body.rfind("H", 0) == 0 ? body.substr(1) : "";
    if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '6') {
        return magic_decomposition(static_cast<size_t>(digits[0] - '0'));
    }
    throw InputError("unknown builtin '" + name + "' (expected builtin:H1 .. builtin:H6 or builtin:H2:normalized)");
}

/// Commuting independent Paulis Z_i pushed through a random Clifford.
PbcTree random_commuting_sequence(size_t n, std::mt19937_64 &rng) {
    std::vector<Gate> gates;
    for (size_t i = 0; i < 6 * n; i++) {
        Gate g;
        g.q0 = rng() % n;
        switch (rng() % 3) {
            case 0:
                g.kind = GateKind::H;
                break;
            case 1:
                g.kind = GateKind::S;
                break;
            default:
                if (n > 1) {
                    g.kind = GateKind::CNOT;
                    do {
                        g.q1 = rng() % n;
                    } while (g.q1 == g.q0);
                } else {
                    g.kind = GateKind::H;
                }
        }
        gates.push_back(g);
    }
    CliffordFrame frame = frame_of(n, gates);
    std::vector<PauliOperator> paulis;
    for (size_t q = 0; q < n; q++) {
        paulis.push_back(conjugate_pauli(frame, PauliOperator::single(n, q, 'Z')));
    }
    return PbcTree::sequence(n, paulis);
}

double millis_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"pbcsim: Pauli-based computation and Clifford+T simulation toolkit", "pbcsim"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print one JSON object instead of key: value lines");

    // exp-sum
    std::string poly_path, exp_method = "fast";
    auto *exp_cmd = app.add_subcommand("exp-sum", "Exact sum_x omega^f(x) of a degree-two polynomial file");
    exp_cmd->add_option("file", poly_path, "Polynomial text file")->required();
    exp_cmd->add_option("--method", exp_method, "fast, symplectic or brute")
        ->check(CLI::IsMember({"fast", "symplectic", "brute"}));

    // inner
    std::string inner_path;
    auto *inner_cmd = app.add_subcommand("inner", "Exact <psi|Pi|phi> for stabilizer states in affine form");
    inner_cmd->add_option("file", inner_path, "JSON file with qubits, psi, phi and optional generators")->required();

    // simulate-pbc / pbc-prob
    std::string pbc_path, method = "rank", outcomes_text;
    size_t base_k = 6, shots = 0;
    uint64_t seed = 1;
    bool have_outcomes = false;
    auto *sim_cmd = app.add_subcommand("simulate-pbc", "Sample or evaluate a PBC tree on |H>^n");
    sim_cmd->add_option("file", pbc_path, "PBC tree JSON file")->required();
    sim_cmd->add_option("--method", method, "brute or rank")->check(CLI::IsMember({"brute", "rank"}));
    sim_cmd->add_option("--base-k", base_k, "Block size of the magic-state decomposition")
        ->check(CLI::Range(1, 6));
    sim_cmd->add_option("--shots", shots, "Number of sampled runs (0: exact evaluation)");
    sim_cmd->add_option("--seed", seed, "RNG seed");
    auto *sim_outcomes = sim_cmd->add_option("--outcomes", outcomes_text, "Outcome prefix such as +-+");

    auto *prob_cmd = app.add_subcommand("pbc-prob", "Probability of an outcome prefix of a PBC tree");
    prob_cmd->add_option("file", pbc_path, "PBC tree JSON file")->required();
    prob_cmd->add_option("--outcomes", outcomes_text, "Outcome prefix such as +-+")->required();
    prob_cmd->add_option("--method", method, "brute or rank")->check(CLI::IsMember({"brute", "rank"}));
    prob_cmd->add_option("--base-k", base_k, "Block size of the magic-state decomposition")
        ->check(CLI::Range(1, 6));

    // compile
    std::string circuit_path, output_path;
    bool enumerate = false;
    size_t max_nodes = 1 << 16;
    auto *compile_cmd = app.add_subcommand("compile", "Compile a Clifford+T circuit to a PBC on its T-count");
    compile_cmd->add_option("circuit", circuit_path, "Circuit text file")->required();
    compile_cmd->add_option("-o,--output", output_path, "Write the materialized PBC tree as JSON");
    compile_cmd->add_flag("--enumerate", enumerate, "Print the exact distribution of the measured bits");
    compile_cmd->add_option("--max-nodes", max_nodes, "Node limit for -o");
    compile_cmd->add_option("--seed", seed, "Accepted for symmetry; compilation is deterministic");

    // virtual
    size_t k = 1, samples = 0;
    double eps = 0.05;
    bool exact_mode = false;
    auto *virt_cmd = app.add_subcommand("virtual", "Estimate acceptance with k virtual magic qubits");
    virt_cmd->add_option("file", pbc_path, "PBC tree JSON file")->required();
    virt_cmd->add_option("--k", k, "Number of virtual qubits")->check(CLI::Range(1, 12));
    virt_cmd->add_option("--samples", samples, "Samples of xi (0: from --eps)");
    virt_cmd->add_option("--eps", eps, "Target additive error for the default sample count");
    virt_cmd->add_option("--seed", seed, "RNG seed");
    virt_cmd->add_option("--method", method, "brute or rank")->check(CLI::IsMember({"brute", "rank"}));
    virt_cmd->add_flag("--exact", exact_mode, "Exact sum over terms instead of sampling");

    // sparse-estimate
    std::string cut;
    double delta = 0.05;
    size_t max_samples = 1000000;
    bool exact_expectation = false, no_migrate = false, dense_check = false;
    auto *sparse_cmd = app.add_subcommand("sparse-estimate", "Estimate acceptance of a sparse circuit across a cut");
    sparse_cmd->add_option("circuit", circuit_path, "Circuit text file")->required();
    sparse_cmd->add_option("--cut", cut, "Partition \"A|B\", e.g. \"0,1|2,3,4,5\"")->required();
    sparse_cmd->add_option("--eps", eps, "Additive error");
    sparse_cmd->add_option("--delta", delta, "Failure probability");
    sparse_cmd->add_option("--seed", seed, "RNG seed");
    sparse_cmd->add_option("--samples", samples, "Samples of xi (0: Hoeffding count)");
    sparse_cmd->add_option("--max-samples", max_samples, "Refuse to run above this many samples");
    sparse_cmd->add_flag("--exact-expectation", exact_expectation, "Use exact expectations instead of sampling");
    sparse_cmd->add_flag("--no-migrate", no_migrate, "Keep the control qubit in place");
    sparse_cmd->add_flag("--dense-check", dense_check, "Also print the dense statevector acceptance");

    // search
    std::string target = "H^2:normalized";
    AnnealConfig anneal_config;
    bool allow_complex = false;
    auto *search_cmd = app.add_subcommand("search", "Annealing search for a low-rank stabilizer decomposition");
    search_cmd->add_option("--target", target, "H^k or H^k:normalized (the walk always uses the unit vector)");
    search_cmd->add_option("--chi", anneal_config.chi, "Number of stabilizer states");
    search_cmd->add_option("--seed", anneal_config.seed, "RNG seed");
    search_cmd->add_option("--restarts", anneal_config.restarts, "Independent walks");
    search_cmd->add_option("--beta-in", anneal_config.beta_in, "Initial inverse temperature");
    search_cmd->add_option("--beta-f", anneal_config.beta_f, "Final inverse temperature");
    search_cmd->add_option("--steps-per-beta", anneal_config.steps_per_beta, "Moves per temperature");
    search_cmd->add_option("--anneal-steps", anneal_config.anneal_steps, "Number of temperatures");
    search_cmd->add_flag("--allow-complex", allow_complex, "Allow Paulis with an odd number of Y");
    search_cmd->add_option("-o,--output", output_path, "Write a found decomposition as JSON");

    // verify-decomp
    std::string decomp_name;
    auto *verify_cmd = app.add_subcommand("verify-decomp", "Verify a decomposition file or builtin:H<k>");
    verify_cmd->add_option("decomposition", decomp_name, "File path or builtin:H1 .. builtin:H6")->required();

    // bench
    size_t max_n = 12, reps = 3, brute_limit = 14;
    auto *bench_cmd = app.add_subcommand("bench", "Runtime table of brute and rank backends");
    bench_cmd->add_option("--max-n", max_n, "Largest qubit count")->check(CLI::Range(1, 24));
    bench_cmd->add_option("--reps", reps, "Programs per size")->check(CLI::Range(1, 1000));
    bench_cmd->add_option("--brute-limit", brute_limit, "Skip brute force above this size")->check(CLI::Range(1, 16));
    bench_cmd->add_option("--seed", seed, "RNG seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_BAD_INPUT;
    }
    have_outcomes = sim_outcomes->count() > 0;

    Report report(as_json);
    int status = EXIT_OK;
    try {
        RankOptions rank;
        rank.base_k = base_k;
        if (*exp_cmd) {
            auto f = load(poly_path, [](const std::string &t, const std::string &s) {
                return DegreeTwoPolynomial::parse(t, s);
            });
            ExactAmplitude a = exp_method == "fast"         ? exp_sum(f)
                               : exp_method == "symplectic" ? exp_sum_symplectic(f)
                                                            : brute_force_exp_sum(f);
            report.put("n", f.num_vars());
            put_amplitude(report, "", a);
        } else if (*inner_cmd) {
            auto in = load(inner_path, [](const std::string &t, const std::string &s) {
                return inner_input_from_json(t, s);
            });
            ExactAmplitude a = in.generators.empty()
                                   ? inner_product(in.psi, in.phi)
                                   : inner_product_projected(in.psi, projector_form(in.num_qubits, in.generators),
                                                             in.phi);
            report.put("qubits", in.num_qubits);
            report.put("generators", in.generators.size());
            put_amplitude(report, "", a);
        } else if (*sim_cmd || *prob_cmd) {
            PbcTree tree = load_pbc(pbc_path);
            Backend backend = parse_backend(method);
            report.put("qubits", tree.num_qubits());
            report.put("method", method);
            if (*prob_cmd || have_outcomes) {
                std::vector<int> outcomes = checked_outcomes(outcomes_text);
                report.put("outcomes", outcomes_to_string(outcomes));
                if (backend == Backend::Brute) {
                    double p = brute_force_probability(tree, outcomes);
                    put_probability(report, "probability", p, std::nullopt);
                    // Floating path: offer the nearest ring value when one matches closely.
                    if (auto q = fit_quadratic(p, 1e-12)) {
                        report.put("probability_ring_fit", q->str());
                    }
                } else {
                    ScaledQuadratic p = rank_probability(tree, outcomes, rank);
                    put_probability(report, "probability", p.to_double(), p);
                }
            } else if (shots == 0) {
                Acceptance acc = exact_acceptance(tree, backend, rank);
                put_probability(report, "acceptance", acc.value, acc.exact);
            } else {
                PbcSampler sampler(tree, backend, rank);
                std::mt19937_64 rng(seed);
                std::map<std::string, size_t> counts;
                size_t ones = 0;
                for (size_t s = 0; s < shots; s++) {
                    OutcomeRecord rec = sampler.sample(rng);
                    counts[outcomes_to_string(rec.outcomes) + " -> " + std::to_string(rec.output)]++;
                    ones += rec.output;
                }
                report.put("shots", shots);
                report.put("seed", seed);
                report.put("ones", ones);
                report.put("acceptance_estimate", static_cast<double>(ones) / static_cast<double>(shots));
                for (const auto &[key, c] : counts) {
                    report.put("count[" + key + "]", c);
                }
            }
        } else if (*compile_cmd) {
            Circuit c = load_circuit(circuit_path);
            auto program = compile_to_pbc(c);
            report.put("qubits", c.num_qubits);
            report.put("t_count", c.t_count());
            report.put("pbc_qubits", program->num_qubits());
            report.put("micro_ops", program->ops().size());
            report.put("outcome_slots", program->num_slots());
            if (!output_path.empty()) {
                PbcTree tree = materialize_tree(*program, max_nodes);
                write_file(output_path, pbc_tree_to_json(tree));
                report.put("tree_nodes", tree.nodes().size());
                report.put("tree_depth", tree.depth());
                report.put("written", output_path);
            }
            if (enumerate) {
                std::map<std::string, ScaledQuadratic> dist;
                for (const auto &leaf : enumerate_leaves(*program, Backend::Rank)) {
                    std::string bits;
                    for (int b : leaf.record) {
                        bits += static_cast<char>('0' + b);
                    }
                    auto [it, fresh] = dist.emplace(bits, *leaf.exact_probability);
                    if (!fresh) {
                        it->second = it->second + *leaf.exact_probability;
                    }
                }
                Acceptance acc = exact_acceptance(*program, Backend::Rank);
                put_probability(report, "acceptance", acc.value, acc.exact);
                for (const auto &[bits, p] : dist) {
                    put_probability(report, "p[" + bits + "]", p.to_double(), p);
                }
            }
        } else if (*virt_cmd) {
            auto tree = std::make_shared<PbcTree>(load_pbc(pbc_path));
            Backend backend = parse_backend(method);
            report.put("qubits", tree->num_qubits());
            report.put("k", k);
            if (exact_mode) {
                VirtualExact v = exact_virtual_acceptance(tree, k, backend);
                put_probability(report, "acceptance", v.value, v.exact);
            } else {
                VirtualOptions o;
                o.samples = samples;
                o.epsilon = eps;
                VirtualEstimate v = estimate_acceptance(tree, k, backend, seed, o);
                report.put("seed", seed);
                report.put("estimate", v.mean);
                report.put("stderr", v.stderr_);
                report.put("samples", v.samples);
                report.put("terms", v.terms);
                report.put("sample_variance", v.sample_variance);
                report.put("variance_bound", v.variance_bound);
                report.put("backend_runs", v.backend_runs);
            }
        } else if (*sparse_cmd) {
            Circuit c = load_circuit(circuit_path);
            Partition part;
            try {
                part = parse_partition(cut, c.num_qubits);
            } catch (const std::invalid_argument &e) {
                throw InputError(std::string("--cut: ") + e.what());
            }
            SparseEstimateOptions o;
            o.epsilon = eps;
            o.delta = delta;
            o.samples = samples;
            o.max_samples = max_samples;
            o.exact_expectation = exact_expectation;
            o.migrate = !no_migrate;
            SparseEstimate s = estimate_pi(c, part, seed, o);
            report.put("estimate", s.estimate);
            report.put("exact_expectation", s.exact);
            report.put("samples", s.samples);
            report.put("seed", seed);
            report.put("chi", s.chi);
            report.put("k", s.k);
            report.put("n", part.b.size());
            report.put("xi_bound", s.xi_bound);
            report.put("max_abs_xi", s.max_abs_xi);
            report.put("weight_square_sum", s.weight_square_sum);
            report.put("max_r_degree", s.max_r_degree);
            report.put("backend_runs", s.backend_runs);
            if (dense_check) {
                report.put("dense", acceptance_dense(c));
            }
        } else if (*search_cmd) {
            anneal_config.restrict_real = !allow_complex;
            AnnealResult r;
            try {
                parse_target(target);
                anneal_config.validate();
            } catch (const std::invalid_argument &e) {
                throw InputError(e.what());
            }
            r = anneal(target, anneal_config);
            report.put("target", target);
            report.put("chi", anneal_config.chi);
            report.put("seed", anneal_config.seed);
            report.put("success", r.success);
            report.put("best_f", r.best_f);
            report.put("restarts_used", r.restarts_used);
            report.put("proposals", r.proposals);
            report.put("accepted", r.accepted);
            if (r.decomposition) {
                report.put("rank", r.decomposition->rank());
                report.put("exact", r.exact);
                report.put("residual", r.residual);
                std::string text = decomposition_to_json(*r.decomposition);
                if (!output_path.empty()) {
                    write_file(output_path, text);
                    report.put("written", output_path);
                } else if (as_json) {
                    report.put("decomposition", json::parse(text));
                }
            }
        } else if (*verify_cmd) {
            StabilizerDecomposition d = load_decomposition(decomp_name);
            VerificationResult v = verify_decomposition(d);
            if (as_json) {
                report.put("exact", v.exact);
                report.put("chi", d.rank());
            } else {
                report.line(std::string("exact: ") + (v.exact ? "true" : "false") + ", chi: " + std::to_string(d.rank()));
            }
            report.put("target", d.target);
            report.put("residual", v.residual);
            if (!v.exact && v.residual > 1e-8) {
                status = EXIT_RUNTIME;
            }
        } else if (*bench_cmd) {
            std::mt19937_64 rng(seed);
            json rows = json::array();
            std::ostringstream table;
            table << std::left << std::setw(4) << "n" << std::setw(10) << "terms" << std::setw(14) << "pairs"
                  << std::setw(14) << "brute_ms" << std::setw(14) << "rank_ms" << "max_abs_diff\n";
            for (size_t n = 1; n <= max_n; n++) {
                RankEvaluator ev(n, rank);
                double brute_ms = 0, rank_ms = 0, diff = 0;
                bool brute = n <= brute_limit;
                for (size_t r = 0; r < reps; r++) {
                    PbcTree tree = random_commuting_sequence(n, rng);
                    std::vector<int> outcomes(n);
                    for (auto &o : outcomes) {
                        o = (rng() & 1) ? 1 : -1;
                    }
                    auto t0 = std::chrono::steady_clock::now();
                    double pr = rank_probability(tree, outcomes, rank).to_double();
                    rank_ms += millis_since(t0);
                    if (brute) {
                        t0 = std::chrono::steady_clock::now();
                        double pb = brute_force_probability(tree, outcomes);
                        brute_ms += millis_since(t0);
                        diff = std::max(diff, std::abs(pr - pb));
                    }
                }
                double terms = static_cast<double>(ev.num_terms());
                double pairs = terms * terms;
                json row = {{"n", n},
                            {"terms", ev.num_terms()},
                            {"pairs", pairs},
                            {"brute_ms", brute ? json(brute_ms / static_cast<double>(reps)) : json(nullptr)},
                            {"rank_ms", rank_ms / static_cast<double>(reps)},
                            {"max_abs_diff", brute ? json(diff) : json(nullptr)}};
                rows.push_back(row);
                table << std::setw(4) << n << std::setw(10) << ev.num_terms() << std::setw(14) << pairs
                      << std::setw(14) << (brute ? num(brute_ms / static_cast<double>(reps)) : "-")
                      << std::setw(14) << num(rank_ms / static_cast<double>(reps))
                      << (brute ? num(diff) : "-") << "\n";
            }
            if (as_json) {
                report.put("base_k", base_k);
                report.put("rows", rows);
            } else {
                std::string t = table.str();
                t.pop_back();
                report.line(t);
            }
        }
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BAD_INPUT;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BAD_INPUT;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_RUNTIME;
    }
    report.print(out);
    return status;
}

}  // namespace pbcsim
