// Command-line front end. Every subcommand fills a RunReport; exit codes:
// 0 success/verified, 1 refuted/counterexample, 2 usage error, 3 budget exhausted.

#include <stepup/avoidance.hpp>
#include <stepup/binary_structure.hpp>
#include <stepup/constructions.hpp>
#include <stepup/dyadic.hpp>
#include <stepup/embedding.hpp>
#include <stepup/independence.hpp>
#include <stepup/report.hpp>
#include <stepup/stepping_up.hpp>
#include <stepup/structure_types.hpp>
#include <stepup/transversal.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace stepup;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "text";
    std::string out;
    std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Hypergraph parse_hypergraph(const std::string& content) {
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') return from_json(json::parse(content));
    return from_text(content);
}

json graph_output(const Hypergraph& h, const std::string& format) {
    if (format == "json") return to_json(h);
    return to_text(h);
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
    std::vector<Vertex> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(static_cast<Vertex>(std::stoul(tok)));
        } catch (const std::exception&) {
            throw UsageError("bad vertex list '" + text + "'");
        }
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return "(" + s + ")";
}

std::string side_string(const std::vector<Side>& colors) {
    std::string s;
    for (auto c : colors) s += to_char(c);
    return s;
}

std::vector<std::string> set_strings(const std::vector<IntSet>& sets) {
    std::vector<std::string> out;
    for (const auto& s : sets) out.push_back(s.to_string());
    return out;
}

std::string family_string(const std::vector<TypeTree>& fam) {
    std::string s;
    for (std::size_t i = 0; i < fam.size(); ++i) s += (i ? "," : "") + fam[i].to_string();
    return s;
}

json triple_json(const DyadicTriple& x) {
    std::vector<std::vector<Vertex>> parts(x.colors.size());
    for (std::size_t v = 0; v < x.part.size(); ++v) parts[x.part[v]].push_back(static_cast<Vertex>(v));
    std::vector<Vertex> order(x.rank.size());
    for (std::size_t v = 0; v < x.rank.size(); ++v) order[x.rank[v]] = static_cast<Vertex>(v);
    return json{{"parts", parts}, {"colors", side_string(x.colors)}, {"order", order}};
}

using Handler = std::function<ExitCode(RunReport&)>;

struct Registry {
    CLI::App& app;
    Common& common;
    std::vector<std::pair<CLI::App*, Handler>> commands;

    CLI::App* add(const std::string& name, const std::string& description, Handler h) {
        auto* sc = app.add_subcommand(name, description);
        sc->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sc->add_option("--out", common.out, "Write the report to FILE instead of stdout");
        sc->add_option("--seed", common.seed, "Random seed (recorded in the report)");
        commands.emplace_back(sc, std::move(h));
        return sc;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stepping-up toolkit for hypergraph Ramsey constructions: binary structures, structure types, "
                 "stepped-up hypergraphs, avoidance numbers, dyadic partitions and transversal checks."};
    app.require_subcommand(1);
    Common common;
    Registry reg{app, common, {}};

    // bstruct ---------------------------------------------------------------
    std::string set_text;
    bool dot = false;
    auto* bstruct = reg.add("bstruct",
                            "Binary structure b(S) of an integer set: tree, shape, delta sequence, monotonicity and "
                            "level set L(S)",
                            [&](RunReport& r) {
                                const IntSet s = parse_int_set(set_text);
                                r.inputs["set"] = s.to_string();
                                const BinaryStructureTree b(s);
                                r.outputs["shape"] = b.shape();
                                r.outputs["monotonicity"] = to_string(classify_monotone(b));
                                if (s.size() >= 2) r.outputs["delta_sequence"] = join(delta_sequence(s));
                                if (classify_monotone(b) != Monotonicity::neither)
                                    r.outputs["level_set"] = level_set(s).to_string();
                                r.outputs["tree"] = dot ? b.to_dot() : b.to_text();
                                return ExitCode::ok;
                            });
    bstruct->add_option("--set", set_text, "Comma-separated integers, e.g. 5,6,7,8,9")->required();
    bstruct->add_flag("--dot", dot, "Render the tree as Graphviz DOT");

    // delta -----------------------------------------------------------------
    std::string delta_set;
    auto* delta_cmd = reg.add("delta", "Delta sequence: highest differing binary digit of consecutive elements",
                              [&](RunReport& r) {
                                  const IntSet s = parse_int_set(delta_set);
                                  r.inputs["set"] = s.to_string();
                                  r.outputs["delta_sequence"] = join(delta_sequence(s));
                                  r.outputs["top_splitting_level"] = top_splitting_level(s);
                                  return ExitCode::ok;
                              });
    delta_cmd->add_option("--set", delta_set, "Comma-separated integers")->required();

    // istype ----------------------------------------------------------------
    std::string istype_set, istype_type;
    auto* istype = reg.add("istype", "Whether b(S) is of the given structure type (truncation match)",
                           [&](RunReport& r) {
                               const IntSet s = parse_int_set(istype_set);
                               const TypeTree t = parse_type(istype_type);
                               r.inputs["set"] = s.to_string();
                               r.inputs["type"] = t.to_string();
                               r.outputs["is_of_type"] = is_of_type(s, t);
                               return ExitCode::ok;
                           });
    istype->add_option("--set", istype_set, "Comma-separated integers")->required();
    istype->add_option("--type", istype_type, "Type literal, e.g. (2,2) or (1,(2,1))")->required();

    // monotype --------------------------------------------------------------
    std::string mono_type;
    auto* monotype = reg.add("monotype", "Whether some set with monotone binary structure has the given type",
                             [&](RunReport& r) {
                                 const TypeTree t = parse_type(mono_type);
                                 r.inputs["type"] = t.to_string();
                                 r.outputs["monotone"] = is_monotone_type(t);
                                 r.outputs["canonical"] = canonical_type(t).to_string();
                                 return ExitCode::ok;
                             });
    monotype->add_option("--type", mono_type, "Type literal")->required();

    // stepup ----------------------------------------------------------------
    std::string g1_path, g2_path, types_text, edge_text, save_path;
    std::size_t stepup_n = 0;
    bool materialize = false;
    double max_candidates = 1e7;
    auto* stepup_cmd = reg.add(
        "stepup",
        "Stepping-up of (G1, G2, T): left stepping-up of G1, right stepping-up of G2 and every set of a type in T",
        [&](RunReport& r) {
            const auto t1 = read_file(g1_path), t2 = read_file(g2_path);
            const Hypergraph g1 = parse_hypergraph(t1), g2 = parse_hypergraph(t2);
            const auto fam = parse_type_list(types_text);
            r.inputs["g1"] = t1;
            r.inputs["g2"] = t2;
            r.inputs["types"] = family_string(fam);
            const std::size_t N = stepup_n ? stepup_n : g1.vertex_count();
            r.inputs["N"] = std::to_string(N);
            const auto su = step_up(g1, g2, fam, N);
            r.outputs["uniformity"] = su.uniformity();
            r.outputs["vertices"] = su.vertex_count();
            r.outputs["candidates"] = su.candidate_count();
            if (!edge_text.empty()) {
                const IntSet e = parse_int_set(edge_text);
                r.inputs["edge"] = e.to_string();
                static const char* names[] = {"none", "left", "right", "typed"};
                r.outputs["edge_part"] = names[static_cast<int>(su.classify(e))];
                r.outputs["is_edge"] = su.contains(e);
            }
            if (materialize) {
                Hypergraph g;
                try {
                    g = su.materialize(max_candidates);
                } catch (const std::length_error& e) {
                    r.verdicts["materialize"] = "budget-exhausted";
                    r.outputs["reason"] = e.what();
                    return ExitCode::budget;
                }
                r.outputs["edges"] = g.edge_count();
                if (!save_path.empty()) {
                    std::ofstream(save_path) << to_text(g);
                    r.outputs["saved"] = save_path;
                } else {
                    r.outputs["graph"] = graph_output(g, common.format);
                }
            }
            return ExitCode::ok;
        });
    stepup_cmd->add_option("--g1", g1_path, "File with G1 (text 'k n m' format or JSON)")->required();
    stepup_cmd->add_option("--g2", g2_path, "File with G2")->required();
    stepup_cmd->add_option("--types", types_text, "Type family, e.g. \"(2,2),(1,(2,1))\"");
    stepup_cmd->add_option("--N", stepup_n, "Level count N (defaults to |V(G1)|)");
    stepup_cmd->add_option("--edge", edge_text, "Test one candidate edge, e.g. 0,1,6,7");
    stepup_cmd->add_flag("--materialize", materialize, "Enumerate every k-subset of {0..2^N-1}");
    stepup_cmd->add_option("--max-candidates", max_candidates, "Materialization budget");
    stepup_cmd->add_option("--save", save_path, "Write the materialized graph to FILE (text format)");

    // alpha -----------------------------------------------------------------
    std::string alpha_in;
    auto* alpha = reg.add("alpha", "Exact independence number with a maximum independent set", [&](RunReport& r) {
        const auto text = read_file(alpha_in);
        r.inputs["graph"] = text;
        const auto res = independence_number(parse_hypergraph(text));
        r.outputs["alpha"] = res.size;
        r.outputs["witness"] = res.witness;
        return ExitCode::ok;
    });
    alpha->add_option("--in", alpha_in, "Hypergraph file")->required();

    // free ------------------------------------------------------------------
    std::string pattern_path, host_path;
    long budget_ms = 10000;
    auto* free_cmd = reg.add(
        "free", "Embedding search for a copy of PATTERN in HOST (exit 0 if proven free, 1 if a copy exists)",
        [&](RunReport& r) {
            const auto tp = read_file(pattern_path), th = read_file(host_path);
            r.inputs["pattern"] = tp;
            r.inputs["host"] = th;
            const auto res = contains_copy(parse_hypergraph(tp), parse_hypergraph(th),
                                           std::chrono::milliseconds(budget_ms));
            r.verdicts["embedding"] = to_string(res.outcome);
            r.outputs["search_nodes"] = res.nodes;
            if (res.witness) r.outputs["mapping"] = res.witness->mapping;
            switch (res.outcome) {
            case SearchOutcome::found: return ExitCode::refuted;
            case SearchOutcome::proven_absent: return ExitCode::ok;
            case SearchOutcome::budget_exhausted: return ExitCode::budget;
            }
            return ExitCode::ok;
        });
    free_cmd->add_option("--pattern", pattern_path, "Pattern hypergraph file")->required();
    free_cmd->add_option("--host", host_path, "Host hypergraph file")->required();
    free_cmd->add_option("--budget-ms", budget_ms, "Search time budget in milliseconds");

    // f ---------------------------------------------------------------------
    std::size_t n1 = 2, n2 = 2, max_n = 6, brute_m = 0, max_states = 2'000'000;
    std::string f_types;
    bool table = false;
    auto* f_cmd = reg.add(
        "f",
        "Avoidance number f(n1,n2,T): largest set with no increasing n1-set, no decreasing n2-set and no set of a "
        "type in T",
        [&](RunReport& r) {
            const auto fam = parse_type_list(f_types);
            r.inputs["types"] = family_string(fam);
            if (table) {
                r.inputs["max_n"] = std::to_string(max_n);
                std::ostringstream tsv;
                tsv << "n1\tn2\tf\n";
                for (std::size_t a = 1; a <= max_n; ++a)
                    for (std::size_t b = 1; b <= max_n; ++b) {
                        const auto res = f_exact({a, b, fam}, max_states);
                        tsv << a << '\t' << b << '\t';
                        if (res.status == AvoidanceStatus::computed) tsv << res.value << '\n';
                        else tsv << "budget-exhausted\n";
                    }
                r.outputs["table"] = tsv.str();
                return ExitCode::ok;
            }
            r.inputs["n1"] = std::to_string(n1);
            r.inputs["n2"] = std::to_string(n2);
            const AvoidanceQuery q{n1, n2, fam};
            const auto res = f_exact(q, max_states);
            r.outputs["states"] = res.states;
            if (res.status != AvoidanceStatus::computed) {
                r.verdicts["f"] = "budget-exhausted";
                return ExitCode::budget;
            }
            r.outputs["f"] = res.value;
            r.outputs["witness"] = res.witness.to_string();
            r.outputs["witness_bits"] = res.universe_bits;
            if (brute_m) {
                r.inputs["brute_m"] = std::to_string(brute_m);
                const auto b = f_bruteforce(q, brute_m);
                r.outputs["bruteforce"] = b;
            }
            return ExitCode::ok;
        });
    f_cmd->add_option("--n1", n1, "Forbidden increasing size");
    f_cmd->add_option("--n2", n2, "Forbidden decreasing size");
    f_cmd->add_option("--types", f_types, "Forbidden types, e.g. \"(2,2)\"");
    f_cmd->add_flag("--table", table, "Emit a TSV table over 1..max-n for both n1 and n2");
    f_cmd->add_option("--max-n", max_n, "Table range");
    f_cmd->add_option("--brute", brute_m, "Also run the brute force over {0..2^m-1} (m <= 6)");
    f_cmd->add_option("--max-states", max_states, "Memo table budget");

    // fcheck ----------------------------------------------------------------
    std::size_t fcheck_m = 5, fcheck_max = 4;
    auto* fcheck = reg.add(
        "fcheck",
        "Cross-check f against brute force on every family of at most two size-4 types, and the depth-one bound",
        [&](RunReport& r) {
            r.inputs["m"] = std::to_string(fcheck_m);
            r.inputs["max_n"] = std::to_string(fcheck_max);
            const auto types = enumerate_types(4, true);
            std::vector<std::vector<TypeTree>> fams{{}};
            for (std::size_t i = 0; i < types.size(); ++i) {
                fams.push_back({types[i]});
                for (std::size_t j = i + 1; j < types.size(); ++j) fams.push_back({types[i], types[j]});
            }
            std::size_t points = 0, mismatches = 0, bound_violations = 0;
            json first = nullptr;
            for (const auto& fam : fams)
                for (std::size_t a = 2; a <= fcheck_max; ++a)
                    for (std::size_t b = 2; b <= fcheck_max; ++b) {
                        const AvoidanceQuery q{a, b, fam};
                        const auto ex = f_exact(q);
                        const auto br = f_bruteforce(q, fcheck_m);
                        ++points;
                        if (ex.value != br) {
                            if (mismatches++ == 0)
                                first = {{"n1", a}, {"n2", b}, {"types", family_string(fam)}, {"exact", ex.value},
                                         {"brute", br}};
                        }
                        bool has_tab = false;
                        for (const auto& t : fam) {
                            const auto c = canonical_type(t);
                            if (!c.is_leaf() && c.left().is_leaf() && c.right().is_leaf()) has_tab = true;
                        }
                        if (has_tab && ex.value > depth1_bound(q)) ++bound_violations;
                    }
            r.outputs["grid_points"] = points;
            r.outputs["mismatches"] = mismatches;
            r.outputs["bound_violations"] = bound_violations;
            if (!first.is_null()) r.outputs["first_mismatch"] = first;
            const bool ok = mismatches == 0 && bound_violations == 0;
            r.verdicts["fcheck"] = ok ? "verified" : "refuted";
            return ok ? ExitCode::ok : ExitCode::refuted;
        });
    fcheck->add_option("--m", fcheck_m, "Brute-force universe {0..2^m-1}");
    fcheck->add_option("--max-n", fcheck_max, "Largest n1, n2");

    // dyadic ----------------------------------------------------------------
    std::string dyadic_set, tie = "left";
    bool verify_lemmas = false;
    std::size_t max_size = 9;
    auto* dyadic = reg.add(
        "dyadic", "Dyadic decomposition of a set (parts, colors, ordering) or exhaustive checks of the size bounds",
        [&](RunReport& r) {
            if (verify_lemmas) {
                r.inputs["max_size"] = std::to_string(max_size);
                const auto g = verify_greedy_bound(max_size);
                const auto t = verify_two_color_bound(max_size);
                r.outputs["greedy_cases"] = g.cases;
                r.outputs["greedy_violations"] = g.violations;
                r.outputs["two_color_cases"] = t.cases;
                r.outputs["two_color_violations"] = t.violations;
                const bool ok = g.violations == 0 && t.violations == 0;
                r.verdicts["lemmas"] = ok ? "verified" : "refuted";
                return ok ? ExitCode::ok : ExitCode::refuted;
            }
            if (dyadic_set.empty()) throw UsageError("dyadic needs --set or --verify-lemmas");
            const IntSet a = parse_int_set(dyadic_set);
            r.inputs["set"] = a.to_string();
            r.inputs["tie"] = tie;
            const auto d = dyadic_decompose(a, tie == "left" ? TieRule::prefer_left : TieRule::prefer_right);
            r.outputs["parts"] = set_strings(d.parts);
            r.outputs["colors"] = side_string(d.colors);
            r.outputs["sizes"] = d.sizes();
            r.outputs["split_levels"] = d.split_levels;
            r.outputs["residuals"] = set_strings(d.residuals);
            r.outputs["pi_ascending"] = ordering_pi(d);
            r.verdicts["invariants"] = decomposition_invariants_hold(d) ? "hold" : "violated";
            return ExitCode::ok;
        });
    dyadic->add_option("--set", dyadic_set, "Comma-separated integers");
    dyadic->add_option("--tie", tie, "Tie rule when both halves have equal size")
        ->check(CLI::IsMember({"left", "right"}));
    dyadic->add_flag("--verify-lemmas", verify_lemmas, "Exhaustively check the greedy and two-coloring bounds");
    dyadic->add_option("--max-size", max_size, "Largest set size for --verify-lemmas");

    // gk, fano, pg ----------------------------------------------------------
    std::size_t gk_k = 2;
    std::string gk_save;
    auto* gk = reg.add("gk", "The recursive 4-graph G_k on 2^{k+1} vertices", [&](RunReport& r) {
        r.inputs["k"] = std::to_string(gk_k);
        const auto g = g_k(gk_k);
        r.outputs["vertices"] = g.vertex_count();
        r.outputs["edges"] = g.edge_count();
        if (!gk_save.empty()) {
            std::ofstream(gk_save) << to_text(g);
            r.outputs["saved"] = gk_save;
        } else {
            r.outputs["graph"] = graph_output(g, common.format);
        }
        return ExitCode::ok;
    });
    gk->add_option("--k", gk_k, "Level k (1..5)");
    gk->add_option("--save", gk_save, "Write the graph to FILE (text format)");

    auto* fano = reg.add("fano", "The Fano plane as a 3-graph (lines of PG(2,2))", [&](RunReport& r) {
        const auto g = fano_plane();
        r.outputs["graph"] = graph_output(g, common.format);
        return ExitCode::ok;
    });
    (void)fano;

    unsigned pg_q = 3;
    auto* pg = reg.add("pg", "Lines of the projective plane PG(2,q) for small prime q", [&](RunReport& r) {
        r.inputs["q"] = std::to_string(pg_q);
        const auto g = pg_lines(pg_q);
        r.outputs["points"] = g.vertex_count();
        r.outputs["lines"] = g.edge_count();
        r.outputs["graph"] = graph_output(g, common.format);
        return ExitCode::ok;
    });
    pg->add_option("--q", pg_q, "Prime q (2, 3, 5 or 7)");

    // f4check ---------------------------------------------------------------
    auto* f4check = reg.add(
        "f4check",
        "Scan every vertex subset A of F4 (lines of PG(2,3)) with |A cap e| in {0,2,4} for all lines; exit 0 iff "
        "only the empty set and the whole vertex set qualify",
        [&](RunReport& r) {
            const auto g = f4();
            const auto sets = parity_partition_scan(g);
            std::vector<std::string> shown;
            for (auto m : sets) shown.push_back(IntSet::from_mask(m).to_string());
            r.outputs["qualifying_sets"] = shown;
            const bool ok = sets == std::vector<std::uint64_t>{0, (std::uint64_t{1} << g.vertex_count()) - 1};
            r.verdicts["only_trivial_sets"] = ok;
            return ok ? ExitCode::ok : ExitCode::refuted;
        });
    (void)f4check;

    // expand ----------------------------------------------------------------
    std::string expand_in;
    auto* expand = reg.add("expand",
                           "Expansion H+: a new vertex v_e added to each edge; ordered with every v_e first",
                           [&](RunReport& r) {
                               const auto text = read_file(expand_in);
                               r.inputs["graph"] = text;
                               const auto h = parse_hypergraph(text);
                               const auto oe = ordered_expansion(h);
                               r.outputs["graph"] = graph_output(oe.hypergraph, common.format);
                               r.outputs["order"] = oe.order;
                               r.outputs["linear"] = is_linear(oe.hypergraph);
                               return ExitCode::ok;
                           });
    expand->add_option("--in", expand_in, "Hypergraph file")->required();

    // blowup ----------------------------------------------------------------
    std::string blow_h0, blow_f, blow_order;
    bool blow_expand = false;
    auto* blow = reg.add(
        "blowup",
        "Place a copy of the ordered hypergraph F< in each oriented edge of H0 (rank-i vertex to tuple position i)",
        [&](RunReport& r) {
            const auto th = read_file(blow_h0), tf = read_file(blow_f);
            r.inputs["h0"] = th;
            r.inputs["f"] = tf;
            r.inputs["order"] = blow_order;
            r.inputs["expand"] = blow_expand ? "1" : "0";
            const auto h0 = oriented_from_json(json::parse(th));
            OrderedHypergraph f;
            if (blow_expand) {
                f = ordered_expansion(parse_hypergraph(tf));
            } else {
                f.hypergraph = parse_hypergraph(tf);
                if (blow_order.empty()) {
                    for (Vertex v = 0; v < f.hypergraph.vertex_count(); ++v) f.order.push_back(v);
                } else {
                    f.order = parse_vertex_list(blow_order);
                }
            }
            const auto out = blowup(h0, f);
            r.outputs["edges"] = out.hypergraph.edge_count();
            r.outputs["duplicate_edges"] = out.duplicate_edges;
            r.outputs["linear"] = is_linear(out.hypergraph);
            r.outputs["graph"] = graph_output(out.hypergraph, common.format);
            return ExitCode::ok;
        });
    blow->add_option("--h0", blow_h0, "Oriented hypergraph JSON {\"s\",\"n\",\"edges\"}")->required();
    blow->add_option("--f", blow_f, "Hypergraph file for F")->required();
    blow->add_option("--order", blow_order, "Vertices of F from smallest to largest (default 0..n-1)");
    blow->add_flag("--expand", blow_expand, "Use the ordered expansion of the given hypergraph as F<");

    // search-h0 -------------------------------------------------------------
    SearchConfig cfg;
    std::size_t girth = 0, stat_trials = 1000;
    std::string h0_save;
    auto* search = reg.add(
        "search-h0",
        "Sample a random linear oriented s-graph (edge probability c*n^(2-s)) and estimate how often random "
        "(dyadic partition, coloring, ordering) triples admit an ordered monochromatic transversal edge",
        [&](RunReport& r) {
            cfg.seed = common.seed;
            if (girth) cfg.girth = girth;
            r.seed = common.seed;
            r.inputs["s"] = std::to_string(cfg.s);
            r.inputs["n"] = std::to_string(cfg.n);
            r.inputs["c"] = std::to_string(cfg.c);
            r.inputs["girth"] = std::to_string(girth);
            r.inputs["max_attempts"] = std::to_string(cfg.max_attempts);
            r.inputs["trials"] = std::to_string(stat_trials);
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto sample = sample_linear_oriented(cfg);
            r.outputs["edge_probability"] = cfg.edge_probability();
            r.outputs["attempts"] = sample.attempts;
            r.outputs["rejected_nonlinear"] = sample.rejected_nonlinear;
            r.outputs["rejected_girth"] = sample.rejected_girth;
            if (!sample.graph) {
                r.verdicts["sample"] = "budget-exhausted";
                return ExitCode::budget;
            }
            r.outputs["edges"] = sample.graph->edges.size();
            Rng rng(common.seed ^ 0x9e3779b97f4a7c15ull);
            const auto st = estimate_transversal_fraction(*sample.graph, stat_trials, rng);
            r.outputs["triples_admitting_edge"] = st.admitting;
            r.outputs["fraction_admitting_edge"] = st.fraction();
            if (!h0_save.empty()) {
                std::ofstream(h0_save) << to_json(*sample.graph).dump() << '\n';
                r.outputs["saved"] = h0_save;
            } else {
                r.outputs["h0"] = to_json(*sample.graph).dump();
            }
            return ExitCode::ok;
        });
    search->add_option("--s", cfg.s, "Edge size s");
    search->add_option("--n", cfg.n, "Vertex count n");
    search->add_option("--c", cfg.c, "Density constant c");
    search->add_option("--girth", girth, "Also reject Berge cycles of length <= g");
    search->add_option("--max-attempts", cfg.max_attempts, "Resampling budget");
    search->add_option("--trials", stat_trials, "Random triples for the statistics");
    search->add_option("--save", h0_save, "Write the sample to FILE as JSON");

    // verify-h0 -------------------------------------------------------------
    std::string verify_in;
    bool exhaustive = false;
    long verify_budget = 60000;
    std::size_t verify_trials = 1000;
    auto* verify = reg.add(
        "verify-h0",
        "Check that every dyadic partition, coloring and ordering of V(H0) admits an ordered monochromatic "
        "transversal edge (exhaustive), or estimate the fraction on random triples",
        [&](RunReport& r) {
            const auto text = read_file(verify_in);
            r.inputs["h0"] = text;
            r.inputs["exhaustive"] = exhaustive ? "1" : "0";
            r.seed = common.seed;
            const auto h0 = oriented_from_json(json::parse(text));
            if (!exhaustive) {
                Rng rng(common.seed);
                const auto st = estimate_transversal_fraction(h0, verify_trials, rng);
                r.outputs["trials"] = st.trials;
                r.outputs["triples_admitting_edge"] = st.admitting;
                r.outputs["fraction_admitting_edge"] = st.fraction();
                return ExitCode::ok;
            }
            const auto res = verify_transversal_property(h0, std::chrono::milliseconds(verify_budget));
            r.outputs["partitions_checked"] = res.partitions_checked;
            r.verdicts["transversal_property"] = to_string(res.verdict);
            if (res.counterexample) r.outputs["counterexample"] = triple_json(*res.counterexample);
            switch (res.verdict) {
            case Verdict::verified: return ExitCode::ok;
            case Verdict::refuted: return ExitCode::refuted;
            case Verdict::budget_exhausted: return ExitCode::budget;
            }
            return ExitCode::ok;
        });
    verify->add_option("--in", verify_in, "Oriented hypergraph JSON")->required();
    verify->add_flag("--exhaustive", exhaustive, "Enumerate every triple instead of sampling");
    verify->add_option("--budget-ms", verify_budget, "Time budget for the exhaustive check");
    verify->add_option("--trials", verify_trials, "Random triples when not exhaustive");

    // chain-check -----------------------------------------------------------
    std::size_t chain_trials = 10000;
    auto* chain = reg.add(
        "chain-check",
        "Random monochromatic chains x_0..x_{k-1} with decreasing part indices: check monotone structure and that "
        "L equals the recorded split levels",
        [&](RunReport& r) {
            r.seed = common.seed;
            r.inputs["trials"] = std::to_string(chain_trials);
            Rng rng(common.seed);
            std::size_t done = 0, bad = 0;
            while (done < chain_trials) {
                std::vector<std::uint64_t> v;
                const std::size_t size = 2 + rng.below(60);
                while (v.size() < size) {
                    v.push_back(rng.below(1u << 14));
                    std::sort(v.begin(), v.end());
                    v.erase(std::unique(v.begin(), v.end()), v.end());
                }
                const auto d = dyadic_decompose(IntSet(v));
                const Side side = rng.coin() ? Side::R : Side::L;
                std::vector<std::uint64_t> ch;
                const std::size_t i0 = d.t() - rng.below(d.t());
                ch.push_back(d.parts[i0 - 1][rng.below(d.parts[i0 - 1].size())]);
                for (std::size_t j = i0 - 1; j >= 1; --j)
                    if (d.colors[j - 1] == side && rng.coin())
                        ch.push_back(d.parts[j - 1][rng.below(d.parts[j - 1].size())]);
                if (ch.size() < 2) continue;
                ++done;
                const auto c = check_chain(d, ch, side);
                if (!c.structure_ok || !c.levels_ok) ++bad;
            }
            r.outputs["chains"] = done;
            r.outputs["violations"] = bad;
            r.verdicts["chain_property"] = bad ? "refuted" : "verified";
            return bad ? ExitCode::refuted : ExitCode::ok;
        });
    chain->add_option("--trials", chain_trials, "Number of chains");

    // lemmas ----------------------------------------------------------------
    std::size_t lemma_size = 9;
    auto* lemmas = reg.add(
        "lemmas",
        "Run the exhaustive suites: dyadic size bounds, f against brute force with the depth-one bound, and the "
        "independence bound for stepped-up graphs",
        [&](RunReport& r) {
            r.seed = common.seed;
            r.inputs["max_size"] = std::to_string(lemma_size);
            bool ok = true;
            const auto g = verify_greedy_bound(lemma_size);
            const auto t = verify_two_color_bound(lemma_size);
            r.verdicts["greedy_bound"] = g.violations ? "refuted" : "verified";
            r.verdicts["two_color_bound"] = t.violations ? "refuted" : "verified";
            ok = ok && !g.violations && !t.violations;

            std::size_t mism = 0, viol = 0;
            const auto types = enumerate_types(4, true);
            std::vector<std::vector<TypeTree>> fams{{}};
            for (std::size_t i = 0; i < types.size(); ++i) {
                fams.push_back({types[i]});
                for (std::size_t j = i + 1; j < types.size(); ++j) fams.push_back({types[i], types[j]});
            }
            for (const auto& fam : fams)
                for (std::size_t a = 2; a <= 4; ++a)
                    for (std::size_t b = 2; b <= 4; ++b) {
                        const AvoidanceQuery q{a, b, fam};
                        const auto ex = f_exact(q);
                        mism += ex.value != f_bruteforce(q, 5);
                        bool has_tab = false;
                        for (const auto& ty : fam) {
                            const auto c = canonical_type(ty);
                            if (!c.is_leaf() && c.left().is_leaf() && c.right().is_leaf()) has_tab = true;
                        }
                        viol += has_tab && ex.value > depth1_bound(q);
                    }
            r.verdicts["f_grid"] = mism ? "refuted" : "verified";
            r.verdicts["depth_one_bound"] = viol ? "refuted" : "verified";
            ok = ok && !mism && !viol;

            Rng rng(common.seed);
            std::size_t alpha_viol = 0;
            for (int trial = 0; trial < 50; ++trial) {
                Hypergraph g1(3, 4), g2(3, 4);
                for_each_k_subset(4, 3, [&](const Edge& e) {
                    if (rng.coin()) g1.add_edge(e);
                    if (rng.coin()) g2.add_edge(e);
                });
                const auto a1 = independence_number(g1).size, a2 = independence_number(g2).size;
                for (const auto& fam : {std::vector<TypeTree>{}, std::vector<TypeTree>{parse_type("(2,2)")}}) {
                    const auto su = step_up(g1, g2, fam).materialize();
                    alpha_viol += independence_number(su).size > f_exact({a1 + 2, a2 + 2, fam}).value;
                }
            }
            r.verdicts["stepping_up_alpha_bound"] = alpha_viol ? "refuted" : "verified";
            ok = ok && !alpha_viol;
            return ok ? ExitCode::ok : ExitCode::refuted;
        });
    lemmas->add_option("--max-size", lemma_size, "Largest set size for the dyadic suites");

    // -----------------------------------------------------------------------
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::usage);
    }

    for (auto& [sc, handler] : reg.commands) {
        if (!sc->parsed()) continue;
        RunReport report;
        report.command = sc->get_name();
        report.seed = common.seed;
        report.inputs["format"] = common.format;
        ExitCode code;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            code = handler(report);
        } catch (const UsageError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return static_cast<int>(ExitCode::usage);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << '\n';
            return static_cast<int>(ExitCode::usage);
        } catch (const json::exception& e) {
            std::cerr << "error: malformed JSON: " << e.what() << '\n';
            return static_cast<int>(ExitCode::usage);
        }
        report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        const std::string rendered = common.format == "json" ? report.to_json().dump(2) + "\n" : report.to_text();
        if (common.out.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(common.out);
            if (!out) {
                std::cerr << "error: cannot write '" << common.out << "'\n";
                return static_cast<int>(ExitCode::usage);
            }
            out << rendered;
        }
        return static_cast<int>(code);
    }
    return static_cast<int>(ExitCode::usage);
}
