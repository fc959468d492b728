// Command-line front end.  Subcommands: gen, matchings, gen-counterexample,
// extend, check-pmh, check-ph, cert-verify, verify-paper.  Exit codes:
// 0 = all expectations met, 1 = a check failed its expectation, 2 = usage or
// input error, 3 = budget exceeded.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmh/battery.hpp"
#include "pmh/counterexample.hpp"
#include "pmh/extend.hpp"
#include "pmh/graph.hpp"
#include "pmh/io.hpp"
#include "pmh/isomorphism.hpp"
#include "pmh/matching.hpp"
#include "pmh/properties.hpp"

using namespace pmh;

namespace {

struct RunParams {
    int workers = 1;
    std::uint64_t node_budget = 0;
    double time_budget_ms = 0;
    std::string output;
    bool canonical = false;
};

struct GridShape {
    int p = 0, q = 0;
    bool torus = false;
};

// Recover the grid shape from a product label like "C6xC3" or "C6xP3", so
// file-loaded graphs behave exactly like inline family specs.
std::optional<GridShape> grid_from_label(const std::string& label) {
    if (label.size() < 4 || label[0] != 'C') return std::nullopt;
    auto x = label.find('x');
    if (x == std::string::npos || x + 2 >= label.size()) return std::nullopt;
    char kind = label[x + 1];
    if (kind != 'C' && kind != 'P') return std::nullopt;
    for (std::size_t i = 1; i < x; ++i)
        if (!std::isdigit(static_cast<unsigned char>(label[i]))) return std::nullopt;
    for (std::size_t i = x + 2; i < label.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(label[i]))) return std::nullopt;
    int p = std::stoi(label.substr(1, x - 1));
    int q = std::stoi(label.substr(x + 2));
    if (p < 3 || q < 1) return std::nullopt;
    return GridShape{p, q, kind == 'C'};
}

struct LoadedGraph {
    Graph graph;
    std::optional<GridShape> grid;
};

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad " + what + " value '" + tok + "' in '" + s + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty " + what + " list '" + s + "'");
    return out;
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

Graph build_family(const std::string& family, const std::vector<int>& a) {
    auto need = [&](std::size_t k) {
        if (a.size() != k)
            throw std::invalid_argument("family '" + family + "' takes " + std::to_string(k) +
                                        " parameter(s)");
    };
    if (family == "cycle") { need(1); return build_cycle(a[0]); }
    if (family == "path") { need(1); return build_path(a[0]); }
    if (family == "complete") { need(1); return build_complete(a[0]); }
    if (family == "hypercube") { need(1); return build_hypercube(a[0]); }
    if (family == "kbip") { need(2); return build_complete_bipartite(a[0], a[1]); }
    if (family == "torus") { need(2); return build_torus(a[0], a[1]); }
    if (family == "cylinder") { need(2); return build_cylinder(a[0], a[1]); }
    throw std::invalid_argument("unknown graph family '" + family + "'");
}

bool is_family_name(const std::string& s) {
    return s == "cycle" || s == "path" || s == "complete" || s == "hypercube" || s == "kbip" ||
           s == "torus" || s == "cylinder";
}

LoadedGraph load_graph(const std::string& spec) {
    auto colon = spec.find(':');
    Graph g(0, {});
    if (colon != std::string::npos && is_family_name(spec.substr(0, colon))) {
        g = build_family(spec.substr(0, colon),
                         parse_int_list(spec.substr(colon + 1), "graph parameter"));
    } else {
        std::ifstream in(spec);
        if (!in) throw std::invalid_argument("cannot open graph file '" + spec + "'");
        if (ends_with(spec, ".json"))
            g = graph_from_json(ojson::parse(in));
        else
            g = read_edge_list(in);
    }
    auto grid = grid_from_label(g.label());
    return {std::move(g), grid};
}

Matching load_matching(const std::string& spec, const LoadedGraph& lg) {
    const Graph& g = lg.graph;
    if (spec.rfind("cex:", 0) == 0) {
        std::string kind = spec.substr(4);
        if (!lg.grid)
            throw std::invalid_argument("matching spec '" + spec +
                                        "' needs a torus/cylinder graph (label " +
                                        (g.label().empty() ? "<none>" : g.label()) + ")");
        if (kind == "q3") {
            if (!lg.grid->torus || lg.grid->q != 3)
                throw std::invalid_argument("cex:q3 needs a CpxC3 torus");
            return torus_q3_matching(lg.grid->p);
        }
        if (kind == "general") {
            if (!lg.grid->torus)
                throw std::invalid_argument("cex:general needs a torus graph");
            return torus_general_matching(lg.grid->p, lg.grid->q);
        }
        if (kind == "cylinder") {
            if (lg.grid->torus)
                throw std::invalid_argument("cex:cylinder needs a cylinder graph");
            return cylinder_matching(lg.grid->p, lg.grid->q).matching;
        }
        throw std::invalid_argument("unknown counterexample matching '" + spec +
                                    "' (want cex:q3, cex:general or cex:cylinder)");
    }
    if (spec.rfind("pairs:", 0) == 0) {
        std::string body = spec.substr(6);
        for (auto& c : body)
            if (c == ',') c = ' ';
        return matching_from_line(g.vertex_count(), body);
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open matching file '" + spec + "'");
    if (ends_with(spec, ".json")) return matching_from_json(ojson::parse(in));
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return matching_from_line(g.vertex_count(), line);
    throw std::invalid_argument("matching file '" + spec + "' is empty");
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open output file '" + path + "'");
    fn(os);
}

std::string dump_pretty(ojson j, bool canonical) {
    if (canonical) canonicalize_json(j);
    return j.dump(2) + "\n";
}

std::string dump_line(ojson j, bool canonical) {
    if (canonical) canonicalize_json(j);
    return j.dump() + "\n";
}

ojson base_config(const std::string& command, const RunParams& rp) {
    ojson c;
    c["command"] = command;
    c["workers"] = rp.workers;
    c["node_budget"] = rp.node_budget;
    c["time_budget_ms"] = rp.time_budget_ms;
    return c;
}

std::vector<CutCertificate> auto_cuts(const LoadedGraph& lg, bool enabled) {
    if (!enabled || !lg.grid) return {};
    return grid_level_cuts(lg.graph, lg.grid->p, lg.grid->q);
}

int default_workers_from_env() {
    const char* e = std::getenv("PMH_WORKERS");
    if (!e) return 1;
    try {
        int w = std::stoi(e);
        return w >= 1 ? w : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for matching extendability on cycle products"};
    app.require_subcommand(1);

    RunParams rp;
    rp.workers = default_workers_from_env();

    auto add_common = [&rp](CLI::App* sub) {
        sub->add_option("--workers", rp.workers, "parallel workers (default $PMH_WORKERS or 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--node-budget", rp.node_budget,
                        "max search nodes per extension (0 = unlimited)");
        sub->add_option("--time-budget-ms", rp.time_budget_ms,
                        "wall-clock cap per extension in ms (0 = unlimited)");
        sub->add_option("-o,--output", rp.output, "output file (default stdout)");
        sub->add_flag("--canonical", rp.canonical,
                      "zero timing/worker fields for byte-stable comparisons");
    };

    // gen
    std::string gen_family, gen_format = "edge-list";
    int gen_n = -1, gen_p = -1, gen_q = -1;
    auto* gen = app.add_subcommand("gen", "generate a graph family");
    gen->add_option("--family", gen_family, "cycle|path|complete|hypercube|kbip|torus|cylinder")
        ->required();
    gen->add_option("--n", gen_n, "order (single-parameter families)");
    gen->add_option("--p", gen_p, "first parameter");
    gen->add_option("--q", gen_q, "second parameter");
    gen->add_option("--format", gen_format, "edge-list|json")
        ->check(CLI::IsMember({"edge-list", "json"}));
    add_common(gen);

    // matchings
    std::string m_graph;
    bool m_pairings = false, m_count_only = false;
    std::uint64_t m_limit = 0;
    int m_shard = 0, m_shards = 1;
    auto* mat = app.add_subcommand("matchings", "enumerate or count perfect matchings/pairings");
    mat->add_option("--graph", m_graph, "graph spec or file")->required();
    mat->add_flag("--pairings", m_pairings, "enumerate pairings of V instead of matchings");
    mat->add_flag("--count-only", m_count_only, "emit only the count");
    mat->add_option("--limit", m_limit, "stop after this many emitted items (0 = all)");
    mat->add_option("--shard", m_shard, "this worker's shard index");
    mat->add_option("--shards", m_shards, "total shard count");
    add_common(mat);

    // gen-counterexample
    std::string cx_family;
    int cx_p = -1, cx_q = -1;
    auto* cx = app.add_subcommand("gen-counterexample", "emit a non-extendable matching");
    cx->add_option("--family", cx_family, "cylinder|torus-q3|torus-general")->required();
    cx->add_option("--p", cx_p, "first parameter")->required();
    cx->add_option("--q", cx_q, "second parameter (cylinder, torus-general)");
    add_common(cx);

    // extend
    std::string e_graph, e_matching, e_mode = "pmh", e_expect;
    bool e_no_parity = false, e_no_forced = false, e_no_auto_cuts = false;
    auto* ext = app.add_subcommand("extend", "search a Hamiltonian extension of one matching");
    ext->add_option("--graph", e_graph, "graph spec or file")->required();
    ext->add_option("--matching", e_matching, "matching spec (cex:…, pairs:…, or file)")
        ->required();
    ext->add_option("--mode", e_mode, "pmh|ph")->check(CLI::IsMember({"pmh", "ph"}));
    ext->add_flag("--no-cut-parity", e_no_parity, "disable cut-parity pruning");
    ext->add_flag("--no-forced", e_no_forced, "disable forced-edge propagation");
    ext->add_flag("--no-auto-cuts", e_no_auto_cuts, "do not register grid cuts");
    ext->add_option("--expect", e_expect, "fail (exit 1) unless the status matches")
        ->check(CLI::IsMember({"Extended", "Refuted"}));
    add_common(ext);

    // check-pmh / check-ph
    std::string cpm_graph, cpm_expect, cpm_format = "json";
    bool cpm_symmetry = false, cpm_no_parity = false, cpm_no_forced = false,
         cpm_no_auto_cuts = false;
    auto add_check_opts = [&](CLI::App* sub, bool ph) {
        sub->add_option("--graph", cpm_graph, "graph spec or file")->required();
        sub->add_option("--expect", cpm_expect, "fail (exit 1) unless the verdict matches")
            ->check(CLI::IsMember({"holds", "fails", "vacuous"}));
        sub->add_option("--format", cpm_format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--no-cut-parity", cpm_no_parity, "disable cut-parity pruning");
        sub->add_flag("--no-forced", cpm_no_forced, "disable forced-edge propagation");
        sub->add_flag("--no-auto-cuts", cpm_no_auto_cuts, "do not register grid cuts");
        if (ph)
            sub->add_flag("--symmetry", cpm_symmetry,
                          "fix one pair per stabilizer orbit (vertex-transitive graphs)");
        add_common(sub);
    };
    auto* cpm = app.add_subcommand("check-pmh", "check the perfect-matching-Hamiltonian property");
    add_check_opts(cpm, false);
    auto* cph = app.add_subcommand("check-ph", "check the pairing-Hamiltonian property");
    add_check_opts(cph, true);

    // cert-verify
    std::string cv_graph, cv_matching, cv_side, cv_cert;
    auto* cv = app.add_subcommand("cert-verify", "verify an odd-cut non-extendability certificate");
    cv->add_option("--graph", cv_graph, "graph spec or file")->required();
    cv->add_option("--matching", cv_matching, "matching spec or file")->required();
    cv->add_option("--side", cv_side, "comma-separated vertex list of the cut side S");
    cv->add_option("--cert", cv_cert, "certificate JSON file with side and crossing");
    add_common(cv);

    // verify-paper
    std::string vp_items, vp_inject;
    auto* vp = app.add_subcommand("verify-paper",
                                  "run the built-in battery of published-result checks");
    vp->add_option("--items", vp_items, "comma-separated item ids (default: all)");
    vp->add_option("--inject-expectation-failure", vp_inject, "force a mismatch on this item id")
        ->group("");
    add_common(vp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            std::vector<int> args;
            if (gen_family == "kbip" || gen_family == "torus" || gen_family == "cylinder") {
                if (gen_p < 0 || gen_q < 0)
                    throw std::invalid_argument("family '" + gen_family + "' needs --p and --q");
                args = {gen_p, gen_q};
            } else {
                if (gen_n < 0)
                    throw std::invalid_argument("family '" + gen_family + "' needs --n");
                args = {gen_n};
            }
            Graph g = build_family(gen_family, args);
            ojson cfg = base_config("gen", rp);
            cfg["family"] = gen_family;
            cfg["format"] = gen_format;
            if (rp.canonical) canonicalize_json(cfg);
            with_output(rp.output, [&](std::ostream& os) {
                if (gen_format == "json") {
                    ojson j;
                    j["config"] = cfg;
                    j.update(graph_to_json(g));
                    os << dump_pretty(j, rp.canonical);
                } else {
                    write_edge_list(os, g, {"config " + cfg.dump()});
                }
            });
            return 0;
        }

        if (mat->parsed()) {
            if (m_shards < 1 || m_shard < 0 || m_shard >= m_shards)
                throw std::invalid_argument("need 0 <= shard < shards");
            LoadedGraph lg = load_graph(m_graph);
            ojson cfg = base_config("matchings", rp);
            cfg["graph"] = lg.graph.label();
            cfg["pairings"] = m_pairings;
            cfg["shard"] = m_shard;
            cfg["shards"] = m_shards;
            int rc = 0;
            with_output(rp.output, [&](std::ostream& os) {
                ojson head;
                head["config"] = cfg;
                os << dump_line(head, rp.canonical);
                std::uint64_t emitted = 0;
                auto visit = [&](std::span<const Edge> pairs, std::uint64_t ord) {
                    if (ord % static_cast<std::uint64_t>(m_shards) !=
                        static_cast<std::uint64_t>(m_shard))
                        return true;
                    ++emitted;
                    if (!m_count_only) {
                        ojson j;
                        j["ordinal"] = ord;
                        j["pairs"] = edges_to_json(std::vector<Edge>(pairs.begin(), pairs.end()));
                        os << dump_line(j, rp.canonical);
                    }
                    return m_limit == 0 || emitted < m_limit;
                };
                if (m_pairings)
                    for_each_pairing(lg.graph.vertex_count(), visit);
                else
                    for_each_perfect_matching(lg.graph, visit);
                ojson tail;
                tail["count"] = emitted;
                os << dump_line(tail, rp.canonical);
            });
            return rc;
        }

        if (cx->parsed()) {
            ojson cfg = base_config("gen-counterexample", rp);
            cfg["family"] = cx_family;
            cfg["p"] = cx_p;
            ojson j;
            if (cx_family == "cylinder") {
                if (cx_q < 0) throw std::invalid_argument("cylinder needs --q");
                cfg["q"] = cx_q;
                auto [m, kind] = cylinder_matching(cx_p, cx_q);
                j["config"] = cfg;
                j["family"] = cx_family;
                j["host"] = "C" + std::to_string(cx_p) + "xP" + std::to_string(cx_q);
                j["kind"] = to_string(kind);
                j.update(matching_to_json(m));
            } else if (cx_family == "torus-q3") {
                if (cx_q >= 0 && cx_q != 3)
                    throw std::invalid_argument("torus-q3 is defined for q=3");
                Matching m = torus_q3_matching(cx_p);
                j["config"] = cfg;
                j["family"] = cx_family;
                j["host"] = "C" + std::to_string(cx_p) + "xC3";
                j.update(matching_to_json(m));
            } else if (cx_family == "torus-general") {
                if (cx_q < 0) throw std::invalid_argument("torus-general needs --q");
                cfg["q"] = cx_q;
                Matching m = torus_general_matching(cx_p, cx_q);
                j["config"] = cfg;
                j["family"] = cx_family;
                j["host"] = "C" + std::to_string(cx_p) + "xC" + std::to_string(cx_q);
                j.update(matching_to_json(m));
            } else {
                throw std::invalid_argument("unknown counterexample family '" + cx_family + "'");
            }
            with_output(rp.output,
                        [&](std::ostream& os) { os << dump_pretty(j, rp.canonical); });
            return 0;
        }

        if (ext->parsed()) {
            LoadedGraph lg = load_graph(e_graph);
            Matching m = load_matching(e_matching, lg);
            ExtendOptions eo;
            eo.prune_cut_parity = !e_no_parity;
            eo.prune_forced = !e_no_forced;
            eo.cuts = auto_cuts(lg, eo.prune_cut_parity && !e_no_auto_cuts);
            eo.node_budget = rp.node_budget;
            eo.time_budget_ms = rp.time_budget_ms;
            ojson cfg = base_config("extend", rp);
            cfg["graph"] = lg.graph.label();
            cfg["matching"] = e_matching;
            cfg["mode"] = e_mode;
            cfg["cuts_registered"] = eo.cuts.size();
            ExtendMode mode = e_mode == "ph" ? ExtendMode::Ph : ExtendMode::Pmh;
            try {
                ExtensionOutcome out = extend_matching(lg.graph, m, mode, std::move(eo));
                ojson j;
                j["config"] = cfg;
                j.update(outcome_to_json(out));
                with_output(rp.output,
                            [&](std::ostream& os) { os << dump_pretty(j, rp.canonical); });
                if (!e_expect.empty() && e_expect != to_string(out.status)) return 1;
                return 0;
            } catch (const BudgetExceeded& b) {
                ojson j;
                j["config"] = cfg;
                j["error"] = "budget-exceeded";
                j["nodes_explored"] = b.nodes_explored;
                j["elapsed_ms"] = b.elapsed_ms;
                with_output(rp.output,
                            [&](std::ostream& os) { os << dump_pretty(j, rp.canonical); });
                return 3;
            }
        }

        if (cpm->parsed() || cph->parsed()) {
            bool ph = cph->parsed();
            LoadedGraph lg = load_graph(cpm_graph);
            CheckOptions co;
            co.workers = rp.workers;
            co.node_budget = rp.node_budget;
            co.time_budget_ms = rp.time_budget_ms;
            co.symmetry_reduction = cpm_symmetry;
            co.prune_cut_parity = !cpm_no_parity;
            co.prune_forced = !cpm_no_forced;
            co.cuts = auto_cuts(lg, co.prune_cut_parity && !cpm_no_auto_cuts);
            ojson cfg = base_config(ph ? "check-ph" : "check-pmh", rp);
            cfg["graph"] = lg.graph.label();
            cfg["symmetry"] = cpm_symmetry;
            cfg["format"] = cpm_format;
            try {
                PropertyReport rep = ph ? check_ph(lg.graph, co) : check_pmh(lg.graph, co);
                with_output(rp.output, [&](std::ostream& os) {
                    if (cpm_format == "csv") {
                        ojson c = cfg;
                        if (rp.canonical) canonicalize_json(c);
                        os << "# config: " << c.dump() << "\n"
                           << csv_header() << "\n"
                           << report_to_csv_row(rep, rp.canonical) << "\n";
                    } else {
                        ojson j;
                        j["config"] = cfg;
                        j.update(report_to_json(rep));
                        os << dump_pretty(j, rp.canonical);
                    }
                });
                if (!cpm_expect.empty() && cpm_expect != to_string(rep.verdict)) return 1;
                return 0;
            } catch (const CheckBudgetExceeded& b) {
                ojson j;
                j["config"] = cfg;
                j["error"] = "budget-exceeded";
                j["verified_prefix"] = b.verified_prefix;
                with_output(rp.output,
                            [&](std::ostream& os) { os << dump_pretty(j, rp.canonical); });
                return 3;
            }
        }

        if (cv->parsed()) {
            LoadedGraph lg = load_graph(cv_graph);
            Matching m = load_matching(cv_matching, lg);
            if (cv_side.empty() == cv_cert.empty())
                throw std::invalid_argument("cert-verify needs exactly one of --side / --cert");
            CutCertificate cert;
            if (!cv_side.empty()) {
                cert = make_cut(lg.graph, parse_int_list(cv_side, "side vertex"));
            } else {
                std::ifstream in(cv_cert);
                if (!in)
                    throw std::invalid_argument("cannot open certificate file '" + cv_cert + "'");
                cert = cut_from_json(ojson::parse(in));
            }
            bool ok = verify_odd_cut_certificate(lg.graph, m, cert);
            ojson cfg = base_config("cert-verify", rp);
            cfg["graph"] = lg.graph.label();
            cfg["matching"] = cv_matching;
            ojson j;
            j["config"] = cfg;
            j["verified"] = ok;
            j["crossing_size"] = cert.crossing.size();
            with_output(rp.output, [&](std::ostream& os) { os << dump_pretty(j, rp.canonical); });
            return ok ? 0 : 1;
        }

        if (vp->parsed()) {
            BatteryOptions bo;
            bo.workers = rp.workers;
            bo.node_budget = rp.node_budget;
            bo.time_budget_ms = rp.time_budget_ms;
            bo.inject_failure_id = vp_inject;
            if (!vp_items.empty()) {
                std::istringstream is(vp_items);
                std::string tok;
                while (std::getline(is, tok, ',')) bo.only_ids.push_back(tok);
            }
            ojson cfg = base_config("verify-paper", rp);
            if (!vp_items.empty()) cfg["items"] = vp_items;
            auto results = run_claim_battery(bo);
            int passed = 0, failed = 0, inconclusive = 0;
            with_output(rp.output, [&](std::ostream& os) {
                ojson head;
                head["config"] = cfg;
                os << dump_line(head, rp.canonical);
                for (const auto& r : results) {
                    os << dump_line(battery_result_to_json(r), rp.canonical);
                    switch (r.status) {
                        case BatteryStatus::Pass: ++passed; break;
                        case BatteryStatus::Fail: ++failed; break;
                        case BatteryStatus::Inconclusive: ++inconclusive; break;
                    }
                }
                ojson tail;
                tail["passed"] = passed;
                tail["failed"] = failed;
                tail["inconclusive"] = inconclusive;
                os << dump_line(tail, rp.canonical);
            });
            if (failed > 0) return 1;
            if (inconclusive > 0) return 3;
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CertificateError& e) {
        std::cerr << "certificate error: " << e.what() << "\n";
        return 2;
    } catch (const NoPerfectMatchingError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded&) {
        return 3;
    } catch (const CheckBudgetExceeded&) {
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // no subcommand matched (require_subcommand should prevent this)
}
