// Release gates.  Each criterion prints exactly one [PASS]/[FAIL] line; the
// process exits nonzero if any gate fails.  Pass criterion numbers as
// arguments to run a subset (default: all).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pmh/counterexample.hpp"
#include "pmh/extend.hpp"
#include "pmh/graph.hpp"
#include "pmh/io.hpp"
#include "pmh/isomorphism.hpp"
#include "pmh/matching.hpp"
#include "pmh/properties.hpp"
#include "support.hpp"

using namespace pmh;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string fmt_pairs(const std::vector<Edge>& pairs) {
    return matching_to_line(Matching(0x7fffffff, pairs));
}

ExtendOptions grid_options(const Graph& g, int p, int q) {
    ExtendOptions o;
    o.cuts = grid_level_cuts(g, p, q);
    return o;
}

CheckOptions check_options(int workers, std::vector<CutCertificate> cuts = {},
                           bool symmetry = false) {
    CheckOptions o;
    o.workers = workers;
    o.cuts = std::move(cuts);
    o.symmetry_reduction = symmetry;
    return o;
}

// ---- criterion bodies ---------------------------------------------------

void criterion_1() {
    struct Row {
        Graph g;
        std::uint64_t pairings;
    };
    const std::vector<Row> rows = {{build_complete(4), 3},
                                   {build_complete_bipartite(3, 3), 15},
                                   {build_hypercube(3), 105}};
    for (const auto& row : rows) {
        PropertyReport rep = check_ph(row.g);
        require(rep.verdict == PropertyVerdict::Holds,
                row.g.label() + ": expected holds, got " + to_string(rep.verdict));
        require(rep.total_checked == row.pairings,
                row.g.label() + ": expected " + std::to_string(row.pairings) +
                    " pairings, checked " + std::to_string(rep.total_checked));
    }
}

void criterion_2() {
    Graph g = build_torus(4, 4);
    PropertyReport full = check_ph(g);
    require(full.verdict == PropertyVerdict::Holds, "C4xC4: expected holds");
    require(full.total_checked == 2027025,
            "C4xC4: expected 2027025 pairings, checked " + std::to_string(full.total_checked));

    PropertyReport reduced = check_ph(g, check_options(1, {}, true));
    require(reduced.verdict == PropertyVerdict::Holds, "C4xC4 (symmetry): expected holds");
    require(reduced.symmetry.used, "C4xC4 (symmetry): reduction was not applied");

    Graph q4 = build_hypercube(4);
    auto iso = find_isomorphism(g, q4);
    require(iso.has_value(), "no isomorphism C4xC4 -> Q4 found");
    require(is_isomorphism(g, q4, *iso), "returned C4xC4 -> Q4 map is not an isomorphism");
}

void criterion_3() {
    const std::vector<std::pair<int, int>> shapes = {{3, 4}, {4, 3}, {4, 4},
                                                     {6, 3}, {3, 6}, {6, 4}};
    for (auto [p, q] : shapes) {
        Graph g = build_cylinder(p, q);
        Matching m = cylinder_matching(p, q).matching;
        ExtensionOutcome out = extend_matching(g, m, ExtendMode::Pmh, grid_options(g, p, q));
        require(out.status == ExtensionStatus::Refuted,
                g.label() + ": cylinder matching unexpectedly extended");
    }
}

void criterion_4() {
    for (int p : {6, 8}) {
        Graph g = build_torus(p, 3);
        ExtensionOutcome out =
            extend_matching(g, torus_q3_matching(p), ExtendMode::Pmh, grid_options(g, p, 3));
        require(out.status == ExtensionStatus::Refuted,
                g.label() + ": q=3 matching unexpectedly extended");
    }
    Graph g6 = build_torus(6, 3);
    auto all = enumerate_extensions(g6, torus_q3_matching(6), ExtendMode::Pmh);
    require(all.empty(), "oracle found " + std::to_string(all.size()) +
                             " extensions of the q=3 matching on C6xC3");
}

void criterion_5() {
    const std::vector<std::pair<int, int>> shapes = {{6, 5}, {6, 6}, {6, 7}, {8, 5}};
    for (auto [p, q] : shapes) {
        Graph g = build_torus(p, q);
        ExtensionOutcome out = extend_matching(g, torus_general_matching(p, q),
                                               ExtendMode::Pmh, grid_options(g, p, q));
        require(out.status == ExtensionStatus::Refuted,
                g.label() + ": general matching unexpectedly extended");
    }
}

void criterion_6() {
    const std::vector<std::pair<int, int>> shapes = {{3, 4}, {4, 3}, {6, 3}, {4, 5}};
    for (auto [p, q] : shapes) {
        Graph g = build_torus(p, q);
        PropertyReport rep = check_pmh(g, check_options(1, grid_level_cuts(g, p, q)));
        require(rep.verdict == PropertyVerdict::Fails, g.label() + ": expected fails");
        require(rep.counterexample.has_value(), g.label() + ": no counterexample reported");
        auto oracle = enumerate_extensions(g, *rep.counterexample, ExtendMode::Pmh);
        require(oracle.empty(), g.label() + ": oracle extended the reported counterexample " +
                                    fmt_pairs(rep.counterexample->pairs));
    }
}

void criterion_7() {
    std::vector<Graph> corpus = pmh::test::small_corpus();
    corpus.push_back(build_cycle(14));
    corpus.push_back(build_cylinder(7, 2));
    std::uint64_t compared = 0;
    for (const Graph& g : corpus) {
        if (g.vertex_count() > 14) continue;
        std::string disagree;
        for_each_perfect_matching(g, [&](std::span<const Edge> pairs, std::uint64_t) {
            Matching m(g.vertex_count(), std::vector<Edge>(pairs.begin(), pairs.end()));
            bool solver = extend_matching(g, m, ExtendMode::Pmh).status ==
                          ExtensionStatus::Extended;
            bool oracle = !enumerate_extensions(g, m, ExtendMode::Pmh).empty();
            ++compared;
            if (solver != oracle) {
                disagree = g.label() + ": solver and oracle disagree on " + fmt_pairs(m.pairs);
                return false;
            }
            return true;
        });
        require(disagree.empty(), disagree);
    }
    require(compared > 0, "corpus produced no perfect matchings");
}

void criterion_8() {
    Graph prism = cartesian_product(build_cycle(3), build_path(2));
    Matching rungs(6, {{0, 3}, {1, 4}, {2, 5}});
    require(verify_odd_cut_certificate(prism, rungs, make_cut(prism, {3, 4, 5})),
            "prism rung certificate did not verify");
    require(extend_matching(prism, rungs, ExtendMode::Pmh).status == ExtensionStatus::Refuted,
            "certified prism instance was not refuted by search");

    Graph cyl = build_cylinder(3, 4);
    Matching m = cylinder_matching(3, 4).matching;
    require(verify_odd_cut_certificate(cyl, m, make_cut(cyl, {9, 10, 11})),
            "cylinder last-level certificate did not verify");
    require(extend_matching(cyl, m, ExtendMode::Pmh, grid_options(cyl, 3, 4)).status ==
                ExtensionStatus::Refuted,
            "certified cylinder instance was not refuted by search");
}

void criterion_9() {
    constexpr int kSamples = 1000;
    std::mt19937 rng(271828);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{6, 5}, {6, 6}}) {
        Graph g = build_torus(p, q);
        Matching cross = torus_cross_pairs(p, q);
        // the marked vertical rows flanking the fixed cross pairs
        std::vector<Edge> left, right;
        for (int i = 1; i <= p; ++i) {
            left.push_back(make_edge(grid_index(i, 2, p, q), grid_index(i, 3, p, q)));
            right.push_back(make_edge(grid_index(i, 4, p, q), grid_index(i, 5, p, q)));
        }
        auto overlap = [](const std::vector<Edge>& row, const Matching& n) {
            int c = 0;
            for (const Edge& e : row)
                if (std::binary_search(n.pairs.begin(), n.pairs.end(), e)) ++c;
            return c;
        };
        ExtendOptions base = grid_options(g, p, q);
        int extended = 0, attempts = 0;
        while (extended < kSamples) {
            ++attempts;
            require(attempts <= 40 * kSamples,
                    g.label() + ": too few extendable samples after " +
                        std::to_string(attempts) + " attempts");
            auto m = pmh::test::random_completion(g, cross.pairs, rng);
            require(m.has_value(), g.label() + ": cross pairs admit no completion");
            ExtendOptions opts = base;
            ExtensionOutcome out = extend_matching(g, *m, ExtendMode::Pmh, std::move(opts));
            if (out.status != ExtensionStatus::Extended) continue;
            ++extended;
            int l = overlap(left, out.witness), r = overlap(right, out.witness);
            require(l % 2 == 0 && r % 2 == 0,
                    g.label() + ": witness meets marked rows " + std::to_string(l) + "/" +
                        std::to_string(r) + " times for " + fmt_pairs(m->pairs));
        }
    }
}

void criterion_10() {
    auto one_run = [](int workers) {
        ojson arr = ojson::array();
        for (const Graph& g :
             {build_complete(4), build_complete_bipartite(3, 3), build_hypercube(3)})
            arr.push_back(report_to_json(check_ph(g, check_options(workers))));
        arr.push_back(
            report_to_json(check_ph(build_torus(4, 4), check_options(workers, {}, true))));
        const std::vector<std::pair<int, int>> cyl = {{3, 4}, {4, 3}, {4, 4},
                                                      {6, 3}, {3, 6}, {6, 4}};
        for (auto [p, q] : cyl) {
            Graph g = build_cylinder(p, q);
            arr.push_back(outcome_to_json(extend_matching(
                g, cylinder_matching(p, q).matching, ExtendMode::Pmh, grid_options(g, p, q))));
        }
        for (int p : {6, 8}) {
            Graph g = build_torus(p, 3);
            arr.push_back(outcome_to_json(
                extend_matching(g, torus_q3_matching(p), ExtendMode::Pmh, grid_options(g, p, 3))));
        }
        const std::vector<std::pair<int, int>> gen = {{6, 5}, {6, 6}, {6, 7}, {8, 5}};
        for (auto [p, q] : gen) {
            Graph g = build_torus(p, q);
            arr.push_back(outcome_to_json(extend_matching(
                g, torus_general_matching(p, q), ExtendMode::Pmh, grid_options(g, p, q))));
        }
        const std::vector<std::pair<int, int>> tori = {{3, 4}, {4, 3}, {6, 3}, {4, 5}};
        for (auto [p, q] : tori) {
            Graph g = build_torus(p, q);
            arr.push_back(
                report_to_json(check_pmh(g, check_options(workers, grid_level_cuts(g, p, q)))));
        }
        canonicalize_json(arr);
        return arr.dump();
    };
    std::string baseline = one_run(1);
    for (int workers : {1, 2, 8}) {
        std::string again = one_run(workers);
        require(again == baseline,
                "reports differ between 1 worker and " + std::to_string(workers) +
                    " workers after canonicalization");
    }
}

struct Gate {
    int id;
    std::string what;
    std::function<void()> body;
};

const std::vector<Gate> kGates = {
    {1, "cubic PH classics hold (K4: 3, K3,3: 15, Q3: 105 pairings)", criterion_1},
    {2, "C4xC4 keeps PH over 2,027,025 pairings and is isomorphic to Q4", criterion_2},
    {3, "cylinder matchings admit no Hamiltonian extension (6 shapes)", criterion_3},
    {4, "q=3 torus matchings are refuted (p=6,8) and the oracle agrees at p=6", criterion_4},
    {5, "general torus matchings are refuted (C6xC5, C6xC6, C6xC7, C8xC5)", criterion_5},
    {6, "PMH fails on C3xC4, C4xC3, C6xC3, C4xC5 with oracle-confirmed counterexamples",
     criterion_6},
    {7, "solver matches the exhaustive oracle on every corpus perfect matching", criterion_7},
    {8, "odd-cut certificates verify and certified instances are refuted by search", criterion_8},
    {9, "witnesses meet both marked vertical rows evenly (1000 samples on C6xC5 and C6xC6)",
     criterion_9},
    {10, "canonicalized reports are byte-identical across runs and workers 1/2/8", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& gate : kGates) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), gate.id) == wanted.end())
            continue;
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "[PASS]", detail;
        try {
            gate.body();
        } catch (const std::exception& e) {
            verdict = "[FAIL]";
            detail = std::string(": ") + e.what();
            ++failures;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        std::ostringstream line;
        line << verdict << " criterion " << gate.id << " — " << gate.what << detail << " ("
             << std::fixed << std::setprecision(1) << secs << "s)";
        std::cout << line.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
