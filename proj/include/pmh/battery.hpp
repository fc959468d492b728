#pragma once

// The fixed verification battery: one item per published claim about these
// graph families, each with a hard expectation.  Items never "pass by
// timeout" — a budget trip marks the item inconclusive.
//
//   1. PH holds for K4, K3,3, Q3 and C4xC4 (with the known pairing counts);
//   2. the cylinder matchings are refuted for the small (p,q) grid;
//   3. the torus matchings (q=3 and general-q families) are refuted;
//   4. exhaustive PMH fails for the smallest tori off the 4x4 case;
//   5. C4xC4 is isomorphic to the 4-dimensional hypercube.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "counterexample.hpp"
#include "extend.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "matching.hpp"
#include "properties.hpp"

namespace pmh {

enum class BatteryStatus { Pass, Fail, Inconclusive };

struct BatteryResult {
    std::string id;
    std::string description;
    std::string expected;
    std::string observed;
    BatteryStatus status = BatteryStatus::Fail;
    double elapsed_ms = 0;
};

struct BatteryOptions {
    int workers = 1;
    std::uint64_t node_budget = 0;
    double time_budget_ms = 0;
    std::vector<std::string> only_ids;  // empty = run everything
    std::string inject_failure_id;      // test hook: force a mismatch on this item
};

namespace detail {

struct BatteryItem {
    std::string id;
    std::string description;
    std::string expected;
    std::function<std::string(const BatteryOptions&)> run;  // returns observed
};

inline std::string ph_observed(const Graph& g, const BatteryOptions& opt) {
    CheckOptions co;
    co.workers = opt.workers;
    co.node_budget = opt.node_budget;
    co.time_budget_ms = opt.time_budget_ms;
    PropertyReport rep = check_ph(g, co);
    if (rep.verdict == PropertyVerdict::Holds)
        return "holds/" + std::to_string(rep.total_checked);
    return "fails/" + std::to_string(rep.counterexample_ordinal);
}

inline std::string pmh_observed(const Graph& g, int p, int q, const BatteryOptions& opt) {
    CheckOptions co;
    co.workers = opt.workers;
    co.node_budget = opt.node_budget;
    co.time_budget_ms = opt.time_budget_ms;
    co.cuts = grid_level_cuts(g, p, q);
    PropertyReport rep = check_pmh(g, co);
    switch (rep.verdict) {
        case PropertyVerdict::Holds: return "holds/" + std::to_string(rep.total_checked);
        case PropertyVerdict::Fails: return "fails";
        default: return "vacuous";
    }
}

inline std::string refute_observed(const Graph& g, const Matching& m, int p, int q,
                                   const BatteryOptions& opt) {
    ExtendOptions eo;
    eo.cuts = grid_level_cuts(g, p, q);
    eo.node_budget = opt.node_budget;
    eo.time_budget_ms = opt.time_budget_ms;
    ExtensionOutcome out = extend_matching(g, m, ExtendMode::Pmh, std::move(eo));
    return out.status == ExtensionStatus::Refuted ? "Refuted" : "Extended";
}

inline std::vector<BatteryItem> battery_items() {
    std::vector<BatteryItem> items;
    auto add = [&](std::string id, std::string desc, std::string expected, auto fn) {
        items.push_back({std::move(id), std::move(desc), std::move(expected), std::move(fn)});
    };

    add("ph-K4", "PH property of K4", "holds/3",
        [](const BatteryOptions& o) { return ph_observed(build_complete(4), o); });
    add("ph-K33", "PH property of K3,3", "holds/15",
        [](const BatteryOptions& o) { return ph_observed(build_complete_bipartite(3, 3), o); });
    add("ph-Q3", "PH property of the 3-cube", "holds/105",
        [](const BatteryOptions& o) { return ph_observed(build_hypercube(3), o); });
    add("ph-C4xC4", "PH property of C4xC4", "holds/2027025",
        [](const BatteryOptions& o) { return ph_observed(build_torus(4, 4), o); });

    for (auto [p, q] : {std::pair{3, 4}, {4, 3}, {4, 4}, {6, 3}, {3, 6}, {6, 4}}) {
        add("cylinder-" + std::to_string(p) + "x" + std::to_string(q),
            "cylinder matching of C" + std::to_string(p) + "xP" + std::to_string(q) +
                " is non-extendable",
            "Refuted", [p = p, q = q](const BatteryOptions& o) {
                return refute_observed(build_cylinder(p, q), cylinder_matching(p, q).matching, p,
                                       q, o);
            });
    }

    for (int p : {6, 8}) {
        add("torus-q3-" + std::to_string(p),
            "nine-edge matching of C" + std::to_string(p) + "xC3 is non-extendable", "Refuted",
            [p = p](const BatteryOptions& o) {
                return refute_observed(build_torus(p, 3), torus_q3_matching(p), p, 3, o);
            });
    }
    for (auto [p, q] : {std::pair{6, 5}, {6, 6}, {6, 7}, {8, 5}}) {
        add("torus-general-" + std::to_string(p) + "x" + std::to_string(q),
            "three-family matching of C" + std::to_string(p) + "xC" + std::to_string(q) +
                " is non-extendable",
            "Refuted", [p = p, q = q](const BatteryOptions& o) {
                return refute_observed(build_torus(p, q), torus_general_matching(p, q), p, q, o);
            });
    }

    for (auto [p, q] : {std::pair{3, 4}, {4, 3}, {4, 5}, {6, 3}}) {
        add("pmh-C" + std::to_string(p) + "xC" + std::to_string(q),
            "exhaustive PMH check of C" + std::to_string(p) + "xC" + std::to_string(q), "fails",
            [p = p, q = q](const BatteryOptions& o) {
                return pmh_observed(build_torus(p, q), p, q, o);
            });
    }

    add("iso-C4xC4-Q4", "C4xC4 is the 4-dimensional hypercube", "isomorphic",
        [](const BatteryOptions&) -> std::string {
            Graph a = build_torus(4, 4), b = build_hypercube(4);
            auto map = find_isomorphism(a, b);
            if (!map || !is_isomorphism(a, b, *map)) return "no-isomorphism";
            return "isomorphic";
        });
    return items;
}

}  // namespace detail

inline std::vector<BatteryResult> run_claim_battery(const BatteryOptions& opt = {}) {
    std::vector<BatteryResult> results;
    for (auto& item : detail::battery_items()) {
        if (!opt.only_ids.empty()) {
            bool wanted = false;
            for (const auto& id : opt.only_ids)
                if (id == item.id) wanted = true;
            if (!wanted) continue;
        }
        BatteryResult res;
        res.id = item.id;
        res.description = item.description;
        res.expected = item.id == opt.inject_failure_id ? "<injected-mismatch>" : item.expected;
        auto t0 = std::chrono::steady_clock::now();
        try {
            res.observed = item.run(opt);
            res.status = res.observed == res.expected ? BatteryStatus::Pass : BatteryStatus::Fail;
        } catch (const BudgetExceeded&) {
            res.observed = "inconclusive/budget";
            res.status = BatteryStatus::Inconclusive;
        } catch (const CheckBudgetExceeded&) {
            res.observed = "inconclusive/budget";
            res.status = BatteryStatus::Inconclusive;
        }
        res.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace pmh
