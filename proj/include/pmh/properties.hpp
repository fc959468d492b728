#pragma once

// Property checkers: quantify the extension search over every perfect
// matching (PMH) or every pairing (PH) of a graph.
//
// Parallel evaluation shards the enumeration stream by ordinal (worker k owns
// ordinals ≡ k mod W).  Each worker records the first failure and the first
// budget trip in its own shard; a deterministic merge then takes the minimum
// failing ordinal, so the reported counterexample is independent of worker
// count and scheduling.  A budget trip only matters if it happened below the
// smallest known failure — everything above it is irrelevant to the verdict.

#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "extend.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "matching.hpp"

namespace pmh {

enum class GraphProperty { Pmh, Ph };
enum class PropertyVerdict { Holds, Fails, Vacuous };

struct SymmetryInfo {
    bool used = false;
    std::vector<int> anchor_orbit_reps;  // essential partners of vertex 0
    std::uint64_t automorphisms = 0;
};

struct PropertyReport {
    std::string graph_label;
    GraphProperty property = GraphProperty::Pmh;
    PropertyVerdict verdict = PropertyVerdict::Vacuous;
    std::optional<Matching> counterexample;
    std::uint64_t counterexample_ordinal = 0;  // meaningful when verdict == Fails
    std::uint64_t total_checked = 0;
    double elapsed_ms = 0;
    int shards_used = 1;
    SymmetryInfo symmetry;
};

struct CheckOptions {
    int workers = 1;
    std::uint64_t node_budget = 0;  // per extension search; 0 = unlimited
    double time_budget_ms = 0;      // per extension search; 0 = unlimited
    bool symmetry_reduction = false;
    std::vector<CutCertificate> cuts;
    bool prune_cut_parity = true;
    bool prune_forced = true;
};

// A budget tripped before the verdict was settled.  Ordinals below
// verified_prefix are all confirmed extendable.
struct CheckBudgetExceeded : std::runtime_error {
    std::string graph_label;
    GraphProperty property;
    std::uint64_t verified_prefix;
    CheckBudgetExceeded(std::string label, GraphProperty prop, std::uint64_t prefix)
        : std::runtime_error("property check on " + label + " exceeded its budget at ordinal " +
                             std::to_string(prefix)),
          graph_label(std::move(label)),
          property(prop),
          verified_prefix(prefix) {}
};

namespace detail {

constexpr std::uint64_t kNoOrdinal = ~std::uint64_t{0};

struct ShardOutcome {
    std::uint64_t first_fail = kNoOrdinal;
    std::vector<Edge> fail_pairs;
    std::uint64_t first_budget = kNoOrdinal;
    std::uint64_t processed = 0;
    std::exception_ptr error;
};

// EnumerateFn must stream (span<const Edge>, ordinal) deterministically and
// be safe to call from several threads at once (each call owns its state).
template <class EnumerateFn>
PropertyReport run_quantified_check(const Graph& g, GraphProperty prop, const CheckOptions& opt,
                                    EnumerateFn&& enumerate, SymmetryInfo sym) {
    auto t0 = std::chrono::steady_clock::now();
    int workers = opt.workers < 1 ? 1 : opt.workers;
    ExtendMode mode = prop == GraphProperty::Pmh ? ExtendMode::Pmh : ExtendMode::Ph;
    ExtendOptions sopts;
    sopts.prune_cut_parity = opt.prune_cut_parity;
    sopts.prune_forced = opt.prune_forced;
    sopts.cuts = opt.cuts;
    sopts.node_budget = opt.node_budget;
    sopts.time_budget_ms = opt.time_budget_ms;

    std::atomic<std::uint64_t> best_fail{kNoOrdinal};
    std::vector<ShardOutcome> shards(workers);

    auto work = [&](int k) {
        ShardOutcome& rec = shards[k];
        try {
            ExtensionSolver solver(g, mode, sopts);
            enumerate([&](std::span<const Edge> pairs, std::uint64_t ord) -> bool {
                if (ord % static_cast<std::uint64_t>(workers) != static_cast<std::uint64_t>(k))
                    return true;
                if (ord > best_fail.load(std::memory_order_relaxed))
                    return false;  // another shard already failed lower
                try {
                    bool ok = solver.extends(pairs);
                    ++rec.processed;
                    if (!ok) {
                        rec.first_fail = ord;
                        rec.fail_pairs.assign(pairs.begin(), pairs.end());
                        std::uint64_t cur = best_fail.load(std::memory_order_relaxed);
                        while (ord < cur &&
                               !best_fail.compare_exchange_weak(cur, ord, std::memory_order_relaxed)) {
                        }
                        return false;  // ordinals only grow within a shard
                    }
                } catch (const BudgetExceeded&) {
                    rec.first_budget = ord;
                    return false;  // can't certify this ordinal; higher ones can't help
                }
                return true;
            });
        } catch (...) {
            rec.error = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int k = 0; k < workers; ++k) pool.emplace_back(work, k);
        for (auto& t : pool) t.join();
    }
    for (auto& rec : shards)
        if (rec.error) std::rethrow_exception(rec.error);

    std::uint64_t f = kNoOrdinal, b = kNoOrdinal, total = 0;
    const ShardOutcome* failing = nullptr;
    for (const auto& rec : shards) {
        total += rec.processed;
        if (rec.first_fail < f) {
            f = rec.first_fail;
            failing = &rec;
        }
        if (rec.first_budget < b) b = rec.first_budget;
    }
    if (b < f) throw CheckBudgetExceeded(g.label(), prop, b);

    PropertyReport rep;
    rep.graph_label = g.label();
    rep.property = prop;
    rep.shards_used = workers;
    rep.symmetry = std::move(sym);
    if (f == kNoOrdinal) {
        rep.verdict = PropertyVerdict::Holds;
        rep.total_checked = total;
    } else {
        rep.verdict = PropertyVerdict::Fails;
        rep.total_checked = f + 1;  // ordinals 0..f-1 verified, f refuted
        rep.counterexample_ordinal = f;
        Matching cex(g.vertex_count(),
                     std::vector<Edge>(failing->fail_pairs.begin(), failing->fail_pairs.end()));
        // the report's core invariant: the counterexample really is refuted
        ExtensionSolver recheck(g, mode, sopts);
        if (recheck.extends(std::span<const Edge>(cex.pairs.data(), cex.pairs.size())))
            throw std::logic_error("property check: counterexample failed re-verification");
        rep.counterexample = std::move(cex);
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace detail

// Does every perfect matching of g extend to a Hamiltonian cycle?
inline PropertyReport check_pmh(const Graph& g, const CheckOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    bool any = false;
    for_each_perfect_matching(g, [&](std::span<const Edge>, std::uint64_t) {
        any = true;
        return false;
    });
    if (!any) {
        PropertyReport rep;
        rep.graph_label = g.label();
        rep.property = GraphProperty::Pmh;
        rep.verdict = PropertyVerdict::Vacuous;
        rep.shards_used = opt.workers < 1 ? 1 : opt.workers;
        rep.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return rep;
    }
    auto enumerate = [&g](auto&& vis) { for_each_perfect_matching(g, vis); };
    return detail::run_quantified_check(g, GraphProperty::Pmh, opt, enumerate, SymmetryInfo{});
}

// Does every pairing of V(g) extend inside g?  With symmetry_reduction, one
// pair is fixed to (0, r) for each stabilizer-orbit representative r — sound
// because some automorphism fixing 0 maps any pairing onto one of that shape.
// Vertex-transitivity is checked rather than assumed.
inline PropertyReport check_ph(const Graph& g, const CheckOptions& opt = {}) {
    int n = g.vertex_count();
    if (n % 2 != 0)
        throw std::invalid_argument("check_ph: " + g.label() + " has odd order " +
                                    std::to_string(n));
    if (!opt.symmetry_reduction) {
        auto enumerate = [n](auto&& vis) { for_each_pairing(n, vis); };
        return detail::run_quantified_check(g, GraphProperty::Ph, opt, enumerate, SymmetryInfo{});
    }

    auto auts = enumerate_automorphisms(g);
    std::vector<char> orbit0(n, 0);
    for (const auto& aut : auts) orbit0[aut[0]] = 1;
    for (int v = 0; v < n; ++v)
        if (!orbit0[v])
            throw std::invalid_argument("check_ph: symmetry reduction needs a vertex-transitive "
                                        "graph; " +
                                        g.label() + " is not");
    std::vector<int> root(n);
    for (int v = 0; v < n; ++v) root[v] = v;
    auto find = [&root](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& aut : auts) {
        if (aut[0] != 0) continue;
        for (int v = 1; v < n; ++v) {
            int a = find(v), bb = find(aut[v]);
            if (a != bb) root[std::max(a, bb)] = std::min(a, bb);
        }
    }
    std::vector<int> reps;
    for (int v = 1; v < n; ++v)
        if (find(v) == v) reps.push_back(v);

    SymmetryInfo sym;
    sym.used = true;
    sym.anchor_orbit_reps = reps;
    sym.automorphisms = auts.size();

    std::uint64_t block = pairing_count(n - 2);
    auto enumerate = [&g, reps, n, block](auto&& vis) {
        for (std::size_t ri = 0; ri < reps.size(); ++ri) {
            std::vector<int> rest;
            rest.reserve(n - 2);
            for (int v = 1; v < n; ++v)
                if (v != reps[ri]) rest.push_back(v);
            bool cont = for_each_pairing_of(
                rest, {make_edge(0, reps[ri])},
                [&](std::span<const Edge> pairs, std::uint64_t sub) {
                    return vis(pairs, static_cast<std::uint64_t>(ri) * block + sub);
                });
            if (!cont) return;
        }
    };
    return detail::run_quantified_check(g, GraphProperty::Ph, opt, enumerate, std::move(sym));
}

}  // namespace pmh
