#pragma once

// Extension search.  Given a perfect matching or pairing M over V(g), decide
// whether there is a perfect matching N of g, disjoint from M, such that
// M ∪ N is a single Hamiltonian cycle.
//
// The solver contracts each M-pair to a supernode and grows N by backtracking:
// pivot on the lowest N-uncovered vertex, try its neighbors in ascending
// order.  A union-find over supernodes (union by size, undo trail, no path
// compression) rejects any edge that would close a cycle before all n/2
// supernodes are joined; since every accepted edge merges two components, the
// final edge always closes the full Hamiltonian cycle.  On top of that sit
// two optional, individually sound prune rules:
//   - cut parity: for a registered vertex cut S, a Hamiltonian cycle crosses
//     δ(S) an even number of times, so once every crossing edge is decided,
//     |M ∩ δ(S)| + |N ∩ δ(S)| must be even;
//   - forced edges: an uncovered vertex with no feasible partner kills the
//     branch, one with exactly one feasible partner forces that edge.
// Both rules only discard branches with no completions (forced edges belong
// to every completion below the branch point), so the search visits the same
// first witness in the same leaf order with any combination of rules enabled.

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "matching.hpp"

namespace pmh {

enum class ExtensionStatus { Extended, Refuted };
enum class ExtendMode { Pmh, Ph };

struct PruneCounts {
    std::uint64_t short_cycle = 0;
    std::uint64_t cut_parity = 0;
    std::uint64_t forced = 0;
    bool operator==(const PruneCounts&) const = default;
};

// A vertex cut S together with the crossing edge set δ(S) in the host graph.
struct CutCertificate {
    std::vector<int> side;
    std::vector<Edge> crossing;
};

struct CertificateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline std::vector<char> side_mask(const Graph& g, const std::vector<int>& side) {
    std::vector<char> in(g.vertex_count(), 0);
    if (side.empty())
        throw CertificateError("cut: empty side");
    for (int v : side) {
        if (v < 0 || v >= g.vertex_count())
            throw CertificateError("cut: vertex " + std::to_string(v) + " outside graph");
        if (in[v])
            throw CertificateError("cut: vertex " + std::to_string(v) + " listed twice");
        in[v] = 1;
    }
    if (static_cast<int>(side.size()) == g.vertex_count())
        throw CertificateError("cut: side is the whole vertex set");
    return in;
}

inline std::vector<Edge> crossing_edges(const Graph& g, const std::vector<char>& in) {
    std::vector<Edge> out;
    for (const auto& [u, v] : g.edges())
        if (in[u] != in[v]) out.push_back({u, v});
    return out;
}
}  // namespace detail

inline CutCertificate make_cut(const Graph& g, std::vector<int> side) {
    auto in = detail::side_mask(g, side);
    auto cross = detail::crossing_edges(g, in);
    std::sort(side.begin(), side.end());
    return CutCertificate{std::move(side), std::move(cross)};
}

// The single-column and single-level cuts of a p x q grid product, the cuts
// that matter for the cylinder and torus refutations.
inline std::vector<CutCertificate> grid_level_cuts(const Graph& g, int p, int q) {
    if (p < 1 || q < 1 || p * q != g.vertex_count())
        throw std::invalid_argument("grid_level_cuts: graph is not a " + std::to_string(p) + "x" +
                                    std::to_string(q) + " grid");
    std::vector<CutCertificate> cuts;
    for (int r = 1; r <= p; ++r) {
        std::vector<int> side;
        for (int s = 1; s <= q; ++s) side.push_back(grid_index(r, s, p, q));
        if (static_cast<int>(side.size()) < g.vertex_count()) cuts.push_back(make_cut(g, side));
    }
    for (int s = 1; s <= q; ++s) {
        std::vector<int> side;
        for (int r = 1; r <= p; ++r) side.push_back(grid_index(r, s, p, q));
        if (static_cast<int>(side.size()) < g.vertex_count()) cuts.push_back(make_cut(g, side));
    }
    return cuts;
}

struct BudgetExceeded : std::runtime_error {
    std::uint64_t nodes_explored;
    double elapsed_ms;
    BudgetExceeded(std::string msg, std::uint64_t nodes, double ms)
        : std::runtime_error(std::move(msg)), nodes_explored(nodes), elapsed_ms(ms) {}
};

struct ExtendOptions {
    bool prune_cut_parity = true;
    bool prune_forced = true;
    std::vector<CutCertificate> cuts;   // parity rule applies to these
    std::uint64_t node_budget = 0;      // 0 = unlimited
    double time_budget_ms = 0;          // 0 = unlimited
};

struct ExtensionOutcome {
    ExtensionStatus status = ExtensionStatus::Refuted;
    Matching witness;          // the matching N; empty when Refuted
    std::vector<int> cycle;    // M∪N walk from vertex 0, cycle[1] = M-partner of 0
    std::uint64_t nodes_explored = 0;
    PruneCounts prunes;
    double elapsed_ms = 0;
};

// Reusable solver: construct once per (graph, mode, options), then run many
// matchings through it without reallocating scratch.
class ExtensionSolver {
public:
    ExtensionSolver(const Graph& g, ExtendMode mode, ExtendOptions opts = {})
        : g_(&g), mode_(mode), opts_(std::move(opts)), n_(g.vertex_count()), half_(n_ / 2) {
        use_cuts_ = opts_.prune_cut_parity && !opts_.cuts.empty();
        adj_eids_.assign(n_, {});
        for (int v = 0; v < n_; ++v) {
            adj_eids_[v].reserve(g.neighbors(v).size());
            for (int w : g.neighbors(v)) adj_eids_[v].push_back(g.edge_index(v, w));
        }
        if (use_cuts_) {
            int nc = static_cast<int>(opts_.cuts.size());
            cut_in_.reserve(nc);
            edge_cuts_.assign(g.edge_count(), {});
            for (int c = 0; c < nc; ++c) {
                // recompute the crossing set: a stale certificate must not
                // silently weaken the parity rule
                auto in = detail::side_mask(g, opts_.cuts[c].side);
                auto cross = detail::crossing_edges(g, in);
                std::vector<Edge> given = opts_.cuts[c].crossing;
                for (auto& [u, v] : given)
                    if (u > v) std::swap(u, v);
                std::sort(given.begin(), given.end());
                if (given != cross)
                    throw CertificateError("cut " + std::to_string(c) +
                                           ": crossing set inconsistent with graph");
                for (const auto& [u, v] : cross) edge_cuts_[g.edge_index(u, v)].push_back(c);
                cut_in_.push_back(std::move(in));
            }
            cut_undecided_.assign(nc, 0);
            cut_used_.assign(nc, 0);
            estatus_.assign(g.edge_count(), 0);
        }
        mpartner_.assign(n_, -1);
        npartner_.assign(n_, -1);
        super_.assign(n_, -1);
        covered_.assign(n_, 0);
        fdeg_.assign(n_, 0);
        dsu_parent_.assign(half_ > 0 ? half_ : 1, 0);
        dsu_size_.assign(half_ > 0 ? half_ : 1, 1);
        placements_.reserve(half_ > 0 ? half_ : 1);
        dsu_trail_.reserve(half_ > 0 ? half_ : 1);
    }

    const Graph& graph() const { return *g_; }
    ExtendMode mode() const { return mode_; }

    // Status-only run; state for witness reconstruction stays valid until the
    // next call.  Throws BudgetExceeded when a budget trips.
    bool extends(std::span<const Edge> pairs) {
        start_ = Clock::now();
        if (!setup(pairs)) return false;
        if (opts_.prune_forced && !propagate()) return false;
        return search();
    }

    ExtensionOutcome extend(const Matching& m) {
        if (m.host_n != n_)
            throw std::invalid_argument("extend: matching host " + std::to_string(m.host_n) +
                                        " != graph order " + std::to_string(n_));
        auto t0 = Clock::now();
        ExtensionOutcome out;
        out.status = extends(std::span<const Edge>(m.pairs.data(), m.pairs.size()))
                         ? ExtensionStatus::Extended
                         : ExtensionStatus::Refuted;
        out.nodes_explored = nodes_;
        out.prunes = prunes_;
        if (out.status == ExtensionStatus::Extended) {
            std::vector<Edge> wit;
            wit.reserve(half_);
            for (int v = 0; v < n_; ++v)
                if (npartner_[v] > v) wit.push_back({v, npartner_[v]});
            out.witness = Matching(n_, std::move(wit));
            out.cycle = reconstruct_cycle();
        }
        out.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        return out;
    }

    std::uint64_t last_nodes() const { return nodes_; }
    const PruneCounts& last_prunes() const { return prunes_; }

private:
    using Clock = std::chrono::steady_clock;

    enum : std::uint8_t { UNDECIDED = 0, IN_N = 1, OUT_N = 2, INELIGIBLE = 3 };

    struct Placement {
        int v, w;
        bool did_union;
        std::uint32_t etrail_begin;
    };

    bool setup(std::span<const Edge> pairs) {
        if (static_cast<int>(pairs.size()) * 2 != n_)
            throw std::invalid_argument("extend: matching is not perfect (got " +
                                        std::to_string(pairs.size()) + " pairs over " +
                                        std::to_string(n_) + " vertices)");
        std::fill(mpartner_.begin(), mpartner_.end(), -1);
        std::fill(npartner_.begin(), npartner_.end(), -1);
        std::fill(covered_.begin(), covered_.end(), 0);
        for (int i = 0; i < half_; ++i) {
            auto [u, v] = pairs[i];
            if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
                throw std::invalid_argument("extend: malformed pair (" + std::to_string(u) + "," +
                                            std::to_string(v) + ")");
            if (mpartner_[u] != -1 || mpartner_[v] != -1)
                throw std::invalid_argument("extend: matching reuses a vertex");
            if (mode_ == ExtendMode::Pmh && !g_->has_edge(u, v))
                throw std::invalid_argument("extend: pair (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") is not an edge of " +
                                            g_->label());
            mpartner_[u] = v;
            mpartner_[v] = u;
            super_[u] = super_[v] = i;
            dsu_parent_[i] = i;
            dsu_size_[i] = 1;
        }
        placements_.clear();
        dsu_trail_.clear();
        estatus_trail_.clear();
        pending_.clear();
        prunes_ = {};
        nodes_ = 0;
        if (opts_.prune_forced) {
            for (int v = 0; v < n_; ++v) {
                int d = 0;
                for (int w : g_->neighbors(v))
                    if (w != mpartner_[v]) ++d;
                fdeg_[v] = d;
                if (d <= 1) pending_.push_back(v);
            }
        }
        if (use_cuts_) {
            std::fill(estatus_.begin(), estatus_.end(), UNDECIDED);
            for (int i = 0; i < half_; ++i) {
                auto [u, v] = pairs[i];
                int eid = g_->edge_index(u, v);
                if (eid >= 0) estatus_[eid] = INELIGIBLE;
            }
            int nc = static_cast<int>(cut_in_.size());
            std::fill(cut_undecided_.begin(), cut_undecided_.end(), 0);
            std::fill(cut_used_.begin(), cut_used_.end(), 0);
            for (int eid = 0; eid < g_->edge_count(); ++eid)
                if (estatus_[eid] == UNDECIDED)
                    for (int c : edge_cuts_[eid]) ++cut_undecided_[c];
            for (int i = 0; i < half_; ++i) {
                auto [u, v] = pairs[i];
                for (int c = 0; c < nc; ++c)
                    if (cut_in_[c][u] != cut_in_[c][v]) ++cut_used_[c];
            }
            for (int c = 0; c < nc; ++c)
                if (cut_undecided_[c] == 0 && (cut_used_[c] & 1)) {
                    ++prunes_.cut_parity;
                    return false;
                }
        }
        return true;
    }

    int dsu_find(int x) const {
        while (dsu_parent_[x] != x) x = dsu_parent_[x];
        return x;
    }

    // True if adding (v,w) would close a cycle before all supernodes join.
    bool closes_short_cycle(int v, int w) const {
        if (dsu_find(super_[v]) != dsu_find(super_[w])) return false;
        return static_cast<int>(placements_.size()) + 1 < half_;
    }

    // Commit (v,w) into N.  Always leaves a fully recorded placement (so undo
    // is uniform); returns false if a cut-parity violation surfaced.
    bool commit_place(int v, int w) {
        ++nodes_;
        if (opts_.node_budget && nodes_ > opts_.node_budget)
            throw BudgetExceeded("extend: node budget exceeded", nodes_, elapsed_ms());
        if (opts_.time_budget_ms > 0 && (nodes_ & 0xFFF) == 0 &&
            elapsed_ms() > opts_.time_budget_ms)
            throw BudgetExceeded("extend: time budget exceeded", nodes_, elapsed_ms());

        Placement pl{v, w, false, static_cast<std::uint32_t>(estatus_trail_.size())};
        int ra = dsu_find(super_[v]), rb = dsu_find(super_[w]);
        if (ra != rb) {
            if (dsu_size_[ra] < dsu_size_[rb]) std::swap(ra, rb);
            dsu_parent_[rb] = ra;
            dsu_size_[ra] += dsu_size_[rb];
            dsu_trail_.push_back({rb, ra});
            pl.did_union = true;
        }
        covered_[v] = 1;
        covered_[w] = 1;
        npartner_[v] = w;
        npartner_[w] = v;
        if (opts_.prune_forced) {
            for (int x : {v, w}) {
                const auto& nb = g_->neighbors(x);
                for (int y : nb) {
                    if (y == mpartner_[x]) continue;
                    if (--fdeg_[y] <= 1 && !covered_[y]) pending_.push_back(y);
                }
            }
        }
        bool parity_ok = true;
        if (use_cuts_) {
            for (int x : {v, w}) {
                const auto& nb = g_->neighbors(x);
                const auto& eids = adj_eids_[x];
                for (std::size_t k = 0; k < nb.size(); ++k) {
                    int eid = eids[k];
                    if (estatus_[eid] != UNDECIDED) continue;
                    int y = nb[k];
                    bool in_n = (x == v && y == w) || (x == w && y == v);
                    estatus_[eid] = in_n ? IN_N : OUT_N;
                    estatus_trail_.push_back(eid);
                    for (int c : edge_cuts_[eid]) {
                        if (in_n) ++cut_used_[c];
                        if (--cut_undecided_[c] == 0 && (cut_used_[c] & 1)) parity_ok = false;
                    }
                }
            }
            if (!parity_ok) ++prunes_.cut_parity;
        }
        placements_.push_back(pl);
        return parity_ok;
    }

    void undo_last() {
        Placement pl = placements_.back();
        placements_.pop_back();
        if (use_cuts_) {
            while (estatus_trail_.size() > pl.etrail_begin) {
                int eid = estatus_trail_.back();
                estatus_trail_.pop_back();
                bool was_in = estatus_[eid] == IN_N;
                estatus_[eid] = UNDECIDED;
                for (int c : edge_cuts_[eid]) {
                    ++cut_undecided_[c];
                    if (was_in) --cut_used_[c];
                }
            }
        }
        if (opts_.prune_forced) {
            for (int x : {pl.v, pl.w})
                for (int y : g_->neighbors(x))
                    if (y != mpartner_[x]) ++fdeg_[y];
        }
        covered_[pl.v] = 0;
        covered_[pl.w] = 0;
        npartner_[pl.v] = -1;
        npartner_[pl.w] = -1;
        if (pl.did_union) {
            auto [child, parent] = dsu_trail_.back();
            dsu_trail_.pop_back();
            dsu_size_[parent] -= dsu_size_[child];
            dsu_parent_[child] = child;
        }
    }

    void undo_to(std::size_t mark) {
        while (placements_.size() > mark) undo_last();
    }

    // Drain the forced-vertex worklist, placing implied edges.  False = dead
    // branch (caller unwinds via undo_to).
    bool propagate() {
        while (!pending_.empty()) {
            int y = pending_.back();
            pending_.pop_back();
            if (covered_[y]) continue;
            if (fdeg_[y] == 0) {
                ++prunes_.forced;
                return false;
            }
            if (fdeg_[y] != 1) continue;  // stale entry from an undone branch
            int z = -1;
            for (int w : g_->neighbors(y)) {
                if (covered_[w] || w == mpartner_[y]) continue;
                z = w;
                break;
            }
            if (z < 0) {  // fdeg said 1 but nothing feasible: treat as dead
                ++prunes_.forced;
                return false;
            }
            if (closes_short_cycle(y, z)) {
                ++prunes_.short_cycle;
                return false;
            }
            if (!commit_place(y, z)) return false;
        }
        return true;
    }

    bool search() {
        if (static_cast<int>(placements_.size()) == half_) return true;
        int v = 0;
        while (covered_[v]) ++v;
        const auto& nb = g_->neighbors(v);
        for (int w : nb) {
            if (covered_[w] || w == mpartner_[v]) continue;
            if (closes_short_cycle(v, w)) {
                ++prunes_.short_cycle;
                continue;
            }
            std::size_t mark = placements_.size();
            pending_.clear();
            bool ok = commit_place(v, w);
            if (ok && opts_.prune_forced) ok = propagate();
            if (ok && search()) return true;
            undo_to(mark);
        }
        return false;
    }

    std::vector<int> reconstruct_cycle() const {
        std::vector<int> cyc;
        cyc.reserve(n_);
        cyc.push_back(0);
        int cur = mpartner_[0];
        bool use_n = true;
        while (cur != 0) {
            cyc.push_back(cur);
            cur = use_n ? npartner_[cur] : mpartner_[cur];
            use_n = !use_n;
        }
        if (static_cast<int>(cyc.size()) != n_)
            throw std::logic_error("extend: reconstructed walk misses vertices");
        return cyc;
    }

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    }

    const Graph* g_;
    ExtendMode mode_;
    ExtendOptions opts_;
    int n_, half_;
    bool use_cuts_ = false;

    std::vector<std::vector<int>> adj_eids_;
    std::vector<std::vector<char>> cut_in_;
    std::vector<std::vector<int>> edge_cuts_;

    std::vector<int> mpartner_, npartner_, super_;
    std::vector<char> covered_;
    std::vector<int> fdeg_;
    std::vector<int> dsu_parent_, dsu_size_;
    std::vector<std::pair<int, int>> dsu_trail_;  // (child root, parent root)
    std::vector<Placement> placements_;
    std::vector<int> estatus_trail_;
    std::vector<std::uint8_t> estatus_;
    std::vector<int> cut_undecided_, cut_used_;
    std::vector<int> pending_;

    PruneCounts prunes_;
    std::uint64_t nodes_ = 0;
    Clock::time_point start_;
};

inline ExtensionOutcome extend_matching(const Graph& g, const Matching& m, ExtendMode mode,
                                        ExtendOptions opts = {}) {
    ExtensionSolver solver(g, mode, std::move(opts));
    return solver.extend(m);
}

// Does M ∪ N form one Hamiltonian cycle?  Both must be perfect over vcount.
inline bool is_hamiltonian_union(const Matching& m, const Matching& n, int vcount) {
    if (m.host_n != vcount || n.host_n != vcount)
        throw std::invalid_argument("is_hamiltonian_union: host size mismatch");
    if (!is_perfect(m) || !is_perfect(n))
        throw std::invalid_argument("is_hamiltonian_union: inputs must be perfect matchings");
    if (vcount == 0) return false;
    std::vector<int> mp(vcount), np(vcount);
    for (const auto& [u, v] : m.pairs) {
        mp[u] = v;
        mp[v] = u;
    }
    for (const auto& [u, v] : n.pairs) {
        if (mp[u] == v) return false;  // shared pair: union is not 2-regular
        np[u] = v;
        np[v] = u;
    }
    int cur = mp[0], walked = 1;
    bool use_n = true;
    while (cur != 0) {
        cur = use_n ? np[cur] : mp[cur];
        use_n = !use_n;
        ++walked;
    }
    return walked == vcount;
}

// Check an odd-cut non-extendability certificate: δ(side) must be odd-sized
// and lie entirely inside m.  Any inconsistency between the certificate and
// the graph is an error, not a "no".
inline bool verify_odd_cut_certificate(const Graph& g, const Matching& m,
                                       const CutCertificate& cert) {
    if (m.host_n != g.vertex_count() || !is_perfect(m))
        throw std::invalid_argument("verify_odd_cut_certificate: need a perfect matching over V");
    auto in = detail::side_mask(g, cert.side);
    auto cross = detail::crossing_edges(g, in);
    std::vector<Edge> given = cert.crossing;
    for (auto& [u, v] : given)
        if (u > v) std::swap(u, v);
    std::sort(given.begin(), given.end());
    if (given != cross)
        throw CertificateError("verify_odd_cut_certificate: crossing set inconsistent with graph");
    if (cross.empty() || cross.size() % 2 == 0) return false;
    for (const auto& e : cross)
        if (!std::binary_search(m.pairs.begin(), m.pairs.end(), e)) return false;
    return true;
}

// Independent oracle route: enumerate every disjoint perfect matching N of
// g − M and keep those whose union with M is one Hamiltonian cycle.  Shares
// nothing with ExtensionSolver beyond the matching enumerator.
template <class Visitor>
bool for_each_extension(const Graph& g, const Matching& m, ExtendMode mode, Visitor&& visit) {
    if (m.host_n != g.vertex_count())
        throw std::invalid_argument("for_each_extension: host size mismatch");
    if (!is_perfect(m))
        throw std::invalid_argument("for_each_extension: matching is not perfect");
    if (mode == ExtendMode::Pmh)
        for (const auto& [u, v] : m.pairs)
            if (!g.has_edge(u, v))
                throw std::invalid_argument("for_each_extension: pair (" + std::to_string(u) +
                                            "," + std::to_string(v) + ") is not an edge");
    std::vector<Edge> rest;
    for (const auto& e : g.edges())
        if (!std::binary_search(m.pairs.begin(), m.pairs.end(), e)) rest.push_back(e);
    Graph reduced(g.vertex_count(), std::move(rest));
    std::uint64_t found = 0;
    return for_each_perfect_matching(reduced, [&](std::span<const Edge> pairs, std::uint64_t) {
        Matching n(g.vertex_count(), std::vector<Edge>(pairs.begin(), pairs.end()));
        if (!is_hamiltonian_union(m, n, g.vertex_count())) return true;
        return visit(n, found++);
    });
}

inline std::vector<Matching> enumerate_extensions(const Graph& g, const Matching& m,
                                                  ExtendMode mode) {
    std::vector<Matching> out;
    for_each_extension(g, m, mode, [&](const Matching& n, std::uint64_t) {
        out.push_back(n);
        return true;
    });
    return out;
}

}  // namespace pmh
