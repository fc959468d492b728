#pragma once

// Matchings and pairings.  A Matching is a set of normalized vertex pairs over
// a host vertex set 0..host_n-1; a pairing is the same thing without the
// requirement that pairs be edges of any graph (i.e. a perfect matching of the
// complete graph on the host set).
//
// The enumerators stream pairs in a fixed deterministic order: always extend
// the lowest uncovered vertex, trying partners in ascending order.  Each
// emitted matching carries its 0-based ordinal in that order, which is what
// sharding and all "first counterexample" semantics are defined against.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace pmh {

struct Matching {
    int host_n = 0;
    std::vector<Edge> pairs;  // normalized (u < v), sorted ascending

    Matching() = default;
    Matching(int n, std::vector<Edge> p) : host_n(n), pairs(std::move(p)) {
        for (auto& [u, v] : pairs) {
            if (u > v) std::swap(u, v);
            if (u == v)
                throw std::invalid_argument("Matching: pair with equal endpoints " +
                                            std::to_string(u));
            if (u < 0 || v >= host_n)
                throw std::invalid_argument("Matching: pair (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") outside host 0.." +
                                            std::to_string(host_n - 1));
        }
        std::sort(pairs.begin(), pairs.end());
    }

    bool operator==(const Matching& o) const { return host_n == o.host_n && pairs == o.pairs; }
    std::size_t size() const { return pairs.size(); }
};

inline bool is_vertex_disjoint(const Matching& m) {
    std::vector<char> seen(m.host_n, 0);
    for (const auto& [u, v] : m.pairs) {
        if (seen[u] || seen[v]) return false;
        seen[u] = seen[v] = 1;
    }
    return true;
}

inline bool is_perfect(const Matching& m) {
    return is_vertex_disjoint(m) && 2 * m.pairs.size() == static_cast<std::size_t>(m.host_n);
}

enum class MatchMode { MatchingOfGraph, Pairing };

// Verdict on whether m is a perfect matching of g (MatchingOfGraph) or a
// perfect matching of the complete graph on V(g) (Pairing).  A host-size
// mismatch is a malformed query, not a "no" answer.
inline bool validate(const Matching& m, const Graph& g, MatchMode mode) {
    if (m.host_n != g.vertex_count())
        throw std::invalid_argument("validate: matching host " + std::to_string(m.host_n) +
                                    " != graph order " + std::to_string(g.vertex_count()));
    if (!is_perfect(m)) return false;
    if (mode == MatchMode::MatchingOfGraph)
        for (const auto& [u, v] : m.pairs)
            if (!g.has_edge(u, v)) return false;
    return true;
}

namespace detail {

// Core backtracking enumerator.  Partner candidates for vertex v come from
// cand(v), which must yield ascending values > v among uncovered vertices.
// Used both for perfect matchings of a graph and for pairings.
template <class CandidateFn, class Visitor>
class PairStreamer {
public:
    PairStreamer(int n, CandidateFn cand, Visitor& visit)
        : n_(n), cand_(cand), visit_(visit), covered_(n, 0) {
        stack_.reserve(n / 2);
    }

    // Returns false if the visitor stopped the stream early.
    bool run() {
        if (n_ % 2 != 0) return true;  // odd host: empty stream
        return descend(0);
    }

    std::uint64_t emitted() const { return ordinal_; }

private:
    bool descend(int hint) {
        int v = hint;
        while (v < n_ && covered_[v]) ++v;
        if (v == n_) {
            bool keep = visit_(std::span<const Edge>(stack_.data(), stack_.size()), ordinal_);
            ++ordinal_;
            return keep;
        }
        covered_[v] = 1;
        bool keep = cand_(v, [&](int w) {
            if (covered_[w]) return true;
            covered_[w] = 1;
            stack_.push_back({v, w});
            bool k = descend(v + 1);
            stack_.pop_back();
            covered_[w] = 0;
            return k;
        });
        covered_[v] = 0;
        return keep;
    }

    int n_;
    CandidateFn cand_;
    Visitor& visit_;
    std::vector<char> covered_;
    std::vector<Edge> stack_;
    std::uint64_t ordinal_ = 0;
};

}  // namespace detail

// Streams every perfect matching of g as (pairs, ordinal).  The visitor gets a
// span valid only during the call; return false to stop.  Returns false iff
// stopped early.
template <class Visitor>
bool for_each_perfect_matching(const Graph& g, Visitor&& visit) {
    auto cand = [&g](int v, auto&& try_partner) {
        for (int w : g.neighbors(v)) {
            if (w <= v) continue;  // lower neighbors are covered already
            if (!try_partner(w)) return false;
        }
        return true;
    };
    detail::PairStreamer streamer(g.vertex_count(), cand, visit);
    return streamer.run();
}

// Streams every pairing of the host set 0..n-1 ((n-1)!! of them for even n).
template <class Visitor>
bool for_each_pairing(int n, Visitor&& visit) {
    if (n < 0)
        throw std::invalid_argument("for_each_pairing: negative host size");
    auto cand = [n](int v, auto&& try_partner) {
        for (int w = v + 1; w < n; ++w)
            if (!try_partner(w)) return false;
        return true;
    };
    detail::PairStreamer streamer(n, cand, visit);
    return streamer.run();
}

// Streams every pairing of an arbitrary (sorted, distinct) vertex set.
template <class Visitor>
bool for_each_pairing_of(const std::vector<int>& verts, std::vector<Edge> fixed, Visitor&& visit) {
    int k = static_cast<int>(verts.size());
    auto inner = [&](std::span<const Edge> local, std::uint64_t ord) {
        std::vector<Edge> pairs(fixed);
        for (const auto& [a, b] : local) pairs.push_back(make_edge(verts[a], verts[b]));
        std::sort(pairs.begin(), pairs.end());
        return visit(std::span<const Edge>(pairs.data(), pairs.size()), ord);
    };
    auto cand = [k](int v, auto&& try_partner) {
        for (int w = v + 1; w < k; ++w)
            if (!try_partner(w)) return false;
        return true;
    };
    detail::PairStreamer streamer(k, cand, inner);
    return streamer.run();
}

inline std::uint64_t count_perfect_matchings(const Graph& g) {
    std::uint64_t c = 0;
    for_each_perfect_matching(g, [&](std::span<const Edge>, std::uint64_t) {
        ++c;
        return true;
    });
    return c;
}

inline std::vector<Matching> all_perfect_matchings(const Graph& g) {
    std::vector<Matching> out;
    for_each_perfect_matching(g, [&](std::span<const Edge> pairs, std::uint64_t) {
        out.emplace_back(g.vertex_count(), std::vector<Edge>(pairs.begin(), pairs.end()));
        return true;
    });
    return out;
}

inline std::vector<Matching> all_pairings(int n) {
    std::vector<Matching> out;
    for_each_pairing(n, [&](std::span<const Edge> pairs, std::uint64_t) {
        out.emplace_back(n, std::vector<Edge>(pairs.begin(), pairs.end()));
        return true;
    });
    return out;
}

// (n-1)!! — the number of pairings of n vertices (n even, n >= 2).
inline std::uint64_t pairing_count(int n) {
    if (n < 0 || n % 2 != 0)
        throw std::invalid_argument("pairing_count: need even n >= 0");
    std::uint64_t c = 1;
    for (int k = n - 1; k > 1; k -= 2) c *= static_cast<std::uint64_t>(k);
    return c;
}

// Raised when a well-formed partial matching admits no perfect completion in
// the host graph.  Carries the partial for diagnostics.
struct CompletionFailure : std::runtime_error {
    Matching partial;
    CompletionFailure(std::string msg, Matching p)
        : std::runtime_error(std::move(msg)), partial(std::move(p)) {}
};

// First perfect matching of g (in enumeration order) containing `partial`.
// Overlapping pairs in `partial` are malformed input; pairs that are not edges
// of g, or a dead end, are completion failures.
inline Matching complete_matching(const Graph& g, const Matching& partial) {
    if (partial.host_n != g.vertex_count())
        throw std::invalid_argument("complete_matching: host size mismatch");
    if (!is_vertex_disjoint(partial))
        throw std::invalid_argument("complete_matching: partial matching reuses a vertex");
    for (const auto& [u, v] : partial.pairs)
        if (!g.has_edge(u, v))
            throw CompletionFailure("complete_matching: pair (" + std::to_string(u) + "," +
                                        std::to_string(v) + ") is not an edge of " + g.label(),
                                    partial);

    int n = g.vertex_count();
    std::vector<char> covered(n, 0);
    for (const auto& [u, v] : partial.pairs) covered[u] = covered[v] = 1;
    std::vector<Edge> chosen;

    // lowest-uncovered backtracking, partners ascending
    auto rec = [&](auto&& self, int hint) -> bool {
        int v = hint;
        while (v < n && covered[v]) ++v;
        if (v == n) return true;
        covered[v] = 1;
        for (int w : g.neighbors(v)) {
            if (covered[w]) continue;
            covered[w] = 1;
            chosen.push_back({v, w});
            if (self(self, v + 1)) return true;
            chosen.pop_back();
            covered[w] = 0;
        }
        covered[v] = 0;
        return false;
    };
    if (n % 2 != 0 || !rec(rec, 0))
        throw CompletionFailure("complete_matching: no completion in " + g.label(), partial);
    std::vector<Edge> pairs(partial.pairs);
    pairs.insert(pairs.end(), chosen.begin(), chosen.end());
    return Matching(n, std::move(pairs));
}

}  // namespace pmh
