// Shared test helpers: slow independent counting oracles, a small graph
// corpus, randomized matching completion, and subprocess plumbing for the
// command-line binary.

#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pmh/graph.hpp"
#include "pmh/matching.hpp"

namespace pmh::test {

// Count perfect matchings by brute force over all edge subsets of size n/2.
// Deliberately structure-free so it cannot share a bug with the streamer.
inline std::uint64_t count_pm_subset_oracle(const Graph& g) {
    const int n = g.vertex_count();
    if (n % 2 != 0) return 0;
    const int k = n / 2;
    const auto& es = g.edges();
    const int m = static_cast<int>(es.size());
    if (m < k) return 0;
    // refuse absurd work: C(m, k) capped at 10^7
    long double comb = 1;
    for (int i = 0; i < k; ++i) comb = comb * (m - i) / (i + 1);
    if (comb > 1e7L) throw std::runtime_error("subset oracle: C(m,k) too large");
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::uint64_t count = 0;
    std::vector<char> used(n);
    while (true) {
        std::fill(used.begin(), used.end(), 0);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            auto [u, v] = es[idx[i]];
            if (used[u] || used[v]) ok = false;
            used[u] = used[v] = 1;
        }
        if (ok) ++count;
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return count;
}

// Count perfect matchings by subset DP: f[mask] = matchings of the induced
// subgraph on mask, pairing the lowest set bit with each of its neighbors.
inline std::uint64_t count_pm_bitmask_oracle(const Graph& g) {
    const int n = g.vertex_count();
    if (n % 2 != 0) return 0;
    if (n > 24) throw std::runtime_error("bitmask oracle: n too large");
    std::vector<std::uint64_t> f(std::size_t{1} << n, 0);
    f[0] = 1;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;
        int v = __builtin_ctz(mask);
        std::uint64_t total = 0;
        for (int u : g.neighbors(v))
            if (u != v && (mask >> u & 1)) total += f[mask & ~(1u << v) & ~(1u << u)];
        f[mask] = total;
    }
    return f[(std::uint32_t{1} << n) - 1];
}

// Complete a partial matching to a random perfect matching of g, or nullopt
// if no completion exists.  Candidate order is shuffled at every level, so the
// distribution covers all completions (not uniformly, which is fine here).
inline std::optional<Matching> random_completion(const Graph& g,
                                                 const std::vector<Edge>& partial,
                                                 std::mt19937& rng) {
    const int n = g.vertex_count();
    std::vector<char> covered(n, 0);
    for (auto [u, v] : partial) {
        if (covered[u] || covered[v]) throw std::invalid_argument("partial matching overlaps");
        covered[u] = covered[v] = 1;
    }
    std::vector<Edge> chosen(partial);
    auto rec = [&](auto&& self) -> bool {
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (!covered[i]) {
                u = i;
                break;
            }
        if (u < 0) return true;
        std::vector<int> cands;
        for (int w : g.neighbors(u))
            if (!covered[w]) cands.push_back(w);
        std::shuffle(cands.begin(), cands.end(), rng);
        for (int w : cands) {
            covered[u] = covered[w] = 1;
            chosen.push_back(make_edge(u, w));
            if (self(self)) return true;
            chosen.pop_back();
            covered[u] = covered[w] = 0;
        }
        return false;
    };
    if (!rec(rec)) return std::nullopt;
    return Matching{n, chosen};
}

// Small graphs exercised across the suites.
inline std::vector<Graph> small_corpus() {
    std::vector<Graph> out;
    out.push_back(build_complete(4));
    out.push_back(build_cycle(4));
    out.push_back(build_cycle(6));
    out.push_back(build_complete_bipartite(3, 3));
    out.push_back(cartesian_product(build_cycle(3), build_path(2)));   // prism
    out.push_back(build_hypercube(3));
    out.push_back(cartesian_product(build_cycle(4), build_path(3)));
    out.push_back(cartesian_product(build_cycle(3), build_path(4)));
    out.push_back(build_torus(3, 4));
    out.push_back(build_torus(4, 3));
    out.push_back(cartesian_product(build_path(4), build_path(3)));
    return out;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Run the installed CLI with the given argument string, capturing stdout.
inline CliResult run_cli(const std::string& cli_path, const std::string& args) {
    std::string cmd = cli_path + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = ::pclose(pipe);
    CliResult r;
    r.out = std::move(out);
    if (WIFEXITED(status))
        r.exit_code = WEXITSTATUS(status);
    return r;
}

inline std::string write_temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/pmh_test_") + name;
    std::ofstream os(path);
    os << content;
    return path;
}

}  // namespace pmh::test
