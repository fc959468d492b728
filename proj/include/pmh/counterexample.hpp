#pragma once

// Deterministic non-extendable matchings for cylinders C_p□P_q and tori
// C_p□C_q.  Grid vertices are addressed as (i, s): column i runs around the
// first (cycle) factor, level s along the second.  Each constructor emits a
// fixed obstruction pattern plus a fixed completion rule, so the output is
// reproducible byte for byte; the completion is horizontal odd-i pairs on
// untouched levels (vertical odd-s pairs per column in the odd-p cylinder,
// where levels cannot be paired horizontally).

#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "matching.hpp"

namespace pmh {

// Requested product graph has odd order, so no perfect matching exists at
// all.  Distinct from invalid_argument: the parameters are in range, the
// object asked for just cannot exist.
struct NoPerfectMatchingError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class CylinderKind { OddCut, Structural };

struct CylinderCounterexample {
    Matching matching;
    CylinderKind kind;
};

namespace detail {
inline int wrap_col(int i, int p) { return (i - 1 + p) % p + 1; }  // 1-based cyclic
}

// Non-extendable perfect matching of the cylinder C_p□P_q.
//   odd p (forces q even): all p rungs between the last two levels — an odd
//     edge cut lying inside M; columns below pair vertically.
//   even p: horizontal pairs on level q-1 at odd i, and on level q the same
//     pairs shifted one column back; levels below pair horizontally.
inline CylinderCounterexample cylinder_matching(int p, int q) {
    if (p < 3 || q < 3)
        throw std::invalid_argument("cylinder_matching: need p,q >= 3, got p=" +
                                    std::to_string(p) + " q=" + std::to_string(q));
    if (p % 2 != 0 && q % 2 != 0)
        throw NoPerfectMatchingError("cylinder_matching: C" + std::to_string(p) + "xP" +
                                     std::to_string(q) + " has odd order");
    auto id = [&](int i, int s) { return grid_index(detail::wrap_col(i, p), s, p, q); };
    std::vector<Edge> pairs;
    if (p % 2 != 0) {
        for (int i = 1; i <= p; ++i) pairs.push_back(make_edge(id(i, q - 1), id(i, q)));
        for (int i = 1; i <= p; ++i)
            for (int s = 1; s <= q - 3; s += 2) pairs.push_back(make_edge(id(i, s), id(i, s + 1)));
        return {Matching(p * q, std::move(pairs)), CylinderKind::OddCut};
    }
    for (int i = 1; i <= p; i += 2) {
        pairs.push_back(make_edge(id(i, q - 1), id(i + 1, q - 1)));
        pairs.push_back(make_edge(id(i - 1, q), id(i, q)));
    }
    for (int s = 1; s <= q - 2; ++s)
        for (int i = 1; i <= p; i += 2) pairs.push_back(make_edge(id(i, s), id(i + 1, s)));
    return {Matching(p * q, std::move(pairs)), CylinderKind::Structural};
}

// Non-extendable perfect matching of the torus C_p□C_3 (p even, p >= 6).
// Nine fixed edges on columns 1..6 (levels aliased a=1, b=2, c=3), columns
// 7..p completed by horizontal pairs in every level.
inline Matching torus_q3_matching(int p) {
    if (p % 2 != 0 || p < 6)
        throw std::invalid_argument("torus_q3_matching: need even p >= 6, got " +
                                    std::to_string(p));
    const int q = 3;
    auto a = [&](int i) { return grid_index(i, 1, p, q); };
    auto b = [&](int i) { return grid_index(i, 2, p, q); };
    auto c = [&](int i) { return grid_index(i, 3, p, q); };
    std::vector<Edge> pairs = {
        make_edge(a(1), a(2)), make_edge(b(1), b(2)), make_edge(c(1), c(2)),
        make_edge(a(3), c(3)), make_edge(b(3), b(4)), make_edge(a(4), a(5)),
        make_edge(c(4), c(5)), make_edge(b(5), b(6)), make_edge(a(6), c(6)),
    };
    for (int i = 7; i + 1 <= p; i += 2) {
        pairs.push_back(make_edge(a(i), a(i + 1)));
        pairs.push_back(make_edge(b(i), b(i + 1)));
        pairs.push_back(make_edge(c(i), c(i + 1)));
    }
    return Matching(p * q, std::move(pairs));
}

// Non-extendable perfect matching of the torus C_p□C_q (p even >= 6, q >= 5).
// Levels 1..6 are aliased a..f and carry three edge families:
//   (i)   a_i a_{i+1} and f_i f_{i+1} for even i (f coincides with a when
//         q = 5, in which case those edges are emitted once),
//   (ii)  b_i b_{i+1} and e_i e_{i+1} for odd i,
//   (iii) the cross pairs c_i d_i for every i;
// levels 7..q are completed by horizontal odd-i pairs.
inline Matching torus_general_matching(int p, int q) {
    if (p % 2 != 0 || p < 6)
        throw std::invalid_argument("torus_general_matching: need even p >= 6, got p=" +
                                    std::to_string(p));
    if (q < 5)
        throw std::invalid_argument("torus_general_matching: need q >= 5, got q=" +
                                    std::to_string(q));
    auto at = [&](int s) {
        return [s, p, q](int i) { return grid_index(detail::wrap_col(i, p), s, p, q); };
    };
    auto a = at(1), b = at(2), c = at(3), d = at(4), e = at(5);
    auto f = at(q == 5 ? 1 : 6);
    std::vector<Edge> pairs;
    for (int i = 2; i <= p; i += 2) {
        pairs.push_back(make_edge(a(i), a(i + 1)));
        if (q != 5) pairs.push_back(make_edge(f(i), f(i + 1)));
    }
    for (int i = 1; i <= p; i += 2) {
        pairs.push_back(make_edge(b(i), b(i + 1)));
        pairs.push_back(make_edge(e(i), e(i + 1)));
    }
    for (int i = 1; i <= p; ++i) pairs.push_back(make_edge(c(i), d(i)));
    for (int s = 7; s <= q; ++s)
        for (int i = 1; i <= p; i += 2)
            pairs.push_back(make_edge(grid_index(i, s, p, q), grid_index(i + 1, s, p, q)));
    return Matching(p * q, std::move(pairs));
}

// The cross-pair family (iii) on its own: {c_i d_i}.  Useful as a seed when
// sampling extendable perfect matchings of the general-q tori: completions of
// this partial are typically extendable (though not always — the structural
// counterexample itself contains these pairs), so samplers verify each one.
inline Matching torus_cross_pairs(int p, int q) {
    if (p < 3 || q < 5)
        throw std::invalid_argument("torus_cross_pairs: need p >= 3, q >= 5");
    std::vector<Edge> pairs;
    for (int i = 1; i <= p; ++i)
        pairs.push_back(make_edge(grid_index(i, 3, p, q), grid_index(i, 4, p, q)));
    return Matching(p * q, std::move(pairs));
}

enum class OrientationStatus { Usable, NoPerfectMatching, CoveredByPriorWork };

struct Orientation {
    OrientationStatus status;
    int p = 0, q = 0;
    bool swapped = false;
};

// Put a torus C_p□C_q into the orientation the general constructions expect:
// first factor even and >= 6.  Products with a C_4 factor are routed away
// from the constructors (4 is the one even length < 6; those cases belong to
// the brute-force checker and the published small-case results), and odd x
// odd products have no perfect matching at all.
inline Orientation normalize_orientation(int p, int q) {
    if (p < 3 || q < 3)
        throw std::invalid_argument("normalize_orientation: need p,q >= 3");
    if (p == 4 || q == 4) return {OrientationStatus::CoveredByPriorWork, p, q, false};
    if (p % 2 != 0 && q % 2 != 0) return {OrientationStatus::NoPerfectMatching, p, q, false};
    if (p % 2 == 0) return {OrientationStatus::Usable, p, q, false};
    return {OrientationStatus::Usable, q, p, true};
}

}  // namespace pmh
