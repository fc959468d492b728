#pragma once

// Reading and writing the external formats: edge lists ("c" comments, one
// "p <n> <m>" header, then "u v" lines), graph / matching / outcome / report
// JSON, report CSV rows, and the canonicalization pass that zeroes the fields
// legitimately varying between runs (timing, worker counts) so reports can be
// compared byte for byte.

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "battery.hpp"
#include "counterexample.hpp"
#include "extend.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "properties.hpp"

namespace pmh {

using ojson = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

inline std::string to_string(ExtensionStatus s) {
    return s == ExtensionStatus::Extended ? "Extended" : "Refuted";
}
inline std::string to_string(GraphProperty p) { return p == GraphProperty::Pmh ? "PMH" : "PH"; }
inline std::string to_string(PropertyVerdict v) {
    switch (v) {
        case PropertyVerdict::Holds: return "holds";
        case PropertyVerdict::Fails: return "fails";
        default: return "vacuous";
    }
}
inline std::string to_string(CylinderKind k) {
    return k == CylinderKind::OddCut ? "odd-cut" : "structural";
}
inline std::string to_string(BatteryStatus s) {
    switch (s) {
        case BatteryStatus::Pass: return "pass";
        case BatteryStatus::Fail: return "fail";
        default: return "inconclusive";
    }
}

// ---- edge lists ---------------------------------------------------------

inline void write_edge_list(std::ostream& os, const Graph& g,
                            const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments) os << "c " << c << "\n";
    if (!g.label().empty()) os << "c label " << g.label() << "\n";
    os << "p " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const auto& [u, v] : g.edges()) os << u << " " << v << "\n";
}

inline Graph read_edge_list(std::istream& is) {
    std::string line, label;
    int lineno = 0, n = -1, m = -1;
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank
        if (tok == "c") {
            std::string key;
            if (ls >> key && key == "label") {
                std::string rest;
                std::getline(ls, rest);
                if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
                label = rest;
            }
            continue;
        }
        if (tok == "p") {
            if (n >= 0) throw ParseError(lineno, "second header line");
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw ParseError(lineno, "header must be 'p <vertices> <edges>'");
            continue;
        }
        if (n < 0) throw ParseError(lineno, "edge before 'p' header");
        int u, v;
        std::istringstream es(line);
        if (!(es >> u >> v)) throw ParseError(lineno, "expected 'u v', got '" + line + "'");
        std::string extra;
        if (es >> extra) throw ParseError(lineno, "trailing tokens after edge");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(lineno, "vertex out of range 0.." + std::to_string(n - 1));
        if (u == v) throw ParseError(lineno, "loop edge");
        edges.push_back(make_edge(u, v));
    }
    if (n < 0) throw ParseError(lineno, "missing 'p' header");
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(lineno, "header promised " + std::to_string(m) + " edges, found " +
                                     std::to_string(edges.size()));
    try {
        return Graph(n, std::move(edges), label);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());  // duplicate edges land here
    }
}

// ---- JSON ---------------------------------------------------------------

inline ojson edges_to_json(const std::vector<Edge>& edges) {
    ojson arr = ojson::array();
    for (const auto& [u, v] : edges) arr.push_back(ojson::array({u, v}));
    return arr;
}

inline std::vector<Edge> edges_from_json(const ojson& arr) {
    if (!arr.is_array()) throw ParseError(0, "edge list must be an array");
    std::vector<Edge> out;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError(0, "each edge must be [u, v]");
        out.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return out;
}

inline ojson graph_to_json(const Graph& g) {
    ojson j;
    j["n"] = g.vertex_count();
    j["edges"] = edges_to_json(g.edges());
    j["label"] = g.label();
    return j;
}

inline Graph graph_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError(0, "graph JSON needs \"n\" and \"edges\"");
    std::string label = j.value("label", std::string{});
    try {
        return Graph(j.at("n").get<int>(), edges_from_json(j.at("edges")), label);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

inline ojson matching_to_json(const Matching& m) {
    ojson j;
    j["n"] = m.host_n;
    j["pairs"] = edges_to_json(m.pairs);
    return j;
}

inline Matching matching_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("pairs"))
        throw ParseError(0, "matching JSON needs \"n\" and \"pairs\"");
    try {
        return Matching(j.at("n").get<int>(), edges_from_json(j.at("pairs")));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

// Compact one-line form: "0-1 2-3 4-5".
inline std::string matching_to_line(const Matching& m) {
    std::string out;
    for (const auto& [u, v] : m.pairs) {
        if (!out.empty()) out += ' ';
        out += std::to_string(u) + "-" + std::to_string(v);
    }
    return out;
}

inline Matching matching_from_line(int host_n, const std::string& line) {
    std::istringstream is(line);
    std::string tok;
    std::vector<Edge> pairs;
    while (is >> tok) {
        auto dash = tok.find('-', 1);  // vertices are non-negative
        if (dash == std::string::npos)
            throw ParseError(1, "expected 'u-v' pair, got '" + tok + "'");
        try {
            pairs.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
        } catch (const std::exception&) {
            throw ParseError(1, "bad pair '" + tok + "'");
        }
    }
    try {
        return Matching(host_n, std::move(pairs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, e.what());
    }
}

inline ojson cut_to_json(const CutCertificate& c) {
    ojson j;
    j["side"] = c.side;
    j["crossing"] = edges_to_json(c.crossing);
    return j;
}

inline CutCertificate cut_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("side") || !j.contains("crossing"))
        throw ParseError(0, "cut JSON needs \"side\" and \"crossing\"");
    CutCertificate c;
    for (const auto& v : j.at("side")) {
        if (!v.is_number_integer()) throw ParseError(0, "side must hold integers");
        c.side.push_back(v.get<int>());
    }
    c.crossing = edges_from_json(j.at("crossing"));
    return c;
}

inline ojson prunes_to_json(const PruneCounts& p) {
    ojson j;
    j["short_cycle"] = p.short_cycle;
    j["cut_parity"] = p.cut_parity;
    j["forced"] = p.forced;
    return j;
}

inline ojson outcome_to_json(const ExtensionOutcome& o) {
    ojson j;
    j["status"] = to_string(o.status);
    if (o.status == ExtensionStatus::Extended) {
        j["witness"] = edges_to_json(o.witness.pairs);
        j["cycle"] = o.cycle;
    } else {
        j["witness"] = nullptr;
        j["cycle"] = nullptr;
    }
    j["nodes_explored"] = o.nodes_explored;
    j["prunes"] = prunes_to_json(o.prunes);
    j["elapsed_ms"] = o.elapsed_ms;
    return j;
}

inline ojson report_to_json(const PropertyReport& r) {
    ojson j;
    j["graph"] = r.graph_label;
    j["property"] = to_string(r.property);
    j["verdict"] = to_string(r.verdict);
    if (r.counterexample) {
        j["counterexample"] = edges_to_json(r.counterexample->pairs);
        j["counterexample_ordinal"] = r.counterexample_ordinal;
    } else {
        j["counterexample"] = nullptr;
    }
    j["total_checked"] = r.total_checked;
    j["elapsed_ms"] = r.elapsed_ms;
    j["shards_used"] = r.shards_used;
    if (r.symmetry.used) {
        ojson s;
        s["anchor_orbit_reps"] = r.symmetry.anchor_orbit_reps;
        s["automorphisms"] = r.symmetry.automorphisms;
        j["symmetry"] = s;
    }
    return j;
}

inline ojson battery_result_to_json(const BatteryResult& r) {
    ojson j;
    j["id"] = r.id;
    j["description"] = r.description;
    j["expected"] = r.expected;
    j["observed"] = r.observed;
    j["status"] = to_string(r.status);
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

// ---- CSV ----------------------------------------------------------------

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_header() { return "graph,property,verdict,count,seconds"; }

inline std::string report_to_csv_row(const PropertyReport& r, bool canonical = false) {
    std::ostringstream os;
    os << csv_escape(r.graph_label) << "," << to_string(r.property) << ","
       << to_string(r.verdict) << "," << r.total_checked << ","
       << (canonical ? 0.0 : r.elapsed_ms / 1000.0);
    return os.str();
}

// ---- canonicalization ---------------------------------------------------

// Zero out everything that may differ between two correct runs of the same
// check: wall-clock fields and worker/shard configuration.
inline void canonicalize_json(ojson& j) {
    if (j.is_object()) {
        for (auto& [key, value] : j.items()) {
            if (key == "elapsed_ms" || key == "seconds")
                value = 0.0;
            else if (key == "shards_used" || key == "workers")
                value = 0;
            else
                canonicalize_json(value);
        }
    } else if (j.is_array()) {
        for (auto& v : j) canonicalize_json(v);
    }
}

}  // namespace pmh
