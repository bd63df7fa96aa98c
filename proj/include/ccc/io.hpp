#pragma once

#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ccc/embedding.hpp"
#include "ccc/multigraph.hpp"

namespace ccc {

// Parse failure with 1-based line number, for the CLI's exit-1 contract.
struct parse_error : bad_input {
    int line;
    parse_error(int line_, const std::string& what)
        : bad_input("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline long long parse_int(const std::string& tok, int line) {
    try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw parse_error(line, "trailing junk in number '" + tok + "'");
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (...) {
        throw parse_error(line, "expected integer, got '" + tok + "'");
    }
}

// Reads a stream into lines, tracking 1-based numbering; strips trailing CR.
struct LineReader {
    std::vector<std::string> lines;
    int next = 0;
    explicit LineReader(std::istream& in) {
        std::string l;
        while (std::getline(in, l)) {
            if (!l.empty() && l.back() == '\r') l.pop_back();
            lines.push_back(l);
        }
    }
    bool eof() const { return next >= (int)lines.size(); }
    int lineno() const { return next + 1; }
    const std::string& peek() const { return lines[next]; }
    std::string take() { return lines[next++]; }
    void skip_blank_and_comments() {
        while (!eof()) {
            auto toks = split_ws(peek());
            if (toks.empty() || toks[0][0] == '#')
                ++next;
            else
                break;
        }
    }
};

inline Dart parse_dart(const Multigraph& g, const std::string& tok, int owner, int line) {
    auto colon = tok.find(':');
    int eid, end;
    if (colon == std::string::npos) {
        eid = (int)parse_int(tok, line);
        auto* e = g.find_edge(eid);
        if (!e) throw parse_error(line, "unknown edge id " + tok);
        if (e->u == e->v)
            throw parse_error(line, "loop dart needs explicit end: " + tok + ":0 or :1");
        if (e->u == owner)
            end = 0;
        else if (e->v == owner)
            end = 1;
        else
            throw parse_error(line, "edge " + tok + " not incident to vertex " +
                                        std::to_string(owner));
    } else {
        eid = (int)parse_int(tok.substr(0, colon), line);
        end = (int)parse_int(tok.substr(colon + 1), line);
        if (end != 0 && end != 1) throw parse_error(line, "dart end must be 0 or 1");
        auto* e = g.find_edge(eid);
        if (!e) throw parse_error(line, "unknown edge id in dart " + tok);
        if ((end == 0 ? e->u : e->v) != owner)
            throw parse_error(line, "dart " + tok + " not anchored at vertex " +
                                        std::to_string(owner));
    }
    return Dart{eid, end};
}

}  // namespace detail

// One record: `n m`, then m lines `edge-id u v`, then optionally one line
// `v: dart ...` per vertex (clockwise rotation). Ends at blank line or EOF.
// Returns the graph plus the rotation section if present.
struct GraphRecord {
    Multigraph graph;
    std::optional<EmbeddedMultigraph> embedded;
};

inline GraphRecord read_graph_record(detail::LineReader& r) {
    r.skip_blank_and_comments();
    if (r.eof()) throw parse_error(r.lineno(), "expected graph header, got end of input");
    int hline = r.lineno();
    auto head = detail::split_ws(r.take());
    if (head.size() != 2) throw parse_error(hline, "expected header 'n m'");
    long long n = detail::parse_int(head[0], hline);
    long long m = detail::parse_int(head[1], hline);
    if (n < 0 || m < 0) throw parse_error(hline, "negative counts in header");
    Multigraph g = Multigraph::with_vertices((int)n);
    for (long long i = 0; i < m; ++i) {
        if (r.eof()) throw parse_error(r.lineno(), "expected edge line");
        int el = r.lineno();
        auto toks = detail::split_ws(r.take());
        if (toks.size() != 3) throw parse_error(el, "expected 'edge-id u v'");
        int eid = (int)detail::parse_int(toks[0], el);
        int u = (int)detail::parse_int(toks[1], el);
        int v = (int)detail::parse_int(toks[2], el);
        if (!g.has_vertex(u) || !g.has_vertex(v))
            throw parse_error(el, "edge endpoint out of range");
        if (g.find_edge(eid)) throw parse_error(el, "duplicate edge id " + toks[0]);
        g.add_edge_id(eid, u, v);
    }
    GraphRecord rec{g, std::nullopt};
    // Optional rotation lines `v: darts...` until blank line / EOF.
    std::map<int, std::vector<Dart>> rot;
    bool any = false;
    while (!r.eof()) {
        auto toks = detail::split_ws(r.peek());
        if (toks.empty()) break;
        if (toks[0][0] == '#') {
            r.take();
            continue;
        }
        if (toks[0].back() != ':') break;
        std::string vtok = toks[0].substr(0, toks[0].size() - 1);
        bool numeric = !vtok.empty();
        for (char ch : vtok) numeric = numeric && (std::isdigit((unsigned char)ch) != 0);
        if (!numeric) break;  // some other section header, e.g. `crossings:`
        int rl = r.lineno();
        r.take();
        int v = (int)detail::parse_int(vtok, rl);
        if (!g.has_vertex(v)) throw parse_error(rl, "rotation for unknown vertex");
        if (rot.count(v)) throw parse_error(rl, "duplicate rotation line for vertex");
        std::vector<Dart> darts;
        for (size_t i = 1; i < toks.size(); ++i)
            darts.push_back(detail::parse_dart(g, toks[i], v, rl));
        rot[v] = darts;
        any = true;
    }
    if (any) {
        EmbeddedMultigraph emb;
        emb.graph = g;
        for (int v : g.vertices) emb.rotation[v] = {};
        for (auto& [v, ds] : rot) emb.rotation[v] = ds;
        try {
            emb.validate();
        } catch (const std::exception& e) {
            throw parse_error(r.lineno(), std::string("bad rotation system: ") + e.what());
        }
        rec.embedded = emb;
    }
    return rec;
}

inline GraphRecord read_graph_record(std::istream& in) {
    detail::LineReader r(in);
    return read_graph_record(r);
}

inline GraphRecord read_graph_record(const std::string& text) {
    std::istringstream in(text);
    return read_graph_record(in);
}

// All records in a stream, blank-line separated.
inline std::vector<GraphRecord> read_graph_records(std::istream& in) {
    detail::LineReader r(in);
    std::vector<GraphRecord> out;
    while (true) {
        r.skip_blank_and_comments();
        if (r.eof()) break;
        out.push_back(read_graph_record(r));
    }
    return out;
}

// Writers require dense 0-based vertex ids so records round-trip exactly.
inline void write_graph(std::ostream& out, const Multigraph& g) {
    for (int i = 0; i < (int)g.vertices.size(); ++i)
        require(g.vertices[i] == i, "write_graph needs dense 0-based vertex ids");
    out << g.vertices.size() << ' ' << g.edges.size() << '\n';
    for (const auto& e : g.edges) out << e.id << ' ' << e.u << ' ' << e.v << '\n';
}

inline void write_embedded(std::ostream& out, const EmbeddedMultigraph& emb) {
    write_graph(out, emb.graph);
    for (int v : emb.graph.vertices) {
        out << v << ':';
        for (const Dart& d : emb.rotation.at(v)) {
            const auto& e = emb.graph.edge(d.edge);
            out << ' ' << d.edge;
            if (e.u == e.v) out << ':' << d.end;
        }
        out << '\n';
    }
}

inline std::string graph_to_string(const Multigraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

inline std::string embedded_to_string(const EmbeddedMultigraph& emb) {
    std::ostringstream out;
    write_embedded(out, emb);
    return out.str();
}

}  // namespace ccc
