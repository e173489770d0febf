#include "curvcut/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "curvcut/util.hpp"

namespace curvcut {

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CURVCUT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            return static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

VertexId EdgeListData::require(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end())
        throw ParseError("unknown vertex label '" + label + "'");
    return it->second;
}

EdgeListData default_labels(std::size_t n) {
    EdgeListData out;
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.labels.push_back(std::to_string(i));
        out.index.emplace(out.labels.back(), static_cast<VertexId>(i));
    }
    return out;
}

namespace {

// Splits a line into whitespace-separated tokens; empty for comments/blanks.
std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#')
            break;
        toks.push_back(t);
    }
    return toks;
}

double parse_double(const std::string& tok, std::size_t lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": '" + tok +
                         "' is not a number");
    return v;
}

VertexId intern(EdgeListData& data, const std::string& label) {
    auto [it, fresh] = data.index.try_emplace(label, static_cast<VertexId>(data.labels.size()));
    if (fresh)
        data.labels.push_back(label);
    return it->second;
}

template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens_of(line);
        if (!toks.empty())
            fn(toks, lineno);
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    return in;
}

// `v x` pair file shared by measure and field parsing.
ScalarField parse_pairs(std::istream& in, const EdgeListData& names, const char* what) {
    const std::size_t n = names.labels.size();
    ScalarField values(n, 0.0);
    std::vector<std::uint8_t> set(n, 0);
    for_each_data_line(in, [&](const std::vector<std::string>& toks, std::size_t lineno) {
        if (toks.size() != 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected `vertex " +
                             std::string(what) + "`");
        VertexId v = names.require(toks[0]);
        if (set[v])
            throw ParseError("line " + std::to_string(lineno) + ": vertex '" + toks[0] +
                             "' listed twice");
        set[v] = 1;
        values[v] = parse_double(toks[1], lineno);
    });
    for (std::size_t v = 0; v < n; ++v)
        if (!set[v])
            throw ParseError("no " + std::string(what) + " for vertex '" + names.labels[v] + "'");
    return values;
}

} // namespace

EdgeListData parse_edge_list(std::istream& in) {
    EdgeListData data;
    std::vector<Edge> edges;
    for_each_data_line(in, [&](const std::vector<std::string>& toks, std::size_t lineno) {
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError("line " + std::to_string(lineno) + ": expected `u v [w]`");
        VertexId u = intern(data, toks[0]);
        VertexId v = intern(data, toks[1]);
        double w = toks.size() == 3 ? parse_double(toks[2], lineno) : 1.0;
        edges.push_back({u, v, w});
    });
    data.edges = std::move(edges);
    if (data.labels.empty())
        throw ParseError("edge list is empty");
    return data;
}

EdgeListData parse_edge_list_file(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_edge_list(in);
}

std::vector<double> parse_measure(std::istream& in, const EdgeListData& names) {
    return parse_pairs(in, names, "measure");
}

std::vector<double> parse_measure_file(const std::filesystem::path& path,
                                       const EdgeListData& names) {
    auto in = open_or_throw(path);
    return parse_measure(in, names);
}

std::vector<VertexId> parse_vertex_set(std::istream& in, const EdgeListData& names) {
    std::vector<VertexId> out;
    for_each_data_line(in, [&](const std::vector<std::string>& toks, std::size_t lineno) {
        if (toks.size() != 1)
            throw ParseError("line " + std::to_string(lineno) + ": expected one label per line");
        out.push_back(names.require(toks[0]));
    });
    return out;
}

std::vector<VertexId> parse_vertex_set_file(const std::filesystem::path& path,
                                            const EdgeListData& names) {
    auto in = open_or_throw(path);
    return parse_vertex_set(in, names);
}

ScalarField parse_field(std::istream& in, const EdgeListData& names) {
    return parse_pairs(in, names, "value");
}

ScalarField parse_field_file(const std::filesystem::path& path, const EdgeListData& names) {
    auto in = open_or_throw(path);
    return parse_field(in, names);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g,
                     const std::vector<std::string>& labels) {
    for (const Edge& e : g.edge_list())
        out << labels[e.u] << ' ' << labels[e.v] << ' ' << g17(e.weight) << '\n';
}

void write_field(std::ostream& out, const ScalarField& f,
                 const std::vector<std::string>& labels) {
    for (std::size_t v = 0; v < f.size(); ++v)
        out << labels[v] << ' ' << g17(f[v]) << '\n';
}

} // namespace curvcut
