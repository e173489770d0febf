#include "curvcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <string>

namespace curvcut {

WeightedGraph WeightedGraph::build(const std::vector<Edge>& edges, MeasureMode mode,
                                   std::vector<double> explicit_measure) {
    std::size_t n = 0;
    for (const Edge& e : edges) {
        if (e.u == e.v)
            throw SelfLoopError("self loop at vertex " + std::to_string(e.u));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw NonpositiveWeightError("edge (" + std::to_string(e.u) + "," +
                                         std::to_string(e.v) + ") has weight " +
                                         std::to_string(e.weight));
        n = std::max(n, std::size_t{std::max(e.u, e.v)} + 1);
    }
    if (mode == MeasureMode::Explicit)
        n = std::max(n, explicit_measure.size());
    if (n == 0)
        throw EmptySetError("graph has no vertices");

    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : edges) {
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second)
            throw DuplicateEdgeError("edge (" + std::to_string(key.first) + "," +
                                     std::to_string(key.second) + ") listed twice");
    }

    WeightedGraph g;
    std::vector<std::vector<Neighbor>> adj(n);
    for (const Edge& e : edges) {
        adj[e.u].push_back({e.v, e.weight});
        adj[e.v].push_back({e.u, e.weight});
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) {
        std::sort(adj[x].begin(), adj[x].end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
        g.offsets_[x + 1] = g.offsets_[x] + adj[x].size();
        g.adjacency_flat_.insert(g.adjacency_flat_.end(), adj[x].begin(), adj[x].end());
    }

    switch (mode) {
    case MeasureMode::Unit:
        g.measure_.assign(n, 1.0);
        break;
    case MeasureMode::Degree:
        g.measure_.resize(n);
        for (std::size_t x = 0; x < n; ++x) {
            double s = 0.0;
            for (const Neighbor& nb : adj[x])
                s += nb.weight;
            g.measure_[x] = s;
        }
        break;
    case MeasureMode::Explicit:
        if (explicit_measure.size() != n)
            throw SizeMismatchError("measure has " + std::to_string(explicit_measure.size()) +
                                    " entries for " + std::to_string(n) + " vertices");
        g.measure_ = std::move(explicit_measure);
        break;
    }
    for (std::size_t x = 0; x < n; ++x)
        if (!(g.measure_[x] > 0.0) || !std::isfinite(g.measure_[x]))
            throw NonpositiveMeasureError("vertex " + std::to_string(x) + " has measure " +
                                          std::to_string(g.measure_[x]));

    g.degree_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        double s = 0.0;
        for (const Neighbor& nb : g.neighbors(static_cast<VertexId>(x)))
            s += nb.weight;
        g.degree_[x] = s / g.measure_[x];
        g.max_degree_ = std::max(g.max_degree_, g.degree_[x]);
    }

    // Connectivity check (isolated vertices count as disconnected when n > 1).
    if (n > 1) {
        std::vector<std::uint8_t> visited(n, 0);
        std::deque<VertexId> queue{0};
        visited[0] = 1;
        std::size_t reached = 1;
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            for (const Neighbor& nb : g.neighbors(x))
                if (!visited[nb.to]) {
                    visited[nb.to] = 1;
                    ++reached;
                    queue.push_back(nb.to);
                }
        }
        if (reached != n)
            throw DisconnectedGraphError("graph is disconnected (" + std::to_string(reached) +
                                         " of " + std::to_string(n) + " vertices reachable)");
    }
    return g;
}

double WeightedGraph::weight(VertexId x, VertexId y) const {
    auto nbs = neighbors(x);
    auto it = std::lower_bound(nbs.begin(), nbs.end(), y,
                               [](const Neighbor& a, VertexId b) { return a.to < b; });
    if (it != nbs.end() && it->to == y)
        return it->weight;
    return 0.0;
}

std::vector<Edge> WeightedGraph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId x = 0; x < vertex_count(); ++x)
        for (const Neighbor& nb : neighbors(x))
            if (x < nb.to)
                out.push_back({x, nb.to, nb.weight});
    return out;
}

WeightedGraph make_complete(std::size_t n, MeasureMode mode) {
    if (n < 2)
        throw GenerationFailedError("complete graph needs at least 2 vertices");
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            edges.push_back({u, v, 1.0});
    return WeightedGraph::build(edges, mode);
}

WeightedGraph make_cycle(std::size_t n, MeasureMode mode) {
    if (n < 3)
        throw GenerationFailedError("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        edges.push_back({u, static_cast<VertexId>((u + 1) % n), 1.0});
    return WeightedGraph::build(edges, mode);
}

WeightedGraph make_path(std::size_t n, MeasureMode mode) {
    if (n < 2)
        throw GenerationFailedError("path needs at least 2 vertices");
    std::vector<Edge> edges;
    for (VertexId u = 0; u + 1 < n; ++u)
        edges.push_back({u, static_cast<VertexId>(u + 1), 1.0});
    return WeightedGraph::build(edges, mode);
}

WeightedGraph make_hypercube(std::size_t dim, MeasureMode mode) {
    if (dim < 1 || dim > 20)
        throw GenerationFailedError("hypercube dimension out of range [1,20]");
    std::vector<Edge> edges;
    const std::size_t n = std::size_t{1} << dim;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t b = 0; b < dim; ++b) {
            std::size_t v = u ^ (std::size_t{1} << b);
            if (u < v)
                edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0});
        }
    return WeightedGraph::build(edges, mode);
}

WeightedGraph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed, MeasureMode mode) {
    if (n < 2)
        throw GenerationFailedError("random graph needs at least 2 vertices");
    if (!(p >= 0.0 && p <= 1.0))
        throw GenerationFailedError("edge probability must be in [0,1]");
    std::mt19937_64 rng(seed);
    // Canonical uniform double in [0,1): top 53 bits of the generator output.
    auto uniform = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Edge> edges;
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                if (uniform() < p)
                    edges.push_back({u, v, 1.0});
        try {
            return WeightedGraph::build(edges, mode);
        } catch (const DisconnectedGraphError&) {
        } catch (const EmptySetError&) {
        } catch (const NonpositiveMeasureError&) {
            // isolated vertex under degree measures: the sample is
            // disconnected anyway, so draw again
        }
    }
    throw GenerationFailedError("no connected sample after 1000 attempts (n=" +
                                std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

std::vector<unsigned> bfs_distances(const WeightedGraph& g, std::span<const VertexId> sources) {
    if (sources.empty())
        throw EmptySetError("distance to empty set is undefined");
    constexpr unsigned kUnreached = std::numeric_limits<unsigned>::max();
    std::vector<unsigned> dist(g.vertex_count(), kUnreached);
    std::deque<VertexId> queue;
    for (VertexId s : sources)
        if (dist[s] == kUnreached) {
            dist[s] = 0;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(x))
            if (dist[nb.to] == kUnreached) {
                dist[nb.to] = dist[x] + 1;
                queue.push_back(nb.to);
            }
    }
    return dist;
}

unsigned distance(const WeightedGraph& g, VertexId x, VertexId y) {
    const VertexId src[1] = {x};
    return bfs_distances(g, src)[y];
}

unsigned distance_to_set(const WeightedGraph& g, VertexId x, std::span<const VertexId> set) {
    return bfs_distances(g, set)[x];
}

std::vector<VertexId> closure(const WeightedGraph& g, std::span<const VertexId> members) {
    if (members.empty())
        throw EmptySetError("closure of empty set");
    std::vector<std::uint8_t> mask(g.vertex_count(), 0);
    for (VertexId x : members) {
        mask[x] = 1;
        for (const auto& nb : g.neighbors(x))
            mask[nb.to] = 1;
    }
    std::vector<VertexId> out;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        if (mask[x])
            out.push_back(x);
    return out;
}

ExceptionSet::ExceptionSet(const WeightedGraph& g, std::vector<VertexId> members)
    : members_(std::move(members)) {
    if (members_.empty())
        throw EmptySetError("exception set must be nonempty");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (VertexId x : members_)
        if (x >= g.vertex_count())
            throw SizeMismatchError("exception vertex " + std::to_string(x) +
                                    " outside graph of size " + std::to_string(g.vertex_count()));
    closure_ = curvcut::closure(g, members_);
    member_mask_.assign(g.vertex_count(), 0);
    closure_mask_.assign(g.vertex_count(), 0);
    for (VertexId x : members_)
        member_mask_[x] = 1;
    for (VertexId x : closure_)
        closure_mask_[x] = 1;
}

} // namespace curvcut
