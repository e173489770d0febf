#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curvcut/errors.hpp"

namespace curvcut {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class MeasureMode { Unit, Degree, Explicit };

/// Finite connected graph with symmetric positive edge weights and a strictly
/// positive vertex measure. Immutable after construction; safe to share
/// between threads.
class WeightedGraph {
public:
    struct Neighbor {
        VertexId to;
        double weight;
    };

    /// Validates and builds. Vertex count is 1 + the largest endpoint index.
    /// Rejects self loops, duplicate edges, nonpositive weights or measures,
    /// and disconnected input.
    static WeightedGraph build(const std::vector<Edge>& edges, MeasureMode mode,
                               std::vector<double> explicit_measure = {});

    std::size_t vertex_count() const { return measure_.size(); }
    std::size_t edge_count() const { return adjacency_flat_.size() / 2; }

    std::span<const Neighbor> neighbors(VertexId x) const {
        return {adjacency_flat_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
    }

    double measure(VertexId x) const { return measure_[x]; }

    /// Stored weight w(x,y); zero when x and y are not adjacent.
    double weight(VertexId x, VertexId y) const;

    /// Weighted degree sum_y w(x,y)/m(x).
    double degree(VertexId x) const { return degree_[x]; }
    double max_degree() const { return max_degree_; }

    /// Canonical edge list (u < v, ascending), suitable for serialization.
    std::vector<Edge> edge_list() const;

private:
    WeightedGraph() = default;

    std::vector<std::size_t> offsets_;     // size vertex_count+1
    std::vector<Neighbor> adjacency_flat_; // both directions, sorted per vertex
    std::vector<double> measure_;
    std::vector<double> degree_;
    double max_degree_ = 0.0;
};

// Generators. Unit edge weights; deterministic for a fixed seed.
WeightedGraph make_complete(std::size_t n, MeasureMode mode = MeasureMode::Unit);
WeightedGraph make_cycle(std::size_t n, MeasureMode mode = MeasureMode::Unit);
WeightedGraph make_path(std::size_t n, MeasureMode mode = MeasureMode::Unit);
WeightedGraph make_hypercube(std::size_t dim, MeasureMode mode = MeasureMode::Unit);

/// Resamples until connected (at most 1000 attempts, then GenerationFailedError).
WeightedGraph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                               MeasureMode mode = MeasureMode::Unit);

/// Hop counts from every vertex of `sources` simultaneously (BFS over
/// positive-weight edges; weights do not affect distance).
std::vector<unsigned> bfs_distances(const WeightedGraph& g, std::span<const VertexId> sources);

unsigned distance(const WeightedGraph& g, VertexId x, VertexId y);
unsigned distance_to_set(const WeightedGraph& g, VertexId x, std::span<const VertexId> set);

/// W together with all neighbors of W, ascending.
std::vector<VertexId> closure(const WeightedGraph& g, std::span<const VertexId> members);

/// Nonempty vertex subset W with its cached closure cl(W).
class ExceptionSet {
public:
    ExceptionSet(const WeightedGraph& g, std::vector<VertexId> members);

    const std::vector<VertexId>& members() const { return members_; }
    const std::vector<VertexId>& closure() const { return closure_; }

    bool in_members(VertexId x) const { return member_mask_[x] != 0; }
    bool in_closure(VertexId x) const { return closure_mask_[x] != 0; }

    std::size_t vertex_count() const { return member_mask_.size(); }

private:
    std::vector<VertexId> members_;
    std::vector<VertexId> closure_;
    std::vector<std::uint8_t> member_mask_;
    std::vector<std::uint8_t> closure_mask_;
};

} // namespace curvcut
