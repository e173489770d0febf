#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvcut/curvature.hpp"
#include "curvcut/semigroup.hpp"

#include "json.hpp"

namespace curvcut {

/// One inequality check: LHS ≤ RHS + tolerance, recorded as
/// slack = RHS − LHS, so it passes iff slack ≥ −tolerance.
struct CheckEntry {
    std::string name;
    double slack = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string theorem;
    std::string instance;
    std::vector<CheckEntry> checks;
    bool verdict = false; // AND of all checks

    double worst_slack() const;
    void add_check(std::string name, double slack, double tolerance);
    void finalize(); // recomputes verdict
};

nlohmann::ordered_json to_json(const VerificationReport& report);
std::string csv_header();
std::string to_csv_row(const VerificationReport& report);

/// Gradient estimate: ΓP_t^W f(x) ≤ e^{−2Kt}·P_t(Γf)(x) + tol_grad for every
/// grid time and vertex, with K the solver's curvature minimum over V\W
/// (dimension ∞) minus a 1e−9 safety margin, then shifted by k_shift
/// (nonzero only for negative controls). tol_grad = 2·Lip_Γ·partition_tolerance
/// + heat_tolerance with Lip_Γ = 2D(‖f‖∞ + partition_tolerance).
VerificationReport check_gradient_estimate(const WeightedGraph& g, const ExceptionSet& w,
                                           const ClassFunction& f,
                                           const std::vector<double>& time_grid,
                                           const EvolutionConfig& config,
                                           double k_shift = 0.0);

/// Distance bound: max_x d(x,W) ≤ 2D/(K−1e−9) + 1 for K > 0 the curvature
/// minimum over V\W. Throws NonpositiveCurvatureError when K ≤ 0 (theorem
/// not applicable) and InfiniteNegativeCurvatureError on a −∞ vertex.
VerificationReport check_distance_bound(const WeightedGraph& g, const ExceptionSet& w);

/// The eight-clause property suite for P_t^W on one instance: semigroup law,
/// contraction, time-Lipschitz, generator at 0, derivative bound,
/// Γ-derivative inequality, Γ=0 on W (exact), equilibrium constancy.
VerificationReport check_semigroup_suite(const WeightedGraph& g, const ExceptionSet& w,
                                         const ClassFunction& f,
                                         const EvolutionConfig& config);

struct ExhaustionReport {
    VerificationReport report;        // monotonicity checks
    std::vector<double> gaps;         // ‖P_t^{W_k} f − P_t f‖∞ per k
    std::vector<double> clip_change;  // ‖cutoff(f,W_k) − f‖∞ per k
};

/// Shrinking exception sets W₁ ⊇ W₂ ⊇ …: measures the gap between the
/// perpetual and plain heat evolutions per set and asserts the gap is
/// nonincreasing within 2·partition_tolerance. No convergence is claimed.
ExhaustionReport exhaustion_experiment(const WeightedGraph& g, const ScalarField& f,
                                       const std::vector<std::vector<VertexId>>& sets,
                                       double t, const EvolutionConfig& config);

/// Uniform values in [0, amplitude] pushed into ℓ∞^W by the cutoff;
/// deterministic per seed.
ClassFunction random_class_function(const WeightedGraph& g, const ExceptionSet& w,
                                    double amplitude, std::uint64_t seed);

/// Reproducible test instances. Entries are immutable once built; the
/// exception set is the solver's lowest-curvature vertex.
struct CorpusEntry {
    std::string name;
    WeightedGraph graph;
    ExceptionSet w;
    std::uint64_t seed = 0;
};

/// K₂, K₃, cycle(4..8), path(3..8), hypercube(2..4).
std::vector<CorpusEntry> family_corpus();

/// `count` seeded Erdős–Rényi graphs with 4..max_vertices vertices.
std::vector<CorpusEntry> random_corpus(std::size_t count, std::size_t max_vertices,
                                       std::uint64_t base_seed);

} // namespace curvcut
