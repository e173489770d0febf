#pragma once

#include <cstddef>
#include <vector>

#include "curvcut/fields.hpp"
#include "curvcut/gamma.hpp"
#include "curvcut/graph.hpp"

namespace curvcut {

struct EvolutionConfig {
    /// Poisson-tail truncation bound for the uniformized heat series.
    double heat_tolerance = 1e-12;
    /// Stop doubling the partition when one more doubling moves the result
    /// by less than this (sup-norm).
    double partition_tolerance = 1e-8;
    int max_doublings = 24;
    /// Uniformization rate c ≥ max degree; 0 means "use the graph's max
    /// degree". Values below the max degree are rejected at use.
    double uniformization_rate = 0.0;
};

/// Member of ℓ∞^W: constant on cl(W) (the plateau) and nowhere below that
/// value, so the plateau is the global minimum. The plateau value is written
/// bit-identically into every cl(W) entry, which lets downstream code detect
/// plateau membership by exact comparison.
class ClassFunction {
public:
    /// Validates the invariants (exact equality on cl(W), ≥ elsewhere).
    /// Use cutoff() to project an arbitrary field into the class.
    ClassFunction(const ExceptionSet& w, ScalarField field);

    const ScalarField& values() const { return values_; }
    double plateau() const { return plateau_; }
    const ExceptionSet& exception() const { return *exception_; }

    double operator[](VertexId x) const { return values_[x]; }

private:
    const ExceptionSet* exception_;
    ScalarField values_;
    double plateau_;
};

/// P_t f = e^{tΔ}f by uniformization: S = I + Δ/c is entrywise nonnegative
/// and row-stochastic for c ≥ D, and P_t f = e^{−ct} Σ (ct)^k/k! S^k f.
/// Positivity and sup-norm contraction therefore survive truncation and
/// rounding (the result is additionally clamped to [min f, max f]).
ScalarField heat_apply(const WeightedGraph& g, const ScalarField& f, double t,
                       const EvolutionConfig& config = {});

/// S^W f = f ∨ sup_{cl(W)} f. Idempotent, sup-norm 1-Lipschitz.
ClassFunction cutoff(const ScalarField& f, const ExceptionSet& w);

/// Q_t^W f = S^W P_t f: one heat step then the cutoff.
ClassFunction q_step(const WeightedGraph& g, const ClassFunction& f, double t,
                     const EvolutionConfig& config = {});

struct EvolveStats {
    std::size_t steps = 0;      // partition size of the returned result
    int doublings = 0;          // halvings performed past the single step
    double last_diff = 0.0;     // sup-norm move of the final doubling
    double error_envelope = 0.0; // aggregate generator bound 4t²D²‖f‖∞/steps
};

/// P_t^W f: supremum of Q-compositions over partitions of [0,t],
/// approximated from below along uniform dyadic partitions (refinement can
/// only increase values) until one more doubling moves the result by less
/// than partition_tolerance.
ClassFunction perpetual_evolve(const WeightedGraph& g, const ClassFunction& f, double t,
                               const EvolutionConfig& config = {},
                               EvolveStats* stats = nullptr);

/// L^W f(x): S^W(Δf)(x) where f sits at its plateau (the global minimum),
/// Δf(x) elsewhere.
ScalarField generator_LW(const WeightedGraph& g, const ClassFunction& f);

struct Equilibrium {
    double value = 0.0;  // midpoint of the final sup/inf
    double time = 0.0;
    double spread = 0.0; // final sup − inf, below flat_tolerance on success
};

/// Advances in unit time blocks until sup − inf < flat_tolerance; the min is
/// checked monotone nondecreasing and the max nonincreasing along the way.
Equilibrium evolve_to_equilibrium(const WeightedGraph& g, const ClassFunction& f,
                                  double flat_tolerance,
                                  const EvolutionConfig& config = {});

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<ClassFunction> fields;
    std::vector<ScalarField> gamma_fields; // ΓP_t^W f per grid point
    std::vector<std::size_t> step_counts;  // partition size used per segment
};

/// Advances incrementally along the grid (semigroup property), recording the
/// evolved field and its Γ at each time. The grid must start at 0 and be
/// strictly increasing. Each segment runs at half the configured
/// partition_tolerance so the accumulated drift against a direct evolution
/// stays within 2× the configured tolerance.
EvolutionTrace trace(const WeightedGraph& g, const ScalarField& f, const ExceptionSet& w,
                     const std::vector<double>& time_grid,
                     const EvolutionConfig& config = {});

} // namespace curvcut
