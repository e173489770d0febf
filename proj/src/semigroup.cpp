#include "curvcut/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvcut/util.hpp"

namespace curvcut {

namespace {

double effective_rate(const WeightedGraph& g, const EvolutionConfig& config) {
    const double d = g.max_degree();
    if (config.uniformization_rate == 0.0)
        return d;
    if (config.uniformization_rate < d)
        throw Error("uniformization rate " + g17(config.uniformization_rate) +
                    " is below the max degree " + g17(d));
    return config.uniformization_rate;
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw NegativeTimeError("evolution time must be finite and >= 0, got " + g17(t));
}

// One uniformized heat piece with ct small enough that e^{−ct} is far from
// underflow; callers split larger times into such pieces.
ScalarField heat_piece(const WeightedGraph& g, const ScalarField& f, double c, double t,
                       double tail_tolerance) {
    const std::size_t n = g.vertex_count();
    const double mu = c * t;
    const double norm = sup_norm(f);
    double lo = f[0], hi = f[0];
    for (double v : f) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    ScalarField out(n, 0.0);
    ScalarField cur = f;
    ScalarField nxt(n);
    double term = std::exp(-mu); // Poisson weight p_k, starting at k=0
    double tail = 1.0 - term;    // mass not yet accumulated
    for (std::size_t k = 0;; ++k) {
        for (std::size_t x = 0; x < n; ++x)
            out[x] += term * cur[x];
        if (tail * std::max(norm, 1e-300) <= tail_tolerance)
            break;
        if (k > 100000)
            throw NoConvergenceError("heat series did not truncate (ct=" + g17(mu) + ")");
        // cur ← S·cur with S = I + Δ/c (convex combination of neighbors).
        for (VertexId x = 0; x < n; ++x) {
            double acc = cur[x] * (1.0 - g.degree(x) / c);
            const double im = 1.0 / (c * g.measure(x));
            for (const auto& nb : g.neighbors(x))
                acc += im * nb.weight * cur[nb.to];
            nxt[x] = acc;
        }
        std::swap(cur, nxt);
        term *= mu / double(k + 1);
        tail -= term;
    }
    // Rounding can push entries just past the input range; clamping restores
    // exact contraction and positivity preservation.
    for (double& v : out)
        v = std::clamp(v, lo, hi);
    return out;
}

} // namespace

ScalarField heat_apply(const WeightedGraph& g, const ScalarField& f, double t,
                       const EvolutionConfig& config) {
    check_time(t);
    if (f.size() != g.vertex_count())
        throw SizeMismatchError("field length does not match graph");
    if (t == 0.0)
        return f;
    const double c = effective_rate(g, config);
    if (c == 0.0)
        return f; // edgeless graph: Δ = 0

    // Keep ct ≤ 64 per piece so the leading Poisson weight e^{−ct} stays
    // well inside normal range.
    const auto pieces = static_cast<std::size_t>(std::ceil(c * t / 64.0));
    const std::size_t count = std::max<std::size_t>(1, pieces);
    const double tau = t / double(count);
    const double per_piece = config.heat_tolerance / double(count);

    ScalarField cur = f;
    for (std::size_t i = 0; i < count; ++i)
        cur = heat_piece(g, cur, c, tau, per_piece);
    return cur;
}

ClassFunction::ClassFunction(const ExceptionSet& w, ScalarField field)
    : exception_(&w), values_(std::move(field)) {
    if (values_.size() != w.vertex_count())
        throw SizeMismatchError("field length does not match exception set's graph");
    plateau_ = values_[w.closure().front()];
    for (VertexId x : w.closure())
        if (values_[x] != plateau_)
            throw Error("field is not constant on cl(W)");
    for (double v : values_)
        if (!(v >= plateau_))
            throw Error("field drops below its cl(W) value");
}

ClassFunction cutoff(const ScalarField& f, const ExceptionSet& w) {
    if (f.size() != w.vertex_count())
        throw SizeMismatchError("field length does not match exception set's graph");
    double plateau = f[w.closure().front()];
    for (VertexId x : w.closure())
        plateau = std::max(plateau, f[x]);
    ScalarField out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x)
        out[x] = std::max(f[x], plateau);
    // Bit-identical plateau entries on cl(W) (max() already yields the same
    // value; this also normalizes any -0.0).
    for (VertexId x : w.closure())
        out[x] = plateau;
    return ClassFunction(w, std::move(out));
}

ClassFunction q_step(const WeightedGraph& g, const ClassFunction& f, double t,
                     const EvolutionConfig& config) {
    check_time(t);
    if (t == 0.0)
        return f;
    return cutoff(heat_apply(g, f.values(), t, config), f.exception());
}

namespace {

ClassFunction q_compose(const WeightedGraph& g, const ClassFunction& f, double t,
                        std::size_t steps, const EvolutionConfig& config) {
    const double h = t / double(steps);
    ClassFunction cur = f;
    for (std::size_t i = 0; i < steps; ++i)
        cur = q_step(g, cur, h, config);
    return cur;
}

} // namespace

ClassFunction perpetual_evolve(const WeightedGraph& g, const ClassFunction& f, double t,
                               const EvolutionConfig& config, EvolveStats* stats) {
    check_time(t);
    if (stats)
        *stats = {};
    if (t == 0.0)
        return f;

    const double d = g.max_degree();
    const double norm = sup_norm(f.values());
    ClassFunction prev = q_compose(g, f, t, 1, config);
    std::size_t steps = 1;
    for (int k = 1; k <= config.max_doublings; ++k) {
        steps *= 2;
        ClassFunction cur = q_compose(g, f, t, steps, config);
        const double diff = max_abs_diff(cur.values(), prev.values());
        if (diff < config.partition_tolerance) {
            if (stats) {
                stats->steps = steps;
                stats->doublings = k;
                stats->last_diff = diff;
                stats->error_envelope = 4.0 * t * t * d * d * norm / double(steps);
            }
            return cur;
        }
        prev = std::move(cur);
    }
    throw NoConvergenceError("partition refinement stalled above tolerance " +
                             g17(config.partition_tolerance) + " after " +
                             std::to_string(config.max_doublings) + " doublings (t=" +
                             g17(t) + ")");
}

ScalarField generator_LW(const WeightedGraph& g, const ClassFunction& f) {
    const ScalarField lap = laplacian(g, f.values());
    const ClassFunction slap = cutoff(lap, f.exception());
    ScalarField out(lap.size());
    for (std::size_t x = 0; x < lap.size(); ++x)
        out[x] = (f.values()[x] == f.plateau()) ? slap.values()[x] : lap[x];
    return out;
}

Equilibrium evolve_to_equilibrium(const WeightedGraph& g, const ClassFunction& f,
                                  double flat_tolerance, const EvolutionConfig& config) {
    if (!(flat_tolerance > 0.0))
        throw Error("flat tolerance must be positive");
    const double d = g.max_degree();
    const double horizon = d > 0.0 ? 1e4 / d : 0.0;

    ClassFunction cur = f;
    double time = 0.0;
    double last_min = -std::numeric_limits<double>::infinity();
    double last_max = std::numeric_limits<double>::infinity();
    for (;;) {
        const auto [lo_it, hi_it] = std::minmax_element(cur.values().begin(), cur.values().end());
        const double lo = *lo_it, hi = *hi_it;
        // Drift tolerance: plateau monotone up, max monotone down, modulo
        // truncation error of the heat series.
        const double slack = 10.0 * config.heat_tolerance;
        if (lo < last_min - slack || hi > last_max + slack)
            throw Error("equilibrium envelopes lost monotonicity (min " + g17(lo) + ", max " +
                        g17(hi) + ")");
        last_min = std::max(last_min, lo);
        last_max = std::min(last_max, hi);
        if (hi - lo < flat_tolerance)
            return {0.5 * (hi + lo), time, hi - lo};
        if (time >= horizon)
            throw NoConvergenceError("no equilibrium before the time horizon " + g17(horizon) +
                                     " (spread " + g17(hi - lo) + ")");
        cur = perpetual_evolve(g, cur, 1.0, config);
        time += 1.0;
    }
}

EvolutionTrace trace(const WeightedGraph& g, const ScalarField& f, const ExceptionSet& w,
                     const std::vector<double>& time_grid, const EvolutionConfig& config) {
    if (time_grid.empty() || time_grid.front() != 0.0)
        throw Error("time grid must start at 0");
    for (std::size_t i = 1; i < time_grid.size(); ++i)
        if (!(time_grid[i] > time_grid[i - 1]))
            throw Error("time grid must be strictly increasing");

    EvolutionConfig segment = config;
    segment.partition_tolerance = config.partition_tolerance / 2.0;

    EvolutionTrace out;
    ClassFunction cur = cutoff(f, w);
    out.times = time_grid;
    out.fields.push_back(cur);
    out.gamma_fields.push_back(gamma(g, cur.values()));
    out.step_counts.push_back(0);
    for (std::size_t i = 1; i < time_grid.size(); ++i) {
        EvolveStats stats;
        cur = perpetual_evolve(g, cur, time_grid[i] - time_grid[i - 1], segment, &stats);
        out.fields.push_back(cur);
        out.gamma_fields.push_back(gamma(g, cur.values()));
        out.step_counts.push_back(stats.steps);
    }
    return out;
}

} // namespace curvcut
