#include "curvcut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "curvcut/util.hpp"

namespace curvcut {

double VerificationReport::worst_slack() const {
    double worst = 0.0;
    bool first = true;
    for (const CheckEntry& c : checks) {
        if (first || c.slack < worst)
            worst = c.slack;
        first = false;
    }
    return worst;
}

void VerificationReport::add_check(std::string name, double slack, double tolerance) {
    CheckEntry entry;
    entry.name = std::move(name);
    entry.slack = slack;
    entry.tolerance = tolerance;
    entry.pass = slack >= -tolerance;
    checks.push_back(std::move(entry));
}

void VerificationReport::finalize() {
    verdict = std::all_of(checks.begin(), checks.end(),
                          [](const CheckEntry& c) { return c.pass; });
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckEntry& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"slack", c.slack},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    return {{"theorem", report.theorem},
            {"instance", report.instance},
            {"checks", checks},
            {"verdict", report.verdict ? "pass" : "fail"}};
}

std::string csv_header() {
    return "instance,theorem,worst_slack,verdict";
}

std::string to_csv_row(const VerificationReport& report) {
    return report.instance + "," + report.theorem + "," + g17(report.worst_slack()) + "," +
           (report.verdict ? "pass" : "fail");
}

namespace {

std::vector<VertexId> complement_of(const WeightedGraph& g, const ExceptionSet& w) {
    std::vector<VertexId> out;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        if (!w.in_members(x))
            out.push_back(x);
    return out;
}

std::string describe_set(const ExceptionSet& w) {
    std::ostringstream ss;
    ss << "W={";
    for (std::size_t i = 0; i < w.members().size() && i < 6; ++i)
        ss << (i ? " " : "") << w.members()[i];
    if (w.members().size() > 6)
        ss << " ..x" << w.members().size();
    ss << "}";
    return ss.str();
}

/// Curvature floor over V\W at dimension ∞, or the documented errors.
double theorem_curvature(const WeightedGraph& g, const ExceptionSet& w) {
    const std::vector<VertexId> rest = complement_of(g, w);
    if (rest.empty())
        return std::numeric_limits<double>::infinity();
    const CurvatureProfile profile = curvature_profile(g, kInfiniteDimension);
    const auto k = profile.min_over(rest);
    if (!k)
        throw InfiniteNegativeCurvatureError(
            "a vertex outside W has curvature -inf; the theorems do not apply");
    return *k;
}

} // namespace

VerificationReport check_gradient_estimate(const WeightedGraph& g, const ExceptionSet& w,
                                           const ClassFunction& f,
                                           const std::vector<double>& time_grid,
                                           const EvolutionConfig& config, double k_shift) {
    const double k_solver = theorem_curvature(g, w);
    const double k = (std::isinf(k_solver) ? 0.0 : k_solver) - 1e-9 + k_shift;

    std::vector<double> grid = time_grid;
    if (grid.empty() || grid.front() != 0.0)
        grid.insert(grid.begin(), 0.0);

    const double d = g.max_degree();
    const double pt = config.partition_tolerance;
    const double lip_gamma = 2.0 * d * (sup_norm(f.values()) + pt);
    const double tol_grad = 2.0 * lip_gamma * pt + config.heat_tolerance;

    VerificationReport report;
    report.theorem = "gradient-estimate";
    {
        std::ostringstream ss;
        ss << describe_set(w) << ";K=" << g17(k_solver) << ";shift=" << g17(k_shift);
        report.instance = ss.str();
    }

    const EvolutionTrace tr = trace(g, f.values(), w, grid, config);
    const ScalarField gamma0 = gamma(g, tr.fields.front().values());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const ScalarField heated = heat_apply(g, gamma0, t, config);
        const double decay = std::exp(-2.0 * k * t);
        double slack = std::numeric_limits<double>::infinity();
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            slack = std::min(slack, decay * heated[x] - tr.gamma_fields[i][x]);
        report.add_check("grad t=" + g17(t), slack, tol_grad);
    }
    report.finalize();
    return report;
}

VerificationReport check_distance_bound(const WeightedGraph& g, const ExceptionSet& w) {
    VerificationReport report;
    report.theorem = "distance-bound";

    const double k_solver = theorem_curvature(g, w);
    unsigned max_dist = 0;
    const std::vector<unsigned> dist = bfs_distances(g, w.members());
    for (unsigned dx : dist)
        max_dist = std::max(max_dist, dx);

    double bound;
    if (std::isinf(k_solver)) {
        bound = 1.0; // W = V: the bound degenerates to its additive constant
    } else {
        if (k_solver <= 0.0)
            throw NonpositiveCurvatureError("curvature minimum over V\\W is " +
                                            g17(k_solver) + "; the bound assumes K > 0");
        bound = 2.0 * g.max_degree() / (k_solver - 1e-9) + 1.0;
    }
    {
        std::ostringstream ss;
        ss << describe_set(w) << ";K=" << g17(k_solver) << ";max_d=" << max_dist
           << ";bound=" << g17(bound);
        report.instance = ss.str();
    }
    report.add_check("distance-bound", bound - double(max_dist), 0.0);
    report.finalize();
    return report;
}

VerificationReport check_semigroup_suite(const WeightedGraph& g, const ExceptionSet& w,
                                         const ClassFunction& f,
                                         const EvolutionConfig& config) {
    const double d = g.max_degree();
    const double normf = sup_norm(f.values());
    const double pt = config.partition_tolerance;
    const double ht = config.heat_tolerance;

    VerificationReport report;
    report.theorem = "semigroup-suite";
    report.instance = describe_set(w) + ";n=" + std::to_string(g.vertex_count());

    // Collected evolutions at the times the clauses share.
    auto evolve = [&](const ClassFunction& from, double t) {
        return perpetual_evolve(g, from, t, config);
    };

    // (i) semigroup law; the two routes differ by at most their independent
    // refinement residuals (≤ 2·pt each against the common limit).
    const ClassFunction at_half = evolve(f, 0.5);
    const ClassFunction at_one = evolve(f, 1.0);
    const ClassFunction at_two = evolve(f, 2.0);
    const struct {
        double s, t;
        const ClassFunction* direct;
    } pairs[] = {{0.3, 0.7, &at_one}, {0.5, 0.5, &at_one}, {1.0, 1.0, &at_two}};
    for (const auto& p : pairs) {
        const ClassFunction split = evolve(evolve(f, p.t), p.s);
        const double diff = max_abs_diff(split.values(), p.direct->values());
        report.add_check("law s=" + g17(p.s) + " t=" + g17(p.t), -diff, 4.0 * pt);
    }

    // (ii) contraction and (iii) time-Lipschitz on the evolved fields.
    const struct {
        double t;
        const ClassFunction* field;
    } snaps[] = {{0.5, &at_half}, {1.0, &at_one}, {2.0, &at_two}};
    for (const auto& s : snaps) {
        report.add_check("contraction t=" + g17(s.t),
                         normf - sup_norm(s.field->values()), ht);
        report.add_check("lipschitz t=" + g17(s.t),
                         2.0 * s.t * d * normf - max_abs_diff(s.field->values(), f.values()),
                         pt);
    }

    // (iv) generator at t=0: first-order match against L^W with the step
    // bound 4h²D²‖f‖ per unit step (factor-2 safety).
    const ScalarField lw = generator_LW(g, f);
    for (double h : {1e-2, 1e-3, 1e-4}) {
        const ClassFunction fh = evolve(f, h);
        double resid = 0.0;
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            resid = std::max(resid, std::abs((fh[x] - f[x]) / h - lw[x]));
        report.add_check("generator h=" + g17(h), 8.0 * h * d * d * normf - resid, 0.0);
    }

    // (v) derivative bound and (vi) Γ-derivative inequality at interior
    // times, via a forward step from the evolved base point. Budgets cover
    // the Taylor remainder, the dyadic refinement envelope of the short
    // step, and heat truncation.
    const double h = 1e-3;
    for (const auto& s : {snaps[0], snaps[1]}) {
        const ClassFunction& base = *s.field;
        const ClassFunction ahead = evolve(base, h);
        const ScalarField lap = laplacian(g, base.values());

        double fd = 0.0;
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            fd = std::max(fd, std::abs(ahead[x] - base[x]) / h);
        const double tol_v = 8.0 * h * d * d * normf + 2.0 * ht / h;
        report.add_check("derivative-bound t=" + g17(s.t), sup_norm(lap) - fd, tol_v);

        const ScalarField gamma_base = gamma(g, base.values());
        const ScalarField gamma_ahead = gamma(g, ahead.values());
        const ScalarField cross = gamma(g, base.values(), lap);
        double slack = std::numeric_limits<double>::infinity();
        for (VertexId x = 0; x < g.vertex_count(); ++x) {
            const double lhs = (gamma_ahead[x] - gamma_base[x]) / h;
            slack = std::min(slack, 2.0 * cross[x] - lhs);
        }
        const double tol_vi = 48.0 * h * d * d * d * normf * normf +
                              8.0 * d * normf * ht / h;
        report.add_check("gamma-derivative t=" + g17(s.t), slack, tol_vi);
    }

    // (vii) class preservation on W: Γ vanishes exactly (the plateau is
    // written bit-identically), Γ₂ stays nonnegative up to rounding.
    double worst_gamma = 0.0;
    double worst_gamma2 = std::numeric_limits<double>::infinity();
    for (const auto& s : snaps) {
        const ScalarField gam = gamma(g, s.field->values());
        const ScalarField gam2 = gamma2(g, s.field->values());
        for (VertexId x : w.members()) {
            worst_gamma = std::max(worst_gamma, std::abs(gam[x]));
            worst_gamma2 = std::min(worst_gamma2, gam2[x]);
        }
    }
    report.add_check("gamma-zero-on-W", -worst_gamma, 0.0);
    report.add_check("gamma2-nonneg-on-W", worst_gamma2, 1e-10);

    // (viii) equilibrium constancy.
    const Equilibrium eq = evolve_to_equilibrium(g, f, 1e-6, config);
    report.add_check("equilibrium", -eq.spread, 1e-6);

    report.finalize();
    return report;
}

ExhaustionReport exhaustion_experiment(const WeightedGraph& g, const ScalarField& f,
                                       const std::vector<std::vector<VertexId>>& sets,
                                       double t, const EvolutionConfig& config) {
    if (sets.empty())
        throw EmptySetError("exhaustion experiment needs at least one exception set");

    ExhaustionReport out;
    out.report.theorem = "exhaustion";
    out.report.instance = "sets=" + std::to_string(sets.size()) + ";t=" + g17(t);

    const ScalarField heat = heat_apply(g, f, t, config);
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (k > 0) {
            // W_{k} must be contained in W_{k-1} (the family shrinks).
            std::vector<std::uint8_t> prev(g.vertex_count(), 0);
            for (VertexId x : sets[k - 1])
                prev[x] = 1;
            for (VertexId x : sets[k])
                if (!prev[x])
                    throw Error("exception sets are not nested at step " + std::to_string(k));
        }
        const ExceptionSet w(g, sets[k]);
        const ClassFunction fk = cutoff(f, w);
        out.clip_change.push_back(max_abs_diff(fk.values(), f));
        const ClassFunction evolved = perpetual_evolve(g, fk, t, config);
        out.gaps.push_back(max_abs_diff(evolved.values(), heat));
    }
    for (std::size_t k = 1; k < out.gaps.size(); ++k)
        out.report.add_check("gap-monotone k=" + std::to_string(k),
                             out.gaps[k - 1] - out.gaps[k],
                             2.0 * config.partition_tolerance);
    out.report.finalize();
    return out;
}

ClassFunction random_class_function(const WeightedGraph& g, const ExceptionSet& w,
                                    double amplitude, std::uint64_t seed) {
    if (!(amplitude > 0.0))
        throw Error("amplitude must be positive");
    std::mt19937_64 rng(seed);
    ScalarField f(g.vertex_count());
    for (double& v : f)
        v = amplitude * canonical_uniform(rng);
    return cutoff(f, w);
}

namespace {

ExceptionSet lowest_curvature_vertex(const WeightedGraph& g) {
    const CurvatureProfile profile = curvature_profile(g, kInfiniteDimension);
    VertexId argmin = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const CurvatureResult& r : profile.results) {
        const double v = r.value ? *r.value : -std::numeric_limits<double>::infinity();
        if (v < best) {
            best = v;
            argmin = r.vertex;
        }
    }
    return ExceptionSet(g, {argmin});
}

} // namespace

std::vector<CorpusEntry> family_corpus() {
    std::vector<CorpusEntry> out;
    auto add = [&out](std::string name, WeightedGraph g, std::uint64_t seed) {
        ExceptionSet w = lowest_curvature_vertex(g);
        out.push_back({std::move(name), std::move(g), std::move(w), seed});
    };
    add("k2", make_complete(2), 101);
    add("k3", make_complete(3), 102);
    for (std::size_t n = 4; n <= 8; ++n)
        add("cycle" + std::to_string(n), make_cycle(n), 200 + n);
    for (std::size_t n = 3; n <= 8; ++n)
        add("path" + std::to_string(n), make_path(n), 300 + n);
    for (std::size_t dim = 2; dim <= 4; ++dim)
        add("hypercube" + std::to_string(dim), make_hypercube(dim), 400 + dim);
    return out;
}

std::vector<CorpusEntry> random_corpus(std::size_t count, std::size_t max_vertices,
                                       std::uint64_t base_seed) {
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = base_seed + i;
        std::mt19937_64 rng(seed);
        const std::size_t span = max_vertices >= 4 ? max_vertices - 3 : 1;
        const auto n = 4 + static_cast<std::size_t>(canonical_uniform(rng) * double(span));
        const double p = 0.3 + 0.4 * canonical_uniform(rng);
        WeightedGraph g = make_erdos_renyi(n, p, rng(), MeasureMode::Unit);
        ExceptionSet w = lowest_curvature_vertex(g);
        out.push_back({"er" + std::to_string(i) + "-n" + std::to_string(g.vertex_count()),
                       std::move(g), std::move(w), seed});
    }
    return out;
}

} // namespace curvcut
