// Acceptance gate: one line per criterion, exit 0 only if every criterion
// holds within its runtime budget. Each criterion re-derives its own
// instances from fixed seeds so the run is reproducible end to end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvcut/curvature.hpp"
#include "curvcut/errors.hpp"
#include "curvcut/gamma.hpp"
#include "curvcut/semigroup.hpp"
#include "curvcut/util.hpp"
#include "curvcut/verify.hpp"

namespace fs = std::filesystem;
using namespace curvcut;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int g_failures = 0;

void run_criterion(int id, const std::string& label, double budget_s,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const double t0 = now_s();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed = now_s() - t0;
    if (elapsed >= budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over budget ") +
                  g17(budget_s) + " s";
    }
    if (!ok)
        ++g_failures;
    std::printf("%s criterion %d: %s — %s (%.1f s)\n", ok ? "PASS" : "FAIL", id,
                label.c_str(), detail.c_str(), elapsed);
    std::fflush(stdout);
}

std::vector<CorpusEntry> shared_corpus() {
    auto corpus = family_corpus();
    auto randoms = random_corpus(50, 15, 5000);
    for (auto& e : randoms)
        corpus.push_back(std::move(e));
    return corpus;
}

/// Slow-mixing tight instance for the negative control: on a long path the
/// curvature floor is 0 and a ramp's gradient barely decays, so any
/// artificial positive shift in the decay rate must be caught.
struct TightInstance {
    WeightedGraph graph;
    ExceptionSet w;
    ScalarField ramp;

    TightInstance()
        : graph(make_path(12)), w(graph, {0}), ramp(12) {
        for (std::size_t i = 0; i < ramp.size(); ++i)
            ramp[i] = std::min(std::max(0.0, double(i) - 1.0), 6.0);
    }
};

bool criterion_oracle(std::string& detail) {
    const auto corpus = shared_corpus();
    double max_dev = 0.0;
    std::size_t vertices = 0;
    for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
        const auto& e = corpus[gi];
        const auto profile = curvature_profile(e.graph, kInfiniteDimension);
        for (const auto& r : profile.results) {
            ++vertices;
            if (!r.value) {
                detail = "solver reports -inf on " + e.name;
                return false;
            }
            const double bf = brute_force_curvature(
                e.graph, r.vertex, kInfiniteDimension, 24,
                90000 + 131 * gi + r.vertex);
            const double dev = std::abs(bf - *r.value);
            max_dev = std::max(max_dev, dev);
            if (dev > 1e-6) {
                detail = "solver/search split " + g17(dev) + " on " + e.name +
                         " vertex " + std::to_string(r.vertex);
                return false;
            }
        }
    }
    const auto k2 = make_complete(2);
    for (VertexId x : {0u, 1u}) {
        const auto r = curvature_at(k2, x, kInfiniteDimension);
        if (!r.value || std::abs(*r.value - 2.0) > 1e-9) {
            detail = "K2 vertex " + std::to_string(x) + " off the exact value 2";
            return false;
        }
    }
    detail = std::to_string(corpus.size()) + " graphs, " +
             std::to_string(vertices) + " vertices, max |solver-search| = " +
             g17(max_dev);
    return true;
}

bool criterion_dimension_chain(std::string& detail) {
    const auto corpus = shared_corpus();
    double worst = std::numeric_limits<double>::infinity();
    std::size_t fields = 0;
    for (const auto& e : corpus) {
        const double d = e.graph.max_degree();
        const auto inf_profile = curvature_profile(e.graph, kInfiniteDimension);
        for (double n : {1.0, 2.0, 5.0, 50.0}) {
            const auto n_profile = curvature_profile(e.graph, n);
            for (VertexId x = 0; x < e.graph.vertex_count(); ++x) {
                const auto& ki = inf_profile.results[x].value;
                const auto& kn = n_profile.results[x].value;
                if (!ki || !kn) {
                    detail = "-inf curvature on " + e.name;
                    return false;
                }
                worst = std::min(worst, *ki - *kn);                   // K(x;∞) ≥ K(x;n)
                worst = std::min(worst, *kn - (*ki - 2.0 * d / n));   // ≥ K(x;∞) − 2D/n
            }
        }
        if (worst < -1e-8) {
            detail = "chain slack " + g17(worst) + " on " + e.name;
            return false;
        }
        // (Δf)² ≤ 2DΓf is the Cauchy-Schwarz half of the chain.
        std::mt19937_64 rng(0x5eedf1e1d ^ e.seed);
        for (int rep = 0; rep < 1000; ++rep) {
            ++fields;
            ScalarField f(e.graph.vertex_count());
            for (double& v : f)
                v = 2.0 * canonical_uniform(rng) - 1.0;
            const auto lf = laplacian(e.graph, f);
            const auto gf = gamma(e.graph, f);
            for (VertexId x = 0; x < e.graph.vertex_count(); ++x)
                if (lf[x] * lf[x] > 2.0 * d * gf[x] + 1e-10) {
                    detail = "(Δf)² > 2DΓf on " + e.name;
                    return false;
                }
        }
    }
    detail = "chain slack ≥ " + g17(worst) + " over 4 dimensions; " +
             std::to_string(fields) + " gradient fields";
    return true;
}

bool criterion_semigroup_suite(std::string& detail) {
    const auto corpus = shared_corpus();
    EvolutionConfig cfg;
    cfg.partition_tolerance = 1e-6;
    double worst = std::numeric_limits<double>::infinity();
    std::string worst_at;
    for (const auto& e : corpus) {
        const auto f = random_class_function(e.graph, e.w, 1.0, e.seed);
        const auto rep = check_semigroup_suite(e.graph, e.w, f, cfg);
        if (!rep.verdict) {
            for (const auto& c : rep.checks)
                if (!c.pass) {
                    detail = e.name + " failed " + c.name + " (slack " +
                             g17(c.slack) + ", tol " + g17(c.tolerance) + ")";
                    return false;
                }
        }
        if (rep.worst_slack() < worst) {
            worst = rep.worst_slack();
            worst_at = e.name;
        }
    }
    detail = std::to_string(corpus.size()) + " instances x 19 checks, worst slack " +
             g17(worst) + " at " + worst_at;
    return true;
}

bool criterion_gradient(std::string& detail) {
    EvolutionConfig cfg;
    cfg.partition_tolerance = 1e-5;
    const std::vector<double> grid = {0.1, 0.5, 1.0, 2.0};
    std::size_t instances = 0;
    int control_failures = 0;

    auto run_pair = [&](const WeightedGraph& g, const ExceptionSet& w,
                        const ClassFunction& f, const std::string& name) -> bool {
        ++instances;
        const auto honest = check_gradient_estimate(g, w, f, grid, cfg);
        if (!honest.verdict) {
            detail = "estimate failed at solver K on " + name + " (worst " +
                     g17(honest.worst_slack()) + ")";
            return false;
        }
        const auto control = check_gradient_estimate(g, w, f, grid, cfg, 0.5);
        if (!control.verdict)
            ++control_failures;
        return true;
    };

    const auto sweep = random_corpus(20, 25, 7000);
    for (const auto& e : sweep)
        for (std::uint64_t j = 0; j < 10; ++j) {
            const auto f =
                random_class_function(e.graph, e.w, 1.0, e.seed * 64 + j);
            if (!run_pair(e.graph, e.w, f, e.name))
                return false;
        }
    for (const auto& e : family_corpus()) {
        const auto f = random_class_function(e.graph, e.w, 1.0, e.seed);
        if (!run_pair(e.graph, e.w, f, e.name))
            return false;
    }
    // Tight slow-mixing instance; this is where the shifted control must bite.
    const TightInstance tight;
    if (!run_pair(tight.graph, tight.w, cutoff(tight.ramp, tight.w), "path12-ramp"))
        return false;

    if (control_failures < 1) {
        detail = "K+0.5 negative control never failed across " +
                 std::to_string(instances) + " instances";
        return false;
    }
    detail = std::to_string(instances) + " instances pass at solver K; control failed on " +
             std::to_string(control_failures);
    return true;
}

bool criterion_distance_bound(std::string& detail) {
    auto instances = shared_corpus();
    for (std::size_t dim = 2; dim <= 6; ++dim) {
        WeightedGraph g = make_hypercube(dim);
        ExceptionSet w(g, {0});
        instances.push_back({"hypercube" + std::to_string(dim) + "-w0",
                             std::move(g), std::move(w), 0});
    }
    std::size_t applicable = 0, skipped = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    std::string tightest;
    for (const auto& e : instances) {
        try {
            const auto rep = check_distance_bound(e.graph, e.w);
            ++applicable;
            if (!rep.verdict) {
                detail = "violated on " + e.name + " [" + rep.instance + "]";
                return false;
            }
            if (rep.worst_slack() < min_gap) {
                min_gap = rep.worst_slack();
                tightest = e.name;
            }
        } catch (const NonpositiveCurvatureError&) {
            ++skipped; // K ≤ 0 on V\W: the bound does not claim anything
        }
    }
    if (applicable == 0) {
        detail = "no instance had K > 0";
        return false;
    }
    detail = std::to_string(applicable) + " applicable instances, 0 violations, min gap " +
             g17(min_gap) + " at " + tightest + "; " + std::to_string(skipped) +
             " skipped (K <= 0)";
    return true;
}

bool criterion_heat_engine(std::string& detail) {
    const auto k2 = make_complete(2);
    double closed_dev = 0.0;
    for (double t : {0.05, 0.3, 1.0, 2.5}) {
        const auto u = heat_apply(k2, {0.0, 1.0}, t);
        closed_dev = std::max(closed_dev,
                              std::abs(u[0] - (1.0 - std::exp(-2.0 * t)) / 2.0));
        closed_dev = std::max(closed_dev,
                              std::abs(u[1] - (1.0 + std::exp(-2.0 * t)) / 2.0));
    }
    if (closed_dev > 1e-10) {
        detail = "K2 closed form off by " + g17(closed_dev);
        return false;
    }

    double worst_mass = 0.0;
    for (const auto& e : shared_corpus()) {
        std::mt19937_64 rng(0x6ea7u ^ e.seed);
        for (int rep = 0; rep < 3; ++rep) {
            ScalarField f(e.graph.vertex_count());
            for (double& v : f)
                v = canonical_uniform(rng);
            double mass0 = 0.0;
            for (VertexId x = 0; x < e.graph.vertex_count(); ++x)
                mass0 += e.graph.measure(x) * f[x];
            for (double t : {0.1, 1.0, 5.0}) {
                const auto u = heat_apply(e.graph, f, t);
                double mass1 = 0.0, low = 0.0;
                for (VertexId x = 0; x < e.graph.vertex_count(); ++x) {
                    mass1 += e.graph.measure(x) * u[x];
                    low = std::min(low, u[x]);
                }
                if (low < 0.0) {
                    detail = "negative entry from nonnegative input on " + e.name;
                    return false;
                }
                const double rel = std::abs(mass1 - mass0) / std::max(std::abs(mass0), 1e-300);
                worst_mass = std::max(worst_mass, rel);
                if (rel > 1e-10) {
                    detail = "mass drift " + g17(rel) + " on " + e.name;
                    return false;
                }
            }
        }
    }
    detail = "closed form within " + g17(closed_dev) + ", worst relative mass drift " +
             g17(worst_mass) + ", positivity clean";
    return true;
}

bool criterion_exhaustion(std::string& detail) {
    const auto g = make_path(50);
    ScalarField f(50);
    for (std::size_t i = 0; i < 50; ++i)
        f[i] = double(i) / 49.0;
    std::vector<std::vector<VertexId>> sets;
    for (std::size_t top : {30, 25, 20, 15, 10, 5, 2, 1}) {
        std::vector<VertexId> w(top);
        for (std::size_t i = 0; i < top; ++i)
            w[i] = VertexId(i);
        sets.push_back(std::move(w));
    }
    EvolutionConfig cfg;
    cfg.partition_tolerance = 1e-5;
    const auto out = exhaustion_experiment(g, f, sets, 1.0, cfg);
    if (!out.report.verdict) {
        detail = "gap sequence not monotone: worst slack " +
                 g17(out.report.worst_slack());
        return false;
    }
    detail = "gaps " + g17(out.gaps.front()) + " -> " + g17(out.gaps.back()) +
             " over " + std::to_string(sets.size()) + " nested sets";
    return true;
}

bool criterion_determinism(std::string& detail) {
    EvolutionConfig cfg;
    cfg.partition_tolerance = 1e-4;
    const auto families = family_corpus();
    const TightInstance tight;

    auto emit = [&](const fs::path& dir) {
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::vector<VerificationReport> reports;
        for (const auto& e : families) {
            if (e.name != "k2" && e.name != "path5" && e.name != "hypercube3")
                continue;
            const auto f = random_class_function(e.graph, e.w, 1.0, e.seed);
            auto rep = check_semigroup_suite(e.graph, e.w, f, cfg);
            std::ofstream(dir / ("suite-" + e.name + ".json"))
                << to_json(rep).dump(2) << "\n";
            reports.push_back(std::move(rep));
        }
        auto grad = check_gradient_estimate(tight.graph, tight.w,
                                            cutoff(tight.ramp, tight.w),
                                            {0.5, 2.0}, cfg);
        std::ofstream(dir / "gradient-path12.json") << to_json(grad).dump(2) << "\n";
        reports.push_back(std::move(grad));

        const auto cube = make_hypercube(3);
        auto bound = check_distance_bound(cube, ExceptionSet(cube, {0}));
        std::ofstream(dir / "bound-hypercube3.json") << to_json(bound).dump(2) << "\n";
        reports.push_back(std::move(bound));

        std::ofstream csv(dir / "summary.csv");
        csv << csv_header() << "\n";
        for (const auto& r : reports)
            csv << to_csv_row(r) << "\n";
    };

    const fs::path a = "determinism-a", b = "determinism-b";
    emit(a);
    emit(b);

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        std::ifstream fa(entry.path(), std::ios::binary);
        std::ifstream fb(b / name, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (!fb || sa.str() != sb.str() || sa.str().empty()) {
            detail = "report " + name.string() + " differs between runs";
            return false;
        }
        ++compared;
    }
    detail = std::to_string(compared) + " report files byte-identical across two runs";
    return compared > 0;
}

} // namespace

int main() {
    run_criterion(1, "curvature solver matches the derivative-free search oracle", 60,
                  criterion_oracle);
    run_criterion(2, "finite-dimension curvature chain and degree bound", 60,
                  criterion_dimension_chain);
    run_criterion(3, "perpetual-cutoff semigroup property suite", 180,
                  criterion_semigroup_suite);
    run_criterion(4, "gradient estimate with shifted negative control", 300,
                  criterion_gradient);
    run_criterion(5, "distance bound under positive curvature", 120,
                  criterion_distance_bound);
    run_criterion(6, "heat engine closed form, mass, positivity", 30,
                  criterion_heat_engine);
    run_criterion(7, "exhaustion gap monotonicity on a long path", 120,
                  criterion_exhaustion);
    run_criterion(8, "byte-identical reports across repeated runs", 60,
                  criterion_determinism);
    if (g_failures == 0) {
        std::printf("all 8 acceptance criteria hold\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", g_failures);
    return 1;
}
