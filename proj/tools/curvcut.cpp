// curvcut: curvature profiles, perpetual-cutoff heat flow, and theorem
// verification on finite weighted graphs, from the command line.
//
// Exit codes: 0 all checks pass (or pure computation succeeded), 1 at least
// one theorem check failed, 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "curvcut/curvature.hpp"
#include "curvcut/errors.hpp"
#include "curvcut/gamma.hpp"
#include "curvcut/io.hpp"
#include "curvcut/semigroup.hpp"
#include "curvcut/util.hpp"
#include "curvcut/verify.hpp"

namespace fs = std::filesystem;
using namespace curvcut;

namespace {

struct Options {
    std::string graph_path;
    std::string gen_spec;
    std::string measure = "unit";
    std::string w_spec;
    std::string field_spec;
    std::string grid_spec;
    std::string dimension = "inf";
    double t = 1.0;
    double threshold = 0.0;
    bool threshold_set = false;
    std::uint64_t seed = 42;
    double tol_heat = 1e-12;
    double tol_partition = 1e-8;
    std::string out_dir = ".";
};

struct Instance {
    WeightedGraph graph;
    EdgeListData names;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw ParseError("trailing characters in " + what + ": '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("expected a number for " + what + ", got '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ParseError(what + " out of range: '" + s + "'");
    }
}

std::uint64_t parse_seed(const std::string& s) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size())
            throw ParseError("trailing characters in seed: '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("expected an integer seed, got '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ParseError("seed out of range: '" + s + "'");
    }
}

double parse_dimension(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF")
        return kInfiniteDimension;
    const double n = parse_real(s, "--dimension");
    if (!(n > 0.0))
        throw ParseError("--dimension must be positive or 'inf'");
    return n;
}

WeightedGraph generate(const std::string& spec, MeasureMode mode, std::uint64_t seed) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos || colon + 1 >= spec.size())
        throw ParseError("--gen expects FAMILY:PARAMS, got '" + spec + "'");
    const std::string family = spec.substr(0, colon);
    const auto params = split(spec.substr(colon + 1), ',');
    auto count = [&](std::size_t want) {
        if (params.size() != want)
            throw ParseError("--gen " + family + " expects " + std::to_string(want) +
                             " parameter(s)");
    };
    auto size_of = [&](const std::string& p) {
        const double v = parse_real(p, "--gen size");
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e6)
            throw ParseError("--gen size must be a small positive integer, got '" + p + "'");
        return static_cast<std::size_t>(v);
    };
    if (family == "complete") {
        count(1);
        return make_complete(size_of(params[0]), mode);
    }
    if (family == "cycle") {
        count(1);
        return make_cycle(size_of(params[0]), mode);
    }
    if (family == "path") {
        count(1);
        return make_path(size_of(params[0]), mode);
    }
    if (family == "hypercube") {
        count(1);
        return make_hypercube(size_of(params[0]), mode);
    }
    if (family == "erdos_renyi") {
        if (params.size() != 2 && params.size() != 3)
            throw ParseError("--gen erdos_renyi expects N,P[,SEED]");
        const auto n = size_of(params[0]);
        const double p = parse_real(params[1], "--gen edge probability");
        const std::uint64_t s = params.size() == 3 ? parse_seed(params[2]) : seed;
        return make_erdos_renyi(n, p, s, mode);
    }
    throw ParseError("unknown --gen family '" + family +
                     "' (complete, cycle, path, hypercube, erdos_renyi)");
}

Instance load_instance(const Options& opt) {
    if (opt.graph_path.empty() == opt.gen_spec.empty())
        throw ParseError("provide exactly one of --graph and --gen");

    if (!opt.gen_spec.empty()) {
        MeasureMode mode = MeasureMode::Unit;
        if (opt.measure == "degree")
            mode = MeasureMode::Degree;
        else if (opt.measure != "unit")
            throw ParseError("--measure for generated graphs must be unit or degree");
        WeightedGraph g = generate(opt.gen_spec, mode, opt.seed);
        EdgeListData names = default_labels(g.vertex_count());
        return {std::move(g), std::move(names)};
    }

    EdgeListData data = parse_edge_list_file(opt.graph_path);
    if (opt.measure == "unit")
        return {WeightedGraph::build(data.edges, MeasureMode::Unit), std::move(data)};
    if (opt.measure == "degree")
        return {WeightedGraph::build(data.edges, MeasureMode::Degree), std::move(data)};
    const auto m = parse_measure_file(opt.measure, data);
    return {WeightedGraph::build(data.edges, MeasureMode::Explicit, m), std::move(data)};
}

ExceptionSet load_exception_set(const Options& opt, const Instance& inst) {
    if (opt.w_spec.empty())
        throw ParseError("--w is required (path to a vertex file, or a comma-separated list)");
    if (fs::exists(opt.w_spec))
        return ExceptionSet(inst.graph, parse_vertex_set_file(opt.w_spec, inst.names));
    std::vector<VertexId> members;
    for (const auto& label : split(opt.w_spec, ','))
        members.push_back(inst.names.require(label));
    return ExceptionSet(inst.graph, members);
}

ScalarField load_field(const Options& opt, const Instance& inst) {
    std::string spec = opt.field_spec;
    if (spec.empty())
        spec = "random:" + std::to_string(opt.seed);
    if (spec.rfind("random", 0) == 0) {
        std::uint64_t seed = opt.seed;
        if (spec.size() > 6) {
            if (spec[6] != ':')
                throw ParseError("--field expects PATH or random:SEED, got '" + spec + "'");
            seed = parse_seed(spec.substr(7));
        }
        std::mt19937_64 rng(seed);
        ScalarField f(inst.graph.vertex_count());
        for (double& v : f)
            v = canonical_uniform(rng);
        return f;
    }
    return parse_field_file(spec, inst.names);
}

std::vector<double> load_grid(const Options& opt, std::vector<double> fallback) {
    if (opt.grid_spec.empty())
        return fallback;
    std::vector<double> grid;
    for (const auto& tok : split(opt.grid_spec, ','))
        grid.push_back(parse_real(tok, "--grid"));
    return grid;
}

EvolutionConfig evolution_config(const Options& opt) {
    EvolutionConfig cfg;
    cfg.heat_tolerance = opt.tol_heat;
    cfg.partition_tolerance = opt.tol_partition;
    return cfg;
}

fs::path ensure_out(const Options& opt) {
    fs::path dir = opt.out_dir;
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out)
        throw Error("cannot write " + p.string());
    return out;
}

void write_profile_csv(const fs::path& p, const CurvatureProfile& profile,
                       const EdgeListData& names) {
    auto out = open_out(p);
    out << "vertex,dimension,curvature\n";
    for (const auto& r : profile.results)
        out << names.labels[r.vertex] << "," << g17(profile.dimension) << ","
            << (r.value ? g17(*r.value) : "-inf") << "\n";
}

void write_profile_json(const fs::path& p, const CurvatureProfile& profile,
                        const EdgeListData& names) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : profile.results) {
        nlohmann::ordered_json row;
        row["vertex"] = names.labels[r.vertex];
        if (std::isinf(profile.dimension))
            row["dimension"] = "inf";
        else
            row["dimension"] = profile.dimension;
        if (r.value)
            row["curvature"] = *r.value;
        else
            row["curvature"] = "-inf";
        rows.push_back(std::move(row));
    }
    open_out(p) << rows.dump(2) << "\n";
}

void write_trace_csv(const fs::path& p, const EdgeListData& names,
                     const std::vector<double>& times,
                     const std::vector<ScalarField>& fields,
                     const std::vector<ScalarField>& gammas) {
    auto out = open_out(p);
    out << "t,vertex,value,gamma\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        for (std::size_t x = 0; x < fields[i].size(); ++x)
            out << g17(times[i]) << "," << names.labels[x] << "," << g17(fields[i][x])
                << "," << g17(gammas[i][x]) << "\n";
}

void write_report_json(const fs::path& p, const VerificationReport& rep) {
    open_out(p) << to_json(rep).dump(2) << "\n";
}

void write_summary_csv(const fs::path& p, const std::vector<VerificationReport>& reports) {
    auto out = open_out(p);
    out << csv_header() << "\n";
    for (const auto& r : reports)
        out << to_csv_row(r) << "\n";
}

nlohmann::ordered_json not_applicable_json(const std::string& reason) {
    return {{"theorem", "distance-bound"},
            {"instance", reason},
            {"checks", nlohmann::ordered_json::array()},
            {"verdict", "not-applicable"}};
}

int cmd_curvature(const Options& opt) {
    const Instance inst = load_instance(opt);
    const double dim = parse_dimension(opt.dimension);
    const CurvatureProfile profile = curvature_profile(inst.graph, dim);
    const fs::path dir = ensure_out(opt);
    write_profile_csv(dir / "profile.csv", profile, inst.names);
    write_profile_json(dir / "profile.json", profile, inst.names);

    std::size_t sentinels = 0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : profile.results) {
        if (!r.value) {
            ++sentinels;
            continue;
        }
        lo = std::min(lo, *r.value);
        hi = std::max(hi, *r.value);
    }
    std::printf("curvature profile: %zu vertices, dimension %s\n",
                profile.results.size(), g17(dim).c_str());
    if (sentinels < profile.results.size())
        std::printf("  range [%s, %s], %zu vertices at -inf\n", g17(lo).c_str(),
                    g17(hi).c_str(), sentinels);
    else
        std::printf("  all vertices at -inf\n");

    if (opt.threshold_set) {
        auto w_path = dir / "exceptions.txt";
        try {
            const ExceptionSet w = exception_set(inst.graph, profile, opt.threshold);
            auto out = open_out(w_path);
            for (VertexId x : w.members())
                out << inst.names.labels[x] << "\n";
            std::printf("  exception set K < %s: %zu vertices -> %s\n",
                        g17(opt.threshold).c_str(), w.members().size(),
                        w_path.string().c_str());
        } catch (const EmptySetError&) {
            open_out(w_path);
            std::printf("  exception set K < %s: empty\n", g17(opt.threshold).c_str());
        }
    }
    std::printf("wrote %s and %s\n", (dir / "profile.csv").string().c_str(),
                (dir / "profile.json").string().c_str());
    return 0;
}

int cmd_evolve(const Options& opt) {
    const Instance inst = load_instance(opt);
    const ExceptionSet w = load_exception_set(opt, inst);
    const ScalarField f = load_field(opt, inst);
    const EvolutionConfig cfg = evolution_config(opt);

    std::vector<double> grid = load_grid(opt, {0.0, opt.t / 4.0, opt.t / 2.0, opt.t});
    if (grid.empty() || grid.front() != 0.0)
        grid.insert(grid.begin(), 0.0);

    const EvolutionTrace tr = trace(inst.graph, f, w, grid, cfg);
    std::vector<ScalarField> perpetual, perpetual_gamma;
    for (const auto& cf : tr.fields) {
        perpetual.push_back(cf.values());
        perpetual_gamma.push_back(gamma(inst.graph, cf.values()));
    }
    std::vector<ScalarField> heat, heat_gamma;
    for (double s : grid) {
        heat.push_back(heat_apply(inst.graph, f, s, cfg));
        heat_gamma.push_back(gamma(inst.graph, heat.back()));
    }

    const fs::path dir = ensure_out(opt);
    write_trace_csv(dir / "trace-perpetual.csv", inst.names, grid, perpetual,
                    perpetual_gamma);
    write_trace_csv(dir / "trace-heat.csv", inst.names, grid, heat, heat_gamma);

    const double gap = max_abs_diff(perpetual.back(), heat.back());
    std::printf("evolved to t=%s on %zu grid points (final refinement: %zu steps)\n",
                g17(grid.back()).c_str(), grid.size(), tr.step_counts.back());
    std::printf("  sup-norm gap between cutoff and plain heat at t=%s: %s\n",
                g17(grid.back()).c_str(), g17(gap).c_str());
    std::printf("wrote %s and %s\n", (dir / "trace-perpetual.csv").string().c_str(),
                (dir / "trace-heat.csv").string().c_str());
    return 0;
}

int cmd_verify(const Options& opt) {
    const Instance inst = load_instance(opt);
    const ExceptionSet w = load_exception_set(opt, inst);
    const ScalarField raw = load_field(opt, inst);
    const ClassFunction f = cutoff(raw, w);
    const EvolutionConfig cfg = evolution_config(opt);
    const fs::path dir = ensure_out(opt);

    std::vector<VerificationReport> reports;
    reports.push_back(check_semigroup_suite(inst.graph, w, f, cfg));
    write_report_json(dir / "semigroup-suite.json", reports.back());

    const auto grid = load_grid(opt, {0.1, 0.5, 1.0, 2.0});
    bool bound_applicable = true;
    std::string bound_reason;
    try {
        reports.push_back(check_gradient_estimate(inst.graph, w, f, grid, cfg));
        write_report_json(dir / "gradient-estimate.json", reports.back());
        reports.push_back(check_distance_bound(inst.graph, w));
        write_report_json(dir / "distance-bound.json", reports.back());
    } catch (const NonpositiveCurvatureError& e) {
        bound_applicable = false;
        bound_reason = e.what();
    } catch (const InfiniteNegativeCurvatureError& e) {
        bound_applicable = false;
        bound_reason = e.what();
    }
    if (!bound_applicable)
        open_out(dir / "distance-bound.json")
            << not_applicable_json(bound_reason).dump(2) << "\n";
    write_summary_csv(dir / "summary.csv", reports);

    bool all = true;
    for (const auto& r : reports) {
        std::printf("%s %s [%s] worst slack %s\n", r.verdict ? "pass" : "FAIL",
                    r.theorem.c_str(), r.instance.c_str(), g17(r.worst_slack()).c_str());
        all = all && r.verdict;
    }
    if (!bound_applicable)
        std::printf("n/a  curvature theorems need K > 0 on V\\W: %s\n",
                    bound_reason.c_str());
    std::printf("wrote reports to %s\n", dir.string().c_str());
    return all ? 0 : 1;
}

int cmd_bound(const Options& opt) {
    const Instance inst = load_instance(opt);
    const ExceptionSet w = load_exception_set(opt, inst);
    const fs::path dir = ensure_out(opt);
    try {
        const auto rep = check_distance_bound(inst.graph, w);
        write_report_json(dir / "distance-bound.json", rep);
        write_summary_csv(dir / "summary.csv", {rep});
        std::printf("%s distance-bound [%s] slack %s\n", rep.verdict ? "pass" : "FAIL",
                    rep.instance.c_str(), g17(rep.worst_slack()).c_str());
        return rep.verdict ? 0 : 1;
    } catch (const NonpositiveCurvatureError& e) {
        open_out(dir / "distance-bound.json")
            << not_applicable_json(e.what()).dump(2) << "\n";
        std::printf("not applicable: %s\n", e.what());
        return 0;
    } catch (const InfiniteNegativeCurvatureError& e) {
        open_out(dir / "distance-bound.json")
            << not_applicable_json(e.what()).dump(2) << "\n";
        std::printf("not applicable: %s\n", e.what());
        return 0;
    }
}

int cmd_exhaust(const Options& opt) {
    const Instance inst = load_instance(opt);
    const ExceptionSet w0 = load_exception_set(opt, inst);
    const ScalarField f = load_field(opt, inst);
    const EvolutionConfig cfg = evolution_config(opt);

    // Shrink the given set by halving its (ascending) member list until a
    // single vertex remains.
    std::vector<std::vector<VertexId>> sets = {w0.members()};
    while (sets.back().size() > 1) {
        const auto& prev = sets.back();
        sets.push_back(std::vector<VertexId>(prev.begin(),
                                             prev.begin() + (prev.size() + 1) / 2));
    }

    const ExhaustionReport out = exhaustion_experiment(inst.graph, f, sets, opt.t, cfg);
    const fs::path dir = ensure_out(opt);
    auto j = to_json(out.report);
    j["gaps"] = out.gaps;
    j["clip_change"] = out.clip_change;
    open_out(dir / "exhaustion.json") << j.dump(2) << "\n";
    write_summary_csv(dir / "summary.csv", {out.report});

    std::printf("%s exhaustion over %zu nested sets at t=%s\n",
                out.report.verdict ? "pass" : "FAIL", sets.size(), g17(opt.t).c_str());
    for (std::size_t k = 0; k < out.gaps.size(); ++k)
        std::printf("  |W_%zu| = %zu: gap %s, clip change %s\n", k + 1, sets[k].size(),
                    g17(out.gaps[k]).c_str(), g17(out.clip_change[k]).c_str());
    std::printf("wrote %s\n", (dir / "exhaustion.json").string().c_str());
    return out.report.verdict ? 0 : 1;
}

int cmd_gen(const Options& opt) {
    if (opt.gen_spec.empty())
        throw ParseError("gen requires --gen FAMILY:PARAMS");
    const Instance inst = load_instance(opt);
    std::string name = opt.gen_spec;
    for (char& c : name)
        if (c == ':' || c == ',')
            c = '-';
    const fs::path dir = ensure_out(opt);
    const fs::path path = dir / (name + ".edges");
    {
        auto out = open_out(path);
        write_edge_list(out, inst.graph, inst.names.labels);
    }
    std::printf("wrote %s (%zu vertices, %zu edges)\n", path.string().c_str(),
                inst.graph.vertex_count(), inst.graph.edge_count());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Bakry-Emery curvature and perpetual-cutoff heat flow on weighted graphs"};
    app.require_subcommand(1);

    auto add_instance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--graph", opt.graph_path, "edge list file: `u v [weight]` per line");
        cmd->add_option("--gen", opt.gen_spec,
                        "generate instead of reading: complete:N, cycle:N, path:N, "
                        "hypercube:D, erdos_renyi:N,P[,SEED]");
        cmd->add_option("--measure", opt.measure,
                        "vertex measure: unit, degree, or a `v m` file path");
        cmd->add_option("--seed", opt.seed, "seed for generation and random fields");
    };
    auto add_w_flag = [&](CLI::App* cmd) {
        cmd->add_option("--w", opt.w_spec,
                        "exception set: vertex file path, or comma-separated labels");
    };
    auto add_field_flag = [&](CLI::App* cmd) {
        cmd->add_option("--field", opt.field_spec,
                        "initial field: `v value` file, or random:SEED (default random:--seed)");
    };
    auto add_evolution_flags = [&](CLI::App* cmd) {
        cmd->add_option("--tol-heat", opt.tol_heat, "heat truncation tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-partition", opt.tol_partition,
                        "partition refinement stop tolerance (1e-5 is a good desk-scale "
                        "setting; the 1e-8 default is slow on sparse graphs)")
            ->check(CLI::PositiveNumber);
    };
    auto add_out_flag = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_dir, "output directory (default .)");
    };

    auto* curvature = app.add_subcommand("curvature", "per-vertex curvature profile");
    add_instance_flags(curvature);
    add_out_flag(curvature);
    curvature->add_option("--dimension", opt.dimension, "CD dimension: positive real or inf");
    curvature->add_option("--threshold", opt.threshold,
                          "also emit the exception set {K < threshold}")
        ->each([&](const std::string&) { opt.threshold_set = true; });

    auto* evolve = app.add_subcommand("evolve", "trace the cutoff and plain heat flows");
    add_instance_flags(evolve);
    add_w_flag(evolve);
    add_field_flag(evolve);
    add_out_flag(evolve);
    add_evolution_flags(evolve);
    evolve->add_option("--t", opt.t, "final time (default grid 0,t/4,t/2,t)")
        ->check(CLI::NonNegativeNumber);
    evolve->add_option("--grid", opt.grid_spec, "comma-separated times (overrides --t grid)");

    auto* verify = app.add_subcommand("verify", "run every theorem check on one instance");
    add_instance_flags(verify);
    add_w_flag(verify);
    add_field_flag(verify);
    add_out_flag(verify);
    add_evolution_flags(verify);
    verify->add_option("--grid", opt.grid_spec,
                       "gradient-estimate time grid (default 0.1,0.5,1,2)");

    auto* bound = app.add_subcommand("bound", "eccentricity bound for the exception set");
    add_instance_flags(bound);
    add_w_flag(bound);
    add_out_flag(bound);

    auto* exhaust = app.add_subcommand("exhaust", "gap decay along a shrinking set family");
    add_instance_flags(exhaust);
    add_w_flag(exhaust);
    add_field_flag(exhaust);
    add_out_flag(exhaust);
    add_evolution_flags(exhaust);
    exhaust->add_option("--t", opt.t, "evolution time")->check(CLI::NonNegativeNumber);

    auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    add_instance_flags(gen);
    add_out_flag(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (curvature->parsed())
            return cmd_curvature(opt);
        if (evolve->parsed())
            return cmd_evolve(opt);
        if (verify->parsed())
            return cmd_verify(opt);
        if (bound->parsed())
            return cmd_bound(opt);
        if (exhaust->parsed())
            return cmd_exhaust(opt);
        if (gen->parsed())
            return cmd_gen(opt);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
