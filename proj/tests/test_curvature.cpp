#include "doctest.h"

#include <cmath>
#include <random>

#include "curvcut/curvature.hpp"
#include "curvcut/util.hpp"

using namespace curvcut;

namespace {

ScalarField field_from_certificate(const CurvatureResult& r, std::size_t n) {
    ScalarField f(n, 0.0);
    for (const auto& [v, val] : r.certificate)
        f[v] = val;
    return f;
}

} // namespace

TEST_CASE("K2 curvature is exactly 2") {
    const auto k2 = make_complete(2);
    for (VertexId x : {0u, 1u}) {
        const auto r = curvature_at(k2, x, kInfiniteDimension);
        REQUIRE(r.value.has_value());
        CHECK(*r.value == doctest::Approx(2.0).epsilon(1e-9));
    }
    const auto profile = curvature_profile(k2, kInfiniteDimension);
    CHECK(*profile.global_min() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("K3 curvature is 5/2") {
    const auto k3 = make_complete(3);
    for (VertexId x = 0; x < 3; ++x) {
        const auto r = curvature_at(k3, x, kInfiniteDimension);
        REQUIRE(r.value.has_value());
        CHECK(*r.value == doctest::Approx(2.5).epsilon(1e-9));
    }
}

TEST_CASE("vertex transitive graphs have constant profiles") {
    for (const auto& g : {make_cycle(6), make_hypercube(3), make_complete(4)}) {
        const auto profile = curvature_profile(g, kInfiniteDimension);
        REQUIRE(profile.results[0].value.has_value());
        const double first = *profile.results[0].value;
        for (const auto& r : profile.results) {
            REQUIRE(r.value.has_value());
            CHECK(*r.value == doctest::Approx(first).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("certificate witnesses optimality") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const auto g = make_erdos_renyi(6 + rep, 0.5, 40 + rep);
        const auto x = static_cast<VertexId>(canonical_uniform(rng) * double(g.vertex_count()));
        const auto r = curvature_at(g, x, kInfiniteDimension);
        REQUIRE(r.value.has_value());
        const auto f = field_from_certificate(r, g.vertex_count());

        // CD(K) holds on the witness, CD(K+1e−6) fails on it.
        CHECK(verify_cd_at(g, x, *r.value - 1e-9, kInfiniteDimension, f).slack >= -1e-9);
        CHECK(verify_cd_at(g, x, *r.value + 1e-6, kInfiniteDimension, f).slack < 0.0);
    }
}

TEST_CASE("verify_cd_at hand values on K2") {
    const auto k2 = make_complete(2);
    const ScalarField f{0.0, 1.0};
    // Γf = 1/2, Γ₂f = 1: slack at K is 1 − K/2.
    CHECK(verify_cd_at(k2, 0, 2.0, kInfiniteDimension, f).slack ==
          doctest::Approx(0.0).scale(1.0));
    CHECK(verify_cd_at(k2, 0, 2.0, kInfiniteDimension, f).holds);
    const auto over = verify_cd_at(k2, 0, 2.1, kInfiniteDimension, f);
    CHECK(over.slack == doctest::Approx(-0.05).epsilon(1e-12));
    CHECK(!over.holds);

    for (double k : {-3.0, 0.0, 7.0})
        CHECK(verify_cd_at(k2, 1, k, kInfiniteDimension, {4.0, 4.0}).slack == 0.0);

    // Slack is invariant under constant shifts of the witness.
    std::mt19937_64 rng(3);
    const auto g = make_erdos_renyi(8, 0.5, 21);
    ScalarField h(g.vertex_count());
    for (double& v : h)
        v = canonical_uniform(rng);
    ScalarField shifted(h);
    for (double& v : shifted)
        v += 5.0;
    CHECK(verify_cd_at(g, 2, 1.0, 10.0, h).slack ==
          doctest::Approx(verify_cd_at(g, 2, 1.0, 10.0, shifted).slack).epsilon(1e-10).scale(1.0));
}

TEST_CASE("dimension chain and monotonicity") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 8; ++rep) {
        const auto g = make_erdos_renyi(5 + rep, 0.5, 60 + rep);
        const double d = g.max_degree();
        const auto x = static_cast<VertexId>(canonical_uniform(rng) * double(g.vertex_count()));
        const auto inf_r = curvature_at(g, x, kInfiniteDimension);
        REQUIRE(inf_r.value.has_value());

        double prev = -std::numeric_limits<double>::infinity();
        for (double n : {1.0, 2.0, 5.0, 50.0}) {
            const auto r = curvature_at(g, x, n);
            REQUIRE(r.value.has_value());
            // K(x;n) ≤ K(x;∞) and K(x;n) ≥ K(x;∞) − 2D/n.
            CHECK(*r.value <= *inf_r.value + 1e-8);
            CHECK(*r.value >= *inf_r.value - 2.0 * d / n - 1e-8);
            // Monotone in n.
            CHECK(*r.value >= prev - 1e-10);
            prev = *r.value;
        }
    }
}

TEST_CASE("weight scaling scales curvature linearly") {
    const auto base = make_erdos_renyi(9, 0.5, 77);
    const double lambda = 2.75;
    auto edges = base.edge_list();
    for (auto& e : edges)
        e.weight *= lambda;
    const auto scaled = WeightedGraph::build(edges, MeasureMode::Unit);
    for (VertexId x = 0; x < base.vertex_count(); ++x) {
        const auto a = curvature_at(base, x, kInfiniteDimension);
        const auto b = curvature_at(scaled, x, kInfiniteDimension);
        REQUIRE(a.value.has_value());
        REQUIRE(b.value.has_value());
        CHECK(*b.value == doctest::Approx(lambda * *a.value).epsilon(1e-9));
    }
}

TEST_CASE("brute force oracle on K2 and small random graphs") {
    const auto k2 = make_complete(2);
    CHECK(brute_force_curvature(k2, 0, kInfiniteDimension, 3, 1) ==
          doctest::Approx(2.0).epsilon(1e-6));

    for (int rep = 0; rep < 6; ++rep) {
        const auto g = make_erdos_renyi(5 + rep, 0.5, 300 + rep);
        for (VertexId x = 0; x < g.vertex_count(); ++x) {
            const auto exact = curvature_at(g, x, kInfiniteDimension);
            REQUIRE(exact.value.has_value());
            const double bf = brute_force_curvature(g, x, kInfiniteDimension, 24, 17 + x);
            CHECK(bf == doctest::Approx(*exact.value).epsilon(1e-6).scale(1.0));
            CHECK(bf >= *exact.value - 1e-6); // the quotient can't go below the optimum
        }
    }

    // The (1/n)(Δf)² penalty only lowers the optimum.
    CHECK(brute_force_curvature(k2, 0, 1.0, 3, 5) <=
          brute_force_curvature(k2, 0, kInfiniteDimension, 3, 5) + 1e-12);
}

TEST_CASE("exception set selection by threshold") {
    const auto k2 = make_complete(2);
    const auto profile = curvature_profile(k2, kInfiniteDimension); // [2, 2]
    CHECK_THROWS_AS(exception_set(k2, profile, 1.0), EmptySetError);
    const auto all = exception_set(k2, profile, std::numeric_limits<double>::infinity());
    CHECK(all.members().size() == 2);

    // Synthetic profile [−1, 2, 2] on a triangle: threshold 0 picks vertex 0.
    const auto k3 = make_complete(3);
    CurvatureProfile fake;
    fake.dimension = kInfiniteDimension;
    fake.results.resize(3);
    for (VertexId x = 0; x < 3; ++x) {
        fake.results[x].vertex = x;
        fake.results[x].value = (x == 0) ? -1.0 : 2.0;
    }
    const auto w = exception_set(k3, fake, 0.0);
    CHECK(w.members() == std::vector<VertexId>{0});

    // Removing the argmin can only raise the subset minimum.
    const VertexId rest[] = {1, 2};
    CHECK(*fake.min_over(rest) >= *fake.global_min());
}
