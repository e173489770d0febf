#include "doctest.h"

#include <cmath>
#include <random>

#include "curvcut/dense.hpp"
#include "curvcut/util.hpp"

using namespace curvcut;

TEST_CASE("jacobi on a 2x2 with known spectrum") {
    Mat m(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 2.0;
    m(0, 1) = m(1, 0) = 1.0;
    const auto eig = eigen_symmetric(m);
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    // Eigenvector for 1 is (1,-1)/sqrt(2) up to sign.
    CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(eig.vectors(0, 0) * eig.vectors(1, 0) < 0.0);
    CHECK(min_eigenvalue(m) == doctest::Approx(1.0));
}

TEST_CASE("jacobi reconstructs random symmetric matrices") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(canonical_uniform(rng) * 12);
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                m(i, j) = m(j, i) = 2.0 * canonical_uniform(rng) - 1.0;
        const auto eig = eigen_symmetric(m);

        for (std::size_t k = 0; k + 1 < n; ++k)
            CHECK(eig.values[k] <= eig.values[k + 1]);

        // Residual ‖Mv − λv‖∞ and orthonormality of V.
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                double mv = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    mv += m(i, j) * eig.vectors(j, k);
                CHECK(mv == doctest::Approx(eig.values[k] * eig.vectors(i, k)).epsilon(1e-10).scale(1.0));
            }
            for (std::size_t l = k; l < n; ++l) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += eig.vectors(i, k) * eig.vectors(i, l);
                CHECK(dot == doctest::Approx(k == l ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("pseudo inverse of a rank-one matrix") {
    Mat m(2, 2);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0; // spectrum {0, 2}
    const auto eig = eigen_symmetric(m);
    const Mat pinv = pseudo_inverse(eig, 1e-10);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(pinv(i, j) == doctest::Approx(0.25).epsilon(1e-13));
    // A·A⁺·A = A.
    const Mat test = matmul(matmul(m, pinv), m);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(test(i, j) == doctest::Approx(m(i, j)).epsilon(1e-12));
}

TEST_CASE("range residual separates range from kernel") {
    Mat m(2, 2);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0; // range = span{(1,1)}
    const auto eig = eigen_symmetric(m);
    CHECK(range_residual(eig, {3.0, 3.0}, 1e-10) == doctest::Approx(0.0).scale(1.0));
    CHECK(range_residual(eig, {1.0, -1.0}, 1e-10) == doctest::Approx(1.0));
}

TEST_CASE("matmul and transpose behave") {
    Mat a(2, 3);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(0, 2) = 3;
    a(1, 0) = 4;
    a(1, 1) = 5;
    a(1, 2) = 6;
    const Mat at = transpose(a);
    CHECK(at.rows == 3);
    CHECK(at(2, 1) == 6);
    const Mat p = matmul(a, at);
    CHECK(p(0, 0) == 14.0);
    CHECK(p(0, 1) == 32.0);
    CHECK(p(1, 1) == 77.0);
}
