#pragma once

#include <cstddef>
#include <vector>

namespace curvcut {

/// Minimal dense row-major matrix for the local curvature forms. These are
/// tiny (2-ball sized), so no effort is spent on blocking or layout tricks.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n);
};

Mat matmul(const Mat& x, const Mat& y);
Mat transpose(const Mat& x);

/// Replace m with (m + mᵀ)/2 (square matrices only).
void symmetrize(Mat& m);

struct EigenDecomposition {
    std::vector<double> values; // ascending
    Mat vectors;                // column k is the eigenvector for values[k]
};

/// Cyclic Jacobi sweeps; exact for the sizes that occur here (≤ a few dozen).
/// Input must be symmetric. Throws NoConvergenceError if the off-diagonal
/// mass fails to vanish (does not happen for symmetric input).
EigenDecomposition eigen_symmetric(Mat m);

double min_eigenvalue(const Mat& sym);

/// Moore-Penrose inverse of a symmetric matrix: eigenvalues of magnitude
/// below rel_cutoff·max|λ| are treated as exact zeros.
Mat pseudo_inverse(const EigenDecomposition& eig, double rel_cutoff);

/// Largest |entry| of (I − P) r where P projects onto the span of the
/// eigenvectors with |λ| > rel_cutoff·max|λ|. Zero iff r ∈ range.
double range_residual(const EigenDecomposition& eig, const std::vector<double>& r,
                      double rel_cutoff);

} // namespace curvcut
