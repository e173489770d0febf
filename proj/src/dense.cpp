#include "curvcut/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curvcut/errors.hpp"

namespace curvcut {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& x, const Mat& y) {
    Mat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0)
                continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out(i, j) += xik * y(k, j);
        }
    return out;
}

Mat transpose(const Mat& x) {
    Mat out(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            out(j, i) = x(i, j);
    return out;
}

void symmetrize(Mat& m) {
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j) {
            double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = m(j, i) = v;
        }
}

namespace {

double offdiag_norm(const Mat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j)
            s += m(i, j) * m(i, j);
    return std::sqrt(2.0 * s);
}

double frobenius(const Mat& m) {
    double s = std::inner_product(m.a.begin(), m.a.end(), m.a.begin(), 0.0);
    return std::sqrt(s);
}

} // namespace

EigenDecomposition eigen_symmetric(Mat m) {
    const std::size_t n = m.rows;
    Mat v = Mat::identity(n);
    const double scale = frobenius(m);
    const double stop = 1e-15 * std::max(scale, 1e-300);

    bool converged = (n <= 1) || offdiag_norm(m) <= stop;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0)
                    continue;
                const double app = m(p, p), aqq = m(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q)
                        continue;
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = m(p, k) = c * mkp - s * mkq;
                    m(k, q) = m(q, k) = s * mkp + c * mkq;
                }
                m(p, p) = app - t * apq;
                m(q, q) = aqq + t * apq;
                m(p, q) = m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        converged = offdiag_norm(m) <= stop;
    }
    if (!converged)
        throw NoConvergenceError("Jacobi eigensolver failed to converge");

    EigenDecomposition out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&m](std::size_t a, std::size_t b) { return m(a, a) < m(b, b); });
    out.vectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = m(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eigenvalue(const Mat& sym) {
    return eigen_symmetric(sym).values.front();
}

namespace {

double magnitude_cutoff(const EigenDecomposition& eig, double rel_cutoff) {
    double lmax = 0.0;
    for (double l : eig.values)
        lmax = std::max(lmax, std::abs(l));
    return rel_cutoff * lmax;
}

} // namespace

Mat pseudo_inverse(const EigenDecomposition& eig, double rel_cutoff) {
    const std::size_t n = eig.values.size();
    const double cut = magnitude_cutoff(eig, rel_cutoff);
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(eig.values[k]) <= cut)
            continue;
        const double inv = 1.0 / eig.values[k];
        for (std::size_t i = 0; i < n; ++i) {
            const double vik = eig.vectors(i, k);
            if (vik == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += inv * vik * eig.vectors(j, k);
        }
    }
    return out;
}

double range_residual(const EigenDecomposition& eig, const std::vector<double>& r,
                      double rel_cutoff) {
    const std::size_t n = eig.values.size();
    const double cut = magnitude_cutoff(eig, rel_cutoff);
    std::vector<double> res = r;
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(eig.values[k]) <= cut)
            continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            dot += eig.vectors(i, k) * r[i];
        for (std::size_t i = 0; i < n; ++i)
            res[i] -= dot * eig.vectors(i, k);
    }
    double worst = 0.0;
    for (double x : res)
        worst = std::max(worst, std::abs(x));
    return worst;
}

} // namespace curvcut
