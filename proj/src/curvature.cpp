#include "curvcut/curvature.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "curvcut/util.hpp"

namespace curvcut {

namespace {

constexpr double kTolPsd = 1e-10;     // negative-eigenvalue gate on the z-block
constexpr double kTolRange = 1e-8;    // range-membership residual gate
constexpr double kPinvCutoff = 1e-10; // relative spectral cutoff for C⁺

} // namespace

std::optional<double> CurvatureProfile::min_over(std::span<const VertexId> subset) const {
    if (subset.empty())
        throw EmptySetError("curvature minimum over empty subset");
    double best = std::numeric_limits<double>::infinity();
    for (VertexId x : subset) {
        const auto& v = results.at(x).value;
        if (!v)
            return std::nullopt;
        best = std::min(best, *v);
    }
    return best;
}

std::optional<double> CurvatureProfile::global_min() const {
    std::vector<VertexId> all(results.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = static_cast<VertexId>(i);
    return min_over(all);
}

CurvatureResult curvature_at(const WeightedGraph& g, VertexId x, double dimension) {
    const LocalCurvatureProblem p = local_forms(g, x);
    const std::size_t d1 = p.sphere1.size();
    const std::size_t d2 = p.sphere2.size();

    CurvatureResult out;
    out.vertex = x;
    out.dimension = dimension;

    // M = Γ₂-form − (1/n)·(Δ-row)ᵀ(Δ-row); the Δ-row has no sphere2 part.
    Mat m = p.gamma2_form;
    const double inv_n = std::isinf(dimension) ? 0.0 : 1.0 / dimension;
    if (inv_n != 0.0)
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j)
                m(i, j) -= inv_n * p.laplacian_row[i] * p.laplacian_row[j];

    auto cert = [&](const std::vector<double>& y, const std::vector<double>& z) {
        out.certificate.clear();
        out.certificate.reserve(1 + d1 + d2);
        out.certificate.emplace_back(x, 0.0);
        for (std::size_t i = 0; i < d1; ++i)
            out.certificate.emplace_back(p.sphere1[i], y.empty() ? 0.0 : y[i]);
        for (std::size_t i = 0; i < d2; ++i)
            out.certificate.emplace_back(p.sphere2[i], z.empty() ? 0.0 : z[i]);
    };

    // Schur-complement the z-block away: A' = A − B·C⁺·Bᵀ. Two escapes to
    // −∞ first: C with a negative direction (z-only field already violates
    // every K), or Bᵀy leaving range(C) (sliding z along ker(C) is free).
    Mat aprime(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            aprime(i, j) = m(i, j);

    Mat cpinv;
    Mat b(d1, d2);
    if (d2 > 0) {
        Mat c(d2, d2);
        for (std::size_t i = 0; i < d2; ++i)
            for (std::size_t j = 0; j < d2; ++j)
                c(i, j) = m(d1 + i, d1 + j);
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d2; ++j)
                b(i, j) = m(i, d1 + j);

        const EigenDecomposition ceig = eigen_symmetric(c);
        if (ceig.values.front() < -kTolPsd) {
            std::vector<double> z(d2);
            for (std::size_t i = 0; i < d2; ++i)
                z[i] = ceig.vectors(i, 0);
            cert({}, z);
            return out; // value stays empty: −∞
        }
        for (std::size_t j = 0; j < d1; ++j) {
            std::vector<double> bj(d2);
            for (std::size_t i = 0; i < d2; ++i)
                bj[i] = b(j, i);
            double scale = 1.0;
            for (double v : bj)
                scale = std::max(scale, std::abs(v));
            if (range_residual(ceig, bj, kPinvCutoff) > kTolRange * scale) {
                std::vector<double> y(d1, 0.0);
                y[j] = 1.0;
                cert(y, {});
                return out; // −∞ along (e_j, −s·ker-component), s → ∞
            }
        }
        cpinv = pseudo_inverse(ceig, kPinvCutoff);
        const Mat correction = matmul(matmul(b, cpinv), transpose(b));
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j)
                aprime(i, j) -= correction(i, j);
    }

    // Whiten by the diagonal Γ-form and take the smallest eigenvalue.
    std::vector<double> qsqrt(d1);
    for (std::size_t i = 0; i < d1; ++i)
        qsqrt[i] = std::sqrt(p.gamma_form[i]);
    Mat ahat(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            ahat(i, j) = aprime(i, j) / (qsqrt[i] * qsqrt[j]);
    symmetrize(ahat); // exact symmetry despite rounding
    const EigenDecomposition eig = eigen_symmetric(ahat);

    out.value = eig.values.front();

    std::vector<double> y(d1);
    for (std::size_t i = 0; i < d1; ++i)
        y[i] = eig.vectors(i, 0) / qsqrt[i];
    std::vector<double> z(d2, 0.0);
    if (d2 > 0) {
        // z = −C⁺·Bᵀ·y completes the minimizer.
        for (std::size_t i = 0; i < d2; ++i) {
            double bty = 0.0;
            for (std::size_t j = 0; j < d1; ++j)
                bty += b(j, i) * y[j];
            z[i] = bty;
        }
        std::vector<double> zz(d2, 0.0);
        for (std::size_t i = 0; i < d2; ++i)
            for (std::size_t j = 0; j < d2; ++j)
                zz[i] -= cpinv(i, j) * z[j];
        z = std::move(zz);
    }
    cert(y, z);
    return out;
}

CurvatureProfile curvature_profile(const WeightedGraph& g, double dimension) {
    const std::size_t n = g.vertex_count();
    CurvatureProfile profile;
    profile.dimension = dimension;
    profile.results.resize(n);

    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n));
    if (workers <= 1) {
        for (VertexId x = 0; x < n; ++x)
            profile.results[x] = curvature_at(g, x, dimension);
        return profile;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t x; (x = next.fetch_add(1)) < n;)
                profile.results[x] = curvature_at(g, static_cast<VertexId>(x), dimension);
        });
    for (auto& th : pool)
        th.join();
    return profile;
}

ExceptionSet exception_set(const WeightedGraph& g, const CurvatureProfile& profile,
                           double threshold) {
    std::vector<VertexId> members;
    for (const CurvatureResult& r : profile.results)
        if (!r.value || *r.value < threshold)
            members.push_back(r.vertex);
    if (members.empty())
        throw EmptySetError("no vertex has curvature below " + g17(threshold));
    return ExceptionSet(g, std::move(members));
}

CdCheck verify_cd_at(const WeightedGraph& g, VertexId x, double K, double dimension,
                     const ScalarField& f) {
    const double g2 = gamma2(g, f)[x];
    const double gf = gamma_at(g, f, x);
    const double lf = laplacian_at(g, f, x);
    const double inv_n = std::isinf(dimension) ? 0.0 : 1.0 / dimension;
    CdCheck out;
    out.slack = g2 - inv_n * lf * lf - K * gf;
    out.holds = out.slack >= 0.0;
    return out;
}

namespace {

/// Quadratic-form matrices for the brute-force oracle, built only from the
/// pointwise operators via polarization on indicator fields.
struct PolarizedForms {
    std::vector<VertexId> ball; // sphere1 ++ sphere2, solver order
    std::size_t d1 = 0;
    Mat numer; // Γ₂ − (1/n)(Δ)² form
    Mat denom; // Γ form (zero beyond the d1 block)
};

PolarizedForms polarize(const WeightedGraph& g, VertexId x, double dimension) {
    const LocalCurvatureProblem p = local_forms(g, x);
    PolarizedForms out;
    out.ball = p.sphere1;
    out.ball.insert(out.ball.end(), p.sphere2.begin(), p.sphere2.end());
    out.d1 = p.sphere1.size();
    const std::size_t d = out.ball.size();
    const double inv_n = std::isinf(dimension) ? 0.0 : 1.0 / dimension;

    auto numer_q = [&](const ScalarField& f) {
        const double lf = laplacian_at(g, f, x);
        return gamma2(g, f)[x] - inv_n * lf * lf;
    };
    auto denom_q = [&](const ScalarField& f) { return gamma_at(g, f, x); };

    std::vector<double> nd(d), dd(d);
    ScalarField f(g.vertex_count(), 0.0);
    for (std::size_t a = 0; a < d; ++a) {
        f[out.ball[a]] = 1.0;
        nd[a] = numer_q(f);
        dd[a] = denom_q(f);
        f[out.ball[a]] = 0.0;
    }
    out.numer = Mat(d, d);
    out.denom = Mat(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        out.numer(a, a) = nd[a];
        out.denom(a, a) = dd[a];
        for (std::size_t bidx = a + 1; bidx < d; ++bidx) {
            f[out.ball[a]] = 1.0;
            f[out.ball[bidx]] = 1.0;
            const double nsum = numer_q(f);
            const double dsum = denom_q(f);
            f[out.ball[a]] = 0.0;
            f[out.ball[bidx]] = 0.0;
            out.numer(a, bidx) = out.numer(bidx, a) = 0.5 * (nsum - nd[a] - nd[bidx]);
            out.denom(a, bidx) = out.denom(bidx, a) = 0.5 * (dsum - dd[a] - dd[bidx]);
        }
    }
    return out;
}

double quad(const Mat& m, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j)
            row += m(i, j) * v[j];
        s += v[i] * row;
    }
    return s;
}

std::vector<double> matvec(const Mat& m, const std::vector<double>& v) {
    std::vector<double> out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out[i] += m(i, j) * v[j];
    return out;
}

/// Minimize (a+2bs+cs²)/(p+2qs+rs²) over s; stationary points solve
/// (cq−br)s² + (cp−ar)s + (bp−aq) = 0.
double line_search(double a, double b, double c, double p, double q, double r) {
    const double A = c * q - b * r;
    const double B = c * p - a * r;
    const double C = b * p - a * q;
    std::vector<double> roots;
    if (std::abs(A) > 1e-300) {
        const double disc = B * B - 4.0 * A * C;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            roots.push_back((-B + sq) / (2.0 * A));
            roots.push_back((-B - sq) / (2.0 * A));
        }
    } else if (std::abs(B) > 1e-300) {
        roots.push_back(-C / B);
    }
    double best_s = 0.0;
    double best_val = a / p;
    for (double s : roots) {
        if (!std::isfinite(s))
            continue;
        const double den = p + 2.0 * q * s + r * s * s;
        if (den <= 1e-14 * std::max(1.0, p))
            continue;
        const double val = (a + 2.0 * b * s + c * s * s) / den;
        if (val < best_val) {
            best_val = val;
            best_s = s;
        }
    }
    return best_s;
}

} // namespace

double brute_force_curvature(const WeightedGraph& g, VertexId x, double dimension,
                             int restarts, std::uint64_t seed) {
    const PolarizedForms forms = polarize(g, x, dimension);
    const std::size_t d = forms.ball.size();
    std::mt19937_64 rng(seed);

    double best = std::numeric_limits<double>::infinity();
    for (int run = 0; run < restarts; ++run) {
        std::vector<double> v(d);
        double den = 0.0;
        do {
            for (double& vi : v)
                vi = 2.0 * canonical_uniform(rng) - 1.0;
            den = quad(forms.denom, v);
        } while (den < 1e-8);

        double val = quad(forms.numer, v) / den;
        for (int iter = 0; iter < 2000; ++iter) {
            const std::vector<double> nv = matvec(forms.numer, v);
            const std::vector<double> dv = matvec(forms.denom, v);
            const double num = quad(forms.numer, v);
            den = quad(forms.denom, v);
            const double rq = num / den;
            // Steepest descent on the quotient, step chosen exactly.
            std::vector<double> grad(d);
            double gnorm = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                grad[i] = 2.0 * (nv[i] - rq * dv[i]) / den;
                gnorm = std::max(gnorm, std::abs(grad[i]));
            }
            if (gnorm < 1e-13 * (1.0 + std::abs(rq)))
                break;
            const std::vector<double> ng = matvec(forms.numer, grad);
            const std::vector<double> dg = matvec(forms.denom, grad);
            double b = 0.0, c = 0.0, q = 0.0, r = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                b += grad[i] * nv[i];
                c += grad[i] * ng[i];
                q += grad[i] * dv[i];
                r += grad[i] * dg[i];
            }
            const double s = line_search(num, b, c, den, q, r);
            if (s == 0.0)
                break;
            for (std::size_t i = 0; i < d; ++i)
                v[i] += s * grad[i];
            const double newval = quad(forms.numer, v) / quad(forms.denom, v);
            if (val - newval < 1e-14 * (1.0 + std::abs(val))) {
                val = std::min(val, newval);
                break;
            }
            val = newval;
        }
        best = std::min(best, val);
    }
    return best;
}

} // namespace curvcut
