#include "curvcut/gamma.hpp"

#include <string>

namespace curvcut {

namespace {

void check_length(const WeightedGraph& g, const ScalarField& f) {
    if (f.size() != g.vertex_count())
        throw SizeMismatchError("field has " + std::to_string(f.size()) +
                                " entries for " + std::to_string(g.vertex_count()) +
                                " vertices");
}

} // namespace

double laplacian_at(const WeightedGraph& g, const ScalarField& f, VertexId x) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(x))
        s += nb.weight * (f[nb.to] - f[x]);
    return s / g.measure(x);
}

ScalarField laplacian(const WeightedGraph& g, const ScalarField& f) {
    check_length(g, f);
    ScalarField out(f.size());
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        out[x] = laplacian_at(g, f, x);
    return out;
}

double gamma_at(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, VertexId x) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(x))
        s += nb.weight * (f[nb.to] - f[x]) * (h[nb.to] - h[x]);
    return s / (2.0 * g.measure(x));
}

double gamma_at(const WeightedGraph& g, const ScalarField& f, VertexId x) {
    return gamma_at(g, f, f, x);
}

ScalarField gamma(const WeightedGraph& g, const ScalarField& f, const ScalarField& h) {
    check_length(g, f);
    check_length(g, h);
    ScalarField out(f.size());
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        out[x] = gamma_at(g, f, h, x);
    return out;
}

ScalarField gamma(const WeightedGraph& g, const ScalarField& f) {
    return gamma(g, f, f);
}

ScalarField gamma2(const WeightedGraph& g, const ScalarField& f, const ScalarField& h) {
    check_length(g, f);
    check_length(g, h);
    const ScalarField lf = laplacian(g, f);
    const ScalarField lh = laplacian(g, h);
    const ScalarField gfh = gamma(g, f, h);
    const ScalarField lgfh = laplacian(g, gfh);
    const ScalarField gflh = gamma(g, f, lh);
    const ScalarField ghlf = gamma(g, h, lf);
    ScalarField out(f.size());
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        out[x] = 0.5 * (lgfh[x] - gflh[x] - ghlf[x]);
    return out;
}

ScalarField gamma2(const WeightedGraph& g, const ScalarField& f) {
    return gamma2(g, f, f);
}

double LocalCurvatureProblem::eval_gamma(std::span<const double> phi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < sphere1.size(); ++i)
        s += gamma_form[i] * phi[i] * phi[i];
    return s;
}

double LocalCurvatureProblem::eval_laplacian(std::span<const double> phi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < sphere1.size(); ++i)
        s += laplacian_row[i] * phi[i];
    return s;
}

double LocalCurvatureProblem::eval_gamma2(std::span<const double> phi) const {
    const std::size_t d = local_dim();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            row += gamma2_form(i, j) * phi[j];
        s += phi[i] * row;
    }
    return s;
}

LocalCurvatureProblem local_forms(const WeightedGraph& g, VertexId center) {
    if (center >= g.vertex_count())
        throw SizeMismatchError("vertex " + std::to_string(center) + " outside graph");

    LocalCurvatureProblem p;
    p.center = center;

    // Punctured 2-ball, spheres ascending by vertex index.
    std::vector<int> local(g.vertex_count(), -2); // -2 outside, -1 center
    local[center] = -1;
    for (const auto& nb : g.neighbors(center))
        p.sphere1.push_back(nb.to);
    for (VertexId y : p.sphere1)
        local[y] = 0; // mark; real indices assigned after sorting
    std::vector<std::uint8_t> at2(g.vertex_count(), 0);
    for (VertexId y : p.sphere1)
        for (const auto& nb : g.neighbors(y))
            if (local[nb.to] == -2)
                at2[nb.to] = 1;
    for (VertexId z = 0; z < g.vertex_count(); ++z)
        if (at2[z])
            p.sphere2.push_back(z);
    for (std::size_t i = 0; i < p.sphere1.size(); ++i)
        local[p.sphere1[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < p.sphere2.size(); ++i)
        local[p.sphere2[i]] = static_cast<int>(p.sphere1.size() + i);

    const double mx = g.measure(center);
    p.gamma_form.resize(p.sphere1.size());
    p.laplacian_row.resize(p.sphere1.size());
    for (std::size_t i = 0; i < p.sphere1.size(); ++i) {
        const double w = g.weight(center, p.sphere1[i]);
        p.gamma_form[i] = w / (2.0 * mx);
        p.laplacian_row[i] = w / mx;
    }

    // Γ₂ at the center as a quadratic form in φ = f|_{2-ball}, φ(center)=0:
    //   2Γ₂f = ΔΓf − 2Γ(f,Δf)
    // expanded edge by edge. Monomials touching the center vanish, so addq
    // drops them.
    const std::size_t d = p.local_dim();
    p.gamma2_form = Mat(d, d);
    auto addq = [&](VertexId a, VertexId b, double c) {
        const int ia = local[a], ib = local[b];
        if (ia < 0 || ib < 0)
            return;
        p.gamma2_form(static_cast<std::size_t>(ia), static_cast<std::size_t>(ib)) += c;
    };

    // (1/2)·ΔΓf(center) = (1/2m_x) Σ_y w_xy (Γf(y) − Γf(x)):
    //   Γf(y) = Σ_{z~y} (w_yz/2m_y)(φ_z − φ_y)²
    //   Γf(x) = Σ_{y~x} (w_xy/2m_x) φ_y²
    for (const auto& ynb : g.neighbors(center)) {
        const VertexId y = ynb.to;
        const double cy = ynb.weight / (2.0 * mx);
        const double my = g.measure(y);
        for (const auto& znb : g.neighbors(y)) {
            const VertexId z = znb.to;
            const double c = cy * znb.weight / (2.0 * my);
            addq(z, z, c);
            addq(z, y, -2.0 * c);
            addq(y, y, c);
        }
    }
    const double deg_x = g.degree(center);
    for (const auto& ynb : g.neighbors(center))
        addq(ynb.to, ynb.to, -deg_x * ynb.weight / (4.0 * mx));

    // −Γ(f,Δf)(center) = −Σ_y (w_xy/2m_x) φ_y (Δf(y) − Δf(x)); with
    // φ(center)=0 the Δf(x) part is exactly (Δf(x))² = (laplacian_row·φ)².
    for (const auto& ynb : g.neighbors(center)) {
        const VertexId y = ynb.to;
        const double cy = ynb.weight / (2.0 * mx);
        const double my = g.measure(y);
        for (const auto& znb : g.neighbors(y)) {
            const VertexId z = znb.to;
            const double c = cy * znb.weight / my;
            addq(y, z, -c);
            addq(y, y, c);
        }
    }
    for (const auto& ynb : g.neighbors(center))
        for (const auto& y2nb : g.neighbors(center))
            addq(ynb.to, y2nb.to, (ynb.weight / mx) * (y2nb.weight / mx) / 2.0);

    symmetrize(p.gamma2_form);
    return p;
}

} // namespace curvcut
