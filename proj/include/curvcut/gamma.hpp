#pragma once

#include <span>

#include "curvcut/dense.hpp"
#include "curvcut/fields.hpp"
#include "curvcut/graph.hpp"

namespace curvcut {

// Pointwise operators. All are matrix-free single passes over adjacency
// lists and pure functions of their arguments.

/// Δf(x) = (1/m(x)) Σ_y w(x,y)(f(y) − f(x)).
ScalarField laplacian(const WeightedGraph& g, const ScalarField& f);
double laplacian_at(const WeightedGraph& g, const ScalarField& f, VertexId x);

/// Γ(f,h)(x) = (1/2m(x)) Σ_y w(x,y)(f(y) − f(x))(h(y) − h(x)).
/// This closed form has less cancellation than the equivalent
/// (Δ(fh) − fΔh − hΔf)/2, which the tests keep around as an oracle.
ScalarField gamma(const WeightedGraph& g, const ScalarField& f, const ScalarField& h);
ScalarField gamma(const WeightedGraph& g, const ScalarField& f);
double gamma_at(const WeightedGraph& g, const ScalarField& f, const ScalarField& h, VertexId x);
double gamma_at(const WeightedGraph& g, const ScalarField& f, VertexId x);

/// Iterated form: 2Γ₂(f,h) = ΔΓ(f,h) − Γ(f,Δh) − Γ(h,Δf), computed exactly
/// as this combination of the two operators above.
ScalarField gamma2(const WeightedGraph& g, const ScalarField& f, const ScalarField& h);
ScalarField gamma2(const WeightedGraph& g, const ScalarField& f);

/// The three quadratic/linear forms at `center` restricted to the punctured
/// 2-ball, under the normalization f(center) = 0 (both Γ and Γ₂ at a vertex
/// are constant-shift invariant and depend only on the 2-ball). Local
/// variable order: sphere1 then sphere2, each ascending by vertex index.
struct LocalCurvatureProblem {
    VertexId center = 0;
    std::vector<VertexId> sphere1;
    std::vector<VertexId> sphere2;
    Mat gamma2_form;                 // (|s1|+|s2|)², symmetric
    std::vector<double> gamma_form;  // diagonal entries w(center,y)/(2m(center)), |s1|
    std::vector<double> laplacian_row; // w(center,y)/m(center), |s1|

    std::size_t local_dim() const { return sphere1.size() + sphere2.size(); }

    // Form evaluations on a local coefficient vector (sphere1 ++ sphere2).
    double eval_gamma(std::span<const double> phi) const;
    double eval_laplacian(std::span<const double> phi) const;
    double eval_gamma2(std::span<const double> phi) const;
};

LocalCurvatureProblem local_forms(const WeightedGraph& g, VertexId center);

} // namespace curvcut
