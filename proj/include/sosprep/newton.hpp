#pragma once

#include "sosprep/basis.hpp"
#include "sosprep/polynomial.hpp"
#include "sosprep/ratlp.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sosprep {

// Finite generator set of a polytope, e.g. the support of a polynomial.
// Only the vertex representation is ever used; membership queries go
// through an exact LP rather than a facet description.
struct PointSet {
    int nvars = 0;
    std::vector<DegreeVector> points;

    static PointSet from_points(int nvars, std::vector<DegreeVector> pts) {
        std::sort(pts.begin(), pts.end(), GradedLexLess{});
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (const auto& p : pts)
            if (static_cast<int>(p.size()) != nvars)
                throw std::invalid_argument("PointSet: dimension mismatch");
        return {nvars, std::move(pts)};
    }

    static PointSet support_of(const Polynomial& p) {
        return from_points(p.nvars(), p.support());
    }
};

enum class ScreenVerdict { Pass, NotSos };
enum class ScreenReason { None, OddDegree, OddVertex };

struct ScreenResult {
    ScreenVerdict verdict = ScreenVerdict::Pass;
    ScreenReason reason = ScreenReason::None;
    std::optional<DegreeVector> vertex;  // set for OddVertex
};

// point in ch(generators)? Decided exactly: feasibility of
//   lambda >= 0, sum lambda = 1, sum lambda_j g_j = point.
inline bool hull_membership(const DegreeVector& point, const PointSet& generators) {
    if (generators.points.empty())
        throw std::invalid_argument("hull_membership: empty generator set");
    if (static_cast<int>(point.size()) != generators.nvars)
        throw std::invalid_argument("hull_membership: dimension mismatch");

    LpFeasibilityProblem lp;
    lp.ncols = generators.points.size();
    LpFeasibilityProblem::Row conv;
    for (std::size_t j = 0; j < lp.ncols; ++j) conv.coeffs[j] = 1;
    conv.rhs = 1;
    lp.rows.push_back(std::move(conv));
    for (int d = 0; d < generators.nvars; ++d) {
        LpFeasibilityProblem::Row row;
        for (std::size_t j = 0; j < lp.ncols; ++j) {
            int g = generators.points[j][d];
            if (g != 0) row.coeffs[j] = g;
        }
        row.rhs = point[d];
        lp.rows.push_back(std::move(row));
    }
    return lp_feasible(lp).status == LpStatus::Feasible;
}

// Keep the monomials of m0 whose doubled degree vector lies in C(p).
inline MonomialBasis newton_reduce(const Polynomial& p, const MonomialBasis& m0) {
    if (p.is_zero()) throw std::invalid_argument("newton_reduce: zero polynomial");
    if (degree(p) % 2 != 0)
        throw std::invalid_argument("newton_reduce: odd-degree polynomial cannot be SOS");
    PointSet cage = PointSet::support_of(p);
    std::vector<DegreeVector> kept;
    for (const auto& alpha : m0) {
        DegreeVector doubled(alpha);
        for (int& e : doubled) e *= 2;
        if (hull_membership(doubled, cage)) kept.push_back(alpha);
    }
    return MonomialBasis(m0.nvars(), std::move(kept));
}

// Minimal vertex representation: a point of a finite set is a vertex of the
// hull iff it is outside the hull of the remaining points.
inline PointSet polytope_vertices(const PointSet& points) {
    if (points.points.empty()) throw std::invalid_argument("polytope_vertices: empty set");
    if (points.points.size() == 1) return points;
    std::vector<DegreeVector> verts;
    for (std::size_t i = 0; i < points.points.size(); ++i) {
        PointSet rest{points.nvars, {}};
        for (std::size_t j = 0; j < points.points.size(); ++j)
            if (j != i) rest.points.push_back(points.points[j]);
        if (!hull_membership(points.points[i], rest)) verts.push_back(points.points[i]);
    }
    return PointSet::from_points(points.nvars, std::move(verts));
}

// Necessary condition for SOS: even degree and every vertex of the Newton
// polytope has all-even entries. Pass is not sufficient (e.g. Motzkin).
inline ScreenResult even_vertex_screen(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("even_vertex_screen: zero polynomial");
    if (degree(p) % 2 != 0)
        return {ScreenVerdict::NotSos, ScreenReason::OddDegree, std::nullopt};
    PointSet verts = polytope_vertices(PointSet::support_of(p));
    for (const auto& v : verts.points) {
        for (int e : v) {
            if (e % 2 != 0)
                return {ScreenVerdict::NotSos, ScreenReason::OddVertex, v};
        }
    }
    return {ScreenVerdict::Pass, ScreenReason::None, std::nullopt};
}

}  // namespace sosprep
