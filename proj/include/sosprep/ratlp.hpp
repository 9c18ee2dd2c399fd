#pragma once

#include "sosprep/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace sosprep {

// Feasibility of {x >= 0, Ax = b}. Rows are sparse; all variables are
// constrained nonnegative. No objective and no inequality rows.
struct LpFeasibilityProblem {
    std::size_t ncols = 0;
    struct Row {
        std::map<std::size_t, Rat> coeffs;
        Rat rhs;
    };
    std::vector<Row> rows;
};

enum class LpStatus { Feasible, Infeasible };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> witness;     // nonnegative assignment, present iff Feasible
    std::size_t iterations = 0;   // simplex pivots performed
};

// Exact phase-1 simplex with Bland's anti-cycling rule. One artificial
// variable per row; feasible iff the artificial sum can be driven to zero.
inline LpOutcome lp_feasible(const LpFeasibilityProblem& prob) {
    const std::size_t m = prob.rows.size();
    const std::size_t n = prob.ncols;
    const std::size_t total = n + m;  // artificials appended after real columns

    // Dense tableau, rhs in the last column, rhs normalized nonnegative.
    std::vector<std::vector<Rat>> tab(m, std::vector<Rat>(total + 1, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = prob.rows[i];
        bool flip = row.rhs < 0;
        for (const auto& [j, v] : row.coeffs) {
            if (j >= n) throw std::invalid_argument("lp_feasible: column index out of range");
            tab[i][j] = flip ? -v : v;
        }
        tab[i][n + i] = 1;
        tab[i][total] = flip ? -row.rhs : row.rhs;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs for minimizing the artificial sum: obj_j = c_j - sum of
    // artificial rows' column j. Artificial columns start at reduced cost 0.
    std::vector<Rat> obj(total, Rat(0));
    for (std::size_t j = n; j < total; ++j) obj[j] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < total; ++j) obj[j] -= tab[i][j];

    LpOutcome out;
    for (;;) {
        std::size_t enter = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (obj[j] < 0) { enter = j; break; }  // Bland: smallest index
        }
        if (enter == total) break;

        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rat ratio = tab[i][total] / tab[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            throw std::logic_error("lp_feasible: unbounded phase-1 objective");

        // Pivot on (leave, enter).
        Rat piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rat f = tab[i][enter];
            for (std::size_t j = 0; j <= total; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rat f = obj[enter];
        if (f != 0)
            for (std::size_t j = 0; j < total; ++j) obj[j] -= f * tab[leave][j];
        basis[leave] = enter;
        ++out.iterations;
    }

    Rat objval(0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objval += tab[i][total];
    if (objval != 0) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    out.status = LpStatus::Feasible;
    out.witness.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.witness[basis[i]] = tab[i][total];
    return out;
}

}  // namespace sosprep
