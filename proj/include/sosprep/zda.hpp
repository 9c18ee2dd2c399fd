#pragma once

#include "sosprep/gram.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sosprep {

enum class ZdaStatus { Reduced, InfeasibleCertificate };

struct ZdaResult {
    MonomialBasis final_basis;
    std::vector<std::pair<std::size_t, DegreeVector>> removed;  // (sweep, monomial)
    std::size_t sweeps = 0;
    ZdaStatus status = ZdaStatus::Reduced;
    // product degree of the equation certifying infeasibility, when any
    std::optional<DegreeVector> certificate;
    GramConstraintSystem reduced_system;
};

// Active indices i whose equation reads exactly Q_ii = 0. One scan, no
// mutation.
inline std::vector<std::size_t> find_forced_zero_diagonals(const GramConstraintSystem& csys) {
    std::vector<std::size_t> out;
    for (const auto& eq : csys.equations()) {
        if (eq.rhs != 0 || eq.entries.size() != 1) continue;
        const auto& e = eq.entries.front();
        if (e.i == e.j && csys.is_active(e.i)) out.push_back(e.i);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Iterated pruning: each sweep batches every currently forced zero diagonal,
// deactivates them all, and repeats until a sweep finds none. Two conditions
// certify infeasibility along the way: an equation with no remaining entries
// but nonzero rhs, and a diagonal forced to a negative value (a PSD matrix
// has nonnegative diagonals).
inline ZdaResult zda_reduce(GramConstraintSystem csys) {
    std::vector<std::pair<std::size_t, DegreeVector>> removed;
    std::size_t sweeps = 0;
    for (;;) {
        ++sweeps;
        for (const auto& eq : csys.equations()) {
            if (eq.entries.empty() && eq.rhs != 0)
                return {csys.active_basis(), std::move(removed), sweeps,
                        ZdaStatus::InfeasibleCertificate, eq.product_degree, std::move(csys)};
            if (eq.entries.size() == 1 && eq.entries.front().i == eq.entries.front().j &&
                eq.rhs < 0)
                return {csys.active_basis(), std::move(removed), sweeps,
                        ZdaStatus::InfeasibleCertificate, eq.product_degree, std::move(csys)};
        }
        auto zeros = find_forced_zero_diagonals(csys);
        if (zeros.empty()) break;
        for (std::size_t i : zeros) {
            removed.emplace_back(sweeps, csys.basis()[i]);
            csys.deactivate(i);
        }
    }
    return {csys.active_basis(), std::move(removed), sweeps, ZdaStatus::Reduced, std::nullopt,
            std::move(csys)};
}

}  // namespace sosprep
