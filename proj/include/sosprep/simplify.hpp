#pragma once

#include "sosprep/basis.hpp"
#include "sosprep/gram.hpp"
#include "sosprep/polynomial.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sosprep {

// An affine SOS constraint a(x,d) = parts[0] + parts[1] d_1 + ... + parts[r] d_r.
struct AffineSosConstraint {
    std::vector<Polynomial> parts;  // length exactly ndecs + 1
};

// min cost^T d subject to each constraint polynomial being SOS.
struct SosProgram {
    int nvars = 1;
    int ndecs = 0;
    std::vector<Rat> cost;  // length ndecs
    std::vector<AffineSosConstraint> constraints;
};

// Sign knowledge for one decision slot. Zero slots are treated as inactive
// everywhere. Lattice: Unknown < NonNeg/NonPos < Zero.
enum class Mark { Unknown, NonNeg, NonPos, Zero };

// Slot layout for y = [d; symvec(Q_1); ...; symvec(Q_N)] where symvec lists
// the unordered pairs (i <= j) of each Gram matrix row-major.
class SlotLayout {
public:
    SlotLayout(int ndecs, const std::vector<std::size_t>& block_dims)
        : ndecs_(static_cast<std::size_t>(ndecs)), dims_(block_dims) {
        std::size_t off = ndecs_;
        for (std::size_t m : dims_) {
            offsets_.push_back(off);
            off += m * (m + 1) / 2;
        }
        total_ = off;
    }

    std::size_t ndecs() const { return ndecs_; }
    std::size_t total() const { return total_; }
    std::size_t nblocks() const { return dims_.size(); }
    std::size_t block_dim(std::size_t k) const { return dims_[k]; }

    std::size_t dec_slot(std::size_t j) const { return j; }

    std::size_t gram_slot(std::size_t k, std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        std::size_t m = dims_[k];
        return offsets_[k] + i * (2 * m - i + 1) / 2 + (j - i);
    }

    struct Loc {
        bool is_dec;
        std::size_t dec;      // valid when is_dec
        std::size_t k, i, j;  // valid otherwise, i <= j
    };

    Loc locate(std::size_t slot) const {
        if (slot < ndecs_) return {true, slot, 0, 0, 0};
        for (std::size_t k = dims_.size(); k-- > 0;) {
            if (slot >= offsets_[k]) {
                std::size_t rel = slot - offsets_[k];
                std::size_t m = dims_[k];
                std::size_t i = 0;
                while (rel >= m - i) {
                    rel -= m - i;
                    ++i;
                }
                return {false, 0, k, i, i + rel};
            }
        }
        throw std::out_of_range("SlotLayout::locate");
    }

private:
    std::size_t ndecs_;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
};

// One coefficient-matching equation of a program: for constraint k and
// product degree alpha,
//   sum mult * Q_k[i,j]  -  sum coeff_alpha(a_{k,j}) d_j  =  coeff_alpha(a_{k,0})
struct ProgEquation {
    std::size_t constraint;
    DegreeVector product_degree;
    std::vector<std::pair<std::size_t, Rat>> entries;  // (slot, coefficient)
    Rat rhs;
};

struct ProgramSystem {
    int nvars = 1;
    std::vector<Rat> cost;
    std::vector<MonomialBasis> bases;
    SlotLayout layout{0, {}};
    std::vector<ProgEquation> equations;  // constraint-major, graded-lex within
    std::vector<Mark> sign;
    std::optional<std::string> early_infeasible;
};

enum class SimplifyStatus { Simplified, InfeasibleCertificate };

struct SimplificationReport {
    std::vector<MonomialBasis> final_bases;
    std::vector<std::vector<DegreeVector>> removed;  // per constraint
    std::vector<std::size_t> zeroed_decision_vars;   // 1-based indices into d
    std::vector<Mark> decision_marks;                // final marks for d slots
    std::size_t iterations = 0;
    SimplifyStatus status = SimplifyStatus::Simplified;
    std::string certificate;  // human-readable, set on infeasibility
};

namespace detail {

// Sound outer bound on the union over all d of (1/2)C(a(x,d)): the support
// of a(x,d) is contained in the union of the parts' supports for every d,
// so the heuristic band and per-variable caps computed on that union apply.
inline std::optional<MonomialBasis> aggregate_heuristic_basis(int nvars,
                                                              const AffineSosConstraint& c) {
    std::vector<DegreeVector> u;
    for (const auto& part : c.parts)
        for (const auto& [a, coef] : part.terms()) u.push_back(a);
    if (u.empty()) return MonomialBasis(nvars, {});
    int lo_total = total_degree(u.front()), hi_total = 0;
    DegreeVector cap(nvars, 0);
    for (const auto& a : u) {
        int t = total_degree(a);
        lo_total = std::min(lo_total, t);
        hi_total = std::max(hi_total, t);
        for (int i = 0; i < nvars; ++i) cap[i] = std::max(cap[i], a[i]);
    }
    if (hi_total % 2 != 0) return std::nullopt;  // odd top degree, never SOS
    int lo = (lo_total + 1) / 2, hi = hi_total / 2;
    for (int& v : cap) v = (v + 1) / 2;

    std::vector<DegreeVector> all;
    DegreeVector cur(nvars, 0);
    enumerate_degrees(nvars, 0, hi, cur, all);
    std::vector<DegreeVector> kept;
    for (auto& a : all) {
        int t = total_degree(a);
        if (t < lo || t > hi) continue;
        bool ok = true;
        for (int i = 0; i < nvars; ++i)
            if (a[i] > cap[i]) { ok = false; break; }
        if (ok) kept.push_back(std::move(a));
    }
    return MonomialBasis::from_unordered(nvars, std::move(kept));
}

}  // namespace detail

// Assemble the full equality system Ay = b with the sign vector initialized
// to NonNeg on Gram diagonals. With no explicit bases, each constraint gets
// the aggregate heuristic basis; an odd maximal degree is recorded as an
// infeasibility certificate on the system rather than thrown.
inline ProgramSystem build_program_system(const SosProgram& prog,
                                          std::optional<std::vector<MonomialBasis>> bases = {}) {
    if (prog.ndecs < 0) throw std::invalid_argument("negative ndecs");
    if (prog.constraints.empty()) throw std::invalid_argument("program needs >= 1 constraint");
    if (static_cast<int>(prog.cost.size()) != prog.ndecs)
        throw std::invalid_argument("cost length must equal ndecs");
    for (const auto& c : prog.constraints) {
        if (static_cast<int>(c.parts.size()) != prog.ndecs + 1)
            throw std::invalid_argument("constraint must have ndecs+1 parts");
        for (const auto& part : c.parts)
            if (part.nvars() != prog.nvars)
                throw std::invalid_argument("constraint part nvars mismatch");
    }
    if (bases && bases->size() != prog.constraints.size())
        throw std::invalid_argument("need one basis per constraint");

    ProgramSystem sys;
    sys.nvars = prog.nvars;
    sys.cost = prog.cost;

    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < prog.constraints.size(); ++k) {
        if (bases) {
            sys.bases.push_back((*bases)[k]);
        } else {
            auto b = detail::aggregate_heuristic_basis(prog.nvars, prog.constraints[k]);
            if (!b) {
                sys.early_infeasible = "constraint " + std::to_string(k + 1) +
                                       " has odd maximal degree and can never be SOS";
                sys.bases.push_back(MonomialBasis(prog.nvars, {}));
            } else {
                sys.bases.push_back(std::move(*b));
            }
        }
        dims.push_back(sys.bases.back().size());
    }
    sys.layout = SlotLayout(prog.ndecs, dims);

    for (std::size_t k = 0; k < prog.constraints.size(); ++k) {
        const auto& basis = sys.bases[k];
        const auto& parts = prog.constraints[k].parts;
        std::map<DegreeVector, ProgEquation, GradedLexLess> eqs;
        auto& layout = sys.layout;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = i; j < basis.size(); ++j) {
                auto alpha = add(basis[i], basis[j]);
                auto& eq = eqs[alpha];
                eq.entries.emplace_back(layout.gram_slot(k, i, j), Rat(i == j ? 1 : 2));
            }
        }
        for (std::size_t j = 1; j < parts.size(); ++j)
            for (const auto& [alpha, c] : parts[j].terms())
                eqs[alpha].entries.emplace_back(layout.dec_slot(j - 1), -c);
        for (const auto& [alpha, c] : parts[0].terms()) eqs[alpha].rhs = c;

        for (auto& [alpha, eq] : eqs) {
            eq.constraint = k;
            eq.product_degree = alpha;
            sys.equations.push_back(std::move(eq));
        }
    }

    sys.sign.assign(sys.layout.total(), Mark::Unknown);
    for (std::size_t k = 0; k < dims.size(); ++k)
        for (std::size_t i = 0; i < dims[k]; ++i)
            sys.sign[sys.layout.gram_slot(k, i, i)] = Mark::NonNeg;
    return sys;
}

// Outcome of processing one equation: marks to apply, or a contradiction.
struct Deduction {
    std::vector<std::pair<std::size_t, Mark>> marks;
    std::optional<std::string> contradiction;
};

namespace detail {

inline int orientation(const Rat& coeff, Mark m) {
    // sign of coeff*y when the mark pins y's sign; 0 when unknown
    if (m == Mark::NonNeg) return sign(coeff);
    if (m == Mark::NonPos) return -sign(coeff);
    return 0;
}

inline std::string describe_eq(const ProgEquation& eq) {
    std::ostringstream os;
    os << "equation for degree (";
    for (std::size_t i = 0; i < eq.product_degree.size(); ++i)
        os << (i ? "," : "") << eq.product_degree[i];
    os << ") of constraint " << eq.constraint + 1;
    return os.str();
}

}  // namespace detail

// Single active slot j with coefficient a: rhs 0 zeroes the slot; otherwise
// the equation pins sign(y_j) = sign(a*rhs), which either refines an Unknown
// mark or collides with the opposite mark (then y_j would have to be zero
// and nonzero at once).
inline Deduction process_single_var_equation(const ProgEquation& eq, std::size_t slot,
                                             const Rat& coeff, const std::vector<Mark>& sign_vec) {
    Deduction ded;
    Mark cur = sign_vec[slot];
    if (eq.rhs == 0) {
        if (cur != Mark::Zero) ded.marks.emplace_back(slot, Mark::Zero);
        return ded;
    }
    int s = sign(coeff) * sign(eq.rhs);
    if (cur == Mark::Zero) {
        ded.contradiction = detail::describe_eq(eq) + " forces a zeroed variable to be nonzero";
    } else if ((cur == Mark::NonNeg && s < 0) || (cur == Mark::NonPos && s > 0)) {
        ded.contradiction = detail::describe_eq(eq) + " forces a sign contradiction";
    } else if (cur == Mark::Unknown) {
        ded.marks.emplace_back(slot, s > 0 ? Mark::NonNeg : Mark::NonPos);
    }
    return ded;
}

// Two active slots. Sound rules only:
//   rhs = 0, both terms oriented the same way        -> both slots Zero
//   rhs = 0, exactly one term oriented               -> orient the other
//   rhs != 0, both terms oriented against sign(rhs)  -> contradiction
//   anything else                                    -> no deduction
inline Deduction process_two_var_equation(const ProgEquation& eq, std::size_t slot1,
                                          const Rat& coeff1, std::size_t slot2, const Rat& coeff2,
                                          const std::vector<Mark>& sign_vec) {
    Deduction ded;
    int o1 = detail::orientation(coeff1, sign_vec[slot1]);
    int o2 = detail::orientation(coeff2, sign_vec[slot2]);
    if (eq.rhs == 0) {
        if (o1 != 0 && o1 == o2) {
            ded.marks.emplace_back(slot1, Mark::Zero);
            ded.marks.emplace_back(slot2, Mark::Zero);
        } else if (o1 != 0 && o2 == 0) {
            int s = -o1 * sign(coeff2);  // coeff2*y2 = -coeff1*y1
            ded.marks.emplace_back(slot2, s > 0 ? Mark::NonNeg : Mark::NonPos);
        } else if (o2 != 0 && o1 == 0) {
            int s = -o2 * sign(coeff1);
            ded.marks.emplace_back(slot1, s > 0 ? Mark::NonNeg : Mark::NonPos);
        }
    } else if (o1 != 0 && o1 == o2 && o1 == -sign(eq.rhs)) {
        ded.contradiction = detail::describe_eq(eq) + " forces a sign contradiction";
    }
    return ded;
}

// Table-driven fixed point: scan every equation with Zero slots filtered
// out, apply the single- and two-variable rules, prune the monomial of any
// zeroed Gram diagonal together with its row and column, and repeat until a
// pass adds no Zero mark and no sign mark.
inline SimplificationReport simplify_program(ProgramSystem& psys) {
    SimplificationReport rep;
    rep.removed.resize(psys.bases.size());
    std::vector<std::vector<bool>> basis_active(psys.bases.size());
    for (std::size_t k = 0; k < psys.bases.size(); ++k)
        basis_active[k].assign(psys.bases[k].size(), true);

    auto finish = [&](SimplifyStatus st, std::string cert) {
        rep.status = st;
        rep.certificate = std::move(cert);
        for (std::size_t k = 0; k < psys.bases.size(); ++k) {
            std::vector<DegreeVector> kept;
            for (std::size_t i = 0; i < psys.bases[k].size(); ++i)
                if (basis_active[k][i]) kept.push_back(psys.bases[k][i]);
            rep.final_bases.push_back(MonomialBasis(psys.bases[k].nvars(), std::move(kept)));
        }
        for (std::size_t j = 0; j < psys.layout.ndecs(); ++j) {
            rep.decision_marks.push_back(psys.sign[j]);
            if (psys.sign[j] == Mark::Zero) rep.zeroed_decision_vars.push_back(j + 1);
        }
        return rep;
    };

    if (psys.early_infeasible)
        return finish(SimplifyStatus::InfeasibleCertificate, *psys.early_infeasible);

    auto active_entries = [&](const ProgEquation& eq) {
        std::vector<std::pair<std::size_t, Rat>> act;
        for (const auto& [slot, c] : eq.entries)
            if (psys.sign[slot] != Mark::Zero && c != 0) act.emplace_back(slot, c);
        return act;
    };

    for (;;) {
        ++rep.iterations;

        // Certificates implied by the state at pass start are reported
        // before any new mark is applied, so partial results match the
        // zero diagonal algorithm's sweep convention in the r = 0 case.
        for (const auto& eq : psys.equations) {
            auto act = active_entries(eq);
            Deduction ded;
            if (act.empty()) {
                if (eq.rhs != 0)
                    return finish(SimplifyStatus::InfeasibleCertificate,
                                  detail::describe_eq(eq) + " reduces to 0 = " +
                                      rational_to_string(eq.rhs));
                continue;
            } else if (act.size() == 1) {
                ded = process_single_var_equation(eq, act[0].first, act[0].second, psys.sign);
            } else if (act.size() == 2) {
                ded = process_two_var_equation(eq, act[0].first, act[0].second, act[1].first,
                                               act[1].second, psys.sign);
            }
            if (ded.contradiction)
                return finish(SimplifyStatus::InfeasibleCertificate, *ded.contradiction);
        }

        bool sign_progress = false;
        std::vector<std::size_t> newly_zero;

        for (const auto& eq : psys.equations) {
            auto act = active_entries(eq);
            Deduction ded;
            if (act.empty()) {
                if (eq.rhs != 0)
                    return finish(SimplifyStatus::InfeasibleCertificate,
                                  detail::describe_eq(eq) + " reduces to 0 = " +
                                      rational_to_string(eq.rhs));
                continue;
            } else if (act.size() == 1) {
                ded = process_single_var_equation(eq, act[0].first, act[0].second, psys.sign);
            } else if (act.size() == 2) {
                ded = process_two_var_equation(eq, act[0].first, act[0].second, act[1].first,
                                               act[1].second, psys.sign);
            } else {
                continue;
            }
            if (ded.contradiction)
                return finish(SimplifyStatus::InfeasibleCertificate, *ded.contradiction);
            for (const auto& [slot, m] : ded.marks) {
                if (psys.sign[slot] == m) continue;
                psys.sign[slot] = m;
                if (m == Mark::Zero)
                    newly_zero.push_back(slot);
                else
                    sign_progress = true;
            }
        }

        // Zeroed Gram diagonals prune their monomial and whole row/column.
        for (std::size_t idx = 0; idx < newly_zero.size(); ++idx) {
            auto loc = psys.layout.locate(newly_zero[idx]);
            if (loc.is_dec || loc.i != loc.j) continue;
            if (!basis_active[loc.k][loc.i]) continue;
            basis_active[loc.k][loc.i] = false;
            rep.removed[loc.k].push_back(psys.bases[loc.k][loc.i]);
            for (std::size_t l = 0; l < psys.bases[loc.k].size(); ++l) {
                std::size_t s = psys.layout.gram_slot(loc.k, loc.i, l);
                if (psys.sign[s] != Mark::Zero) {
                    psys.sign[s] = Mark::Zero;
                    newly_zero.push_back(s);
                }
            }
        }

        if (newly_zero.empty() && !sign_progress) break;
    }
    return finish(SimplifyStatus::Simplified, "");
}

}  // namespace sosprep
