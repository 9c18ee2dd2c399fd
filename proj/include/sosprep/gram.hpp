#pragma once

#include "sosprep/basis.hpp"
#include "sosprep/polynomial.hpp"
#include "sosprep/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace sosprep {

// One unordered index pair of S_alpha. Off-diagonal pairs carry
// multiplicity 2 (they stand for Q_ij and Q_ji); diagonal pairs carry 1.
struct PairEntry {
    std::size_t i, j;  // i <= j, indices into the basis
    int multiplicity;
};

// The coefficient-matching equation for one product degree alpha:
//   sum over entries of multiplicity * Q_ij = rhs
struct Equation {
    DegreeVector product_degree;
    std::vector<PairEntry> entries;
    Rat rhs;
};

// Symmetric matrix of exact rationals.
class GramMatrix {
public:
    explicit GramMatrix(std::size_t dim) : dim_(dim), values_(dim, std::vector<Rat>(dim, Rat(0))) {}

    GramMatrix(std::size_t dim, std::vector<std::vector<Rat>> values)
        : dim_(dim), values_(std::move(values)) {
        if (values_.size() != dim) throw std::invalid_argument("GramMatrix: row count mismatch");
        for (const auto& row : values_)
            if (row.size() != dim) throw std::invalid_argument("GramMatrix: column count mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                if (values_[i][j] != values_[j][i])
                    throw std::invalid_argument("GramMatrix: not symmetric");
    }

    std::size_t dim() const { return dim_; }
    const Rat& at(std::size_t i, std::size_t j) const { return values_[i][j]; }
    void set(std::size_t i, std::size_t j, const Rat& v) {
        values_[i][j] = v;
        values_[j][i] = v;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<Rat>> values_;
};

// Exact PSD test: recursive Schur complement. A symmetric matrix is PSD iff
// every diagonal is nonnegative, a zero diagonal forces a zero row, and the
// Schur complement w.r.t. a positive diagonal pivot is PSD.
inline bool is_psd(const GramMatrix& q) {
    std::size_t n = q.dim();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = q.at(i, j);
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            if (a[i][i] < 0) return false;
            if (a[i][i] > 0 && piv == n) piv = i;
        }
        if (piv == n) {
            // all remaining diagonals zero: off-diagonals must vanish too
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[j] && a[i][j] != 0) return false;
            }
            return true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || i == piv) continue;
            Rat f = a[i][piv] / a[piv][piv];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j] && j != piv) a[i][j] -= f * a[piv][j];
            a[i][piv] = 0;
        }
        done[piv] = true;
    }
    return true;
}

// The equality system from matching coefficients of p and z^T Q z over the
// basis M. Column deactivation realizes monomial removal without rebuilding.
class GramConstraintSystem {
public:
    GramConstraintSystem(MonomialBasis basis, std::vector<Equation> equations)
        : basis_(std::move(basis)),
          active_(basis_.size(), true),
          equations_(std::move(equations)) {}

    const MonomialBasis& basis() const { return basis_; }
    const std::vector<Equation>& equations() const { return equations_; }
    const std::vector<bool>& active() const { return active_; }
    bool is_active(std::size_t i) const { return active_.at(i); }

    std::size_t active_count() const {
        return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));
    }

    // Basis restricted to the active flags.
    MonomialBasis active_basis() const {
        std::vector<DegreeVector> kept;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (active_[i]) kept.push_back(basis_[i]);
        return MonomialBasis(basis_.nvars(), std::move(kept));
    }

    // Clear the flag for one monomial and drop every pair entry touching it.
    // Equations may become empty; a nonzero rhs then certifies infeasibility.
    void deactivate(std::size_t index) {
        if (index >= active_.size()) throw std::out_of_range("deactivate: index out of range");
        if (!active_[index]) throw std::invalid_argument("deactivate: index already inactive");
        active_[index] = false;
        for (auto& eq : equations_) {
            std::erase_if(eq.entries,
                          [index](const PairEntry& e) { return e.i == index || e.j == index; });
        }
    }

private:
    MonomialBasis basis_;
    std::vector<bool> active_;
    std::vector<Equation> equations_;
};

// Equations indexed by M+M in graded-lex order; rhs is c_alpha on the
// support of p and 0 elsewhere. A support point outside M+M yields an
// equation with no entries and nonzero rhs (an infeasibility certificate
// recorded in the system, not an error).
inline GramConstraintSystem build_gram_system(const Polynomial& p, const MonomialBasis& m) {
    if (p.nvars() != m.nvars()) throw std::invalid_argument("build_gram_system: nvars mismatch");
    std::map<DegreeVector, std::vector<PairEntry>, GradedLexLess> pairs;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i; j < m.size(); ++j)
            pairs[add(m[i], m[j])].push_back({i, j, i == j ? 1 : 2});

    std::map<DegreeVector, Rat, GradedLexLess> rhs(p.terms().begin(), p.terms().end());
    for (const auto& [alpha, c] : p.terms())
        pairs.try_emplace(alpha);  // support point outside M+M -> empty entries

    std::vector<Equation> eqs;
    eqs.reserve(pairs.size());
    for (auto& [alpha, ent] : pairs) {
        auto it = rhs.find(alpha);
        eqs.push_back({alpha, std::move(ent), it == rhs.end() ? Rat(0) : it->second});
    }
    return GramConstraintSystem(m, std::move(eqs));
}

// z^T Q z as an exact polynomial.
inline Polynomial evaluate_gram(const MonomialBasis& m, const GramMatrix& q) {
    if (q.dim() != m.size()) throw std::invalid_argument("evaluate_gram: dimension mismatch");
    Polynomial out(m.nvars());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out.add_term(add(m[i], m[j]), q.at(i, j));
    return out;
}

}  // namespace sosprep
