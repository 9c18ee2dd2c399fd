#pragma once

#include "sosprep/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sosprep {

// Ordered list of distinct degree vectors, strictly increasing in the
// graded-lex basis order. Houses the monomial vector z and the sets M_k.
class MonomialBasis {
public:
    MonomialBasis(int nvars, std::vector<DegreeVector> entries)
        : nvars_(nvars), entries_(std::move(entries)) {
        if (nvars < 1) throw std::invalid_argument("nvars must be positive");
        for (const auto& e : entries_) {
            if (static_cast<int>(e.size()) != nvars)
                throw std::invalid_argument("degree vector length mismatch");
            for (int v : e)
                if (v < 0) throw std::invalid_argument("negative exponent");
        }
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (!graded_lex_precedes(entries_[i - 1], entries_[i]))
                throw std::invalid_argument("basis entries not strictly increasing");
    }

    static MonomialBasis from_unordered(int nvars, std::vector<DegreeVector> entries) {
        std::sort(entries.begin(), entries.end(), GradedLexLess{});
        entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
        return MonomialBasis(nvars, std::move(entries));
    }

    int nvars() const { return nvars_; }
    std::size_t size() const { return entries_.size(); }
    const DegreeVector& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<DegreeVector>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool contains(const DegreeVector& a) const {
        return std::binary_search(entries_.begin(), entries_.end(), a, GradedLexLess{});
    }

    bool operator==(const MonomialBasis& rhs) const {
        return nvars_ == rhs.nvars_ && entries_ == rhs.entries_;
    }

private:
    int nvars_;
    std::vector<DegreeVector> entries_;
};

// binomial(n+d, d), the number of monomials in n variables of degree <= d.
inline std::uint64_t count_monomials(int n, int d) {
    if (n < 1 || d < 0) throw std::invalid_argument("count_monomials: bad arguments");
    BigInt r = 1;
    for (int k = 1; k <= d; ++k) {
        r *= n + k;
        r /= k;
    }
    return static_cast<std::uint64_t>(r);
}

namespace detail {

inline void enumerate_degrees(int nvars, int var, int remaining, DegreeVector& cur,
                              std::vector<DegreeVector>& out) {
    if (var == nvars) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[var] = e;
        enumerate_degrees(nvars, var + 1, remaining - e, cur, out);
    }
    cur[var] = 0;
}

}  // namespace detail

// All monomials of total degree <= d, in graded-lex order.
inline MonomialBasis full_basis(int n, int d) {
    if (n < 1 || d < 0) throw std::invalid_argument("full_basis: bad arguments");
    std::vector<DegreeVector> all;
    DegreeVector cur(n, 0);
    detail::enumerate_degrees(n, 0, d, cur, all);
    return MonomialBasis::from_unordered(n, std::move(all));
}

// Cheap outer approximation of (1/2)C(p) intersected with N^n, built from
// two hull-linear bounds on the support:
//   ceil(mindeg(p)/2) <= deg(alpha) <= deg(p)/2
//   alpha_i <= ceil(max exponent of x_i over the support / 2)
// Both extremes of a linear functional over ch(A) occur at support points,
// so every lattice point of (1/2)C(p) passes both filters.
inline MonomialBasis heuristic_init(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("heuristic_init: zero polynomial");
    int deg = degree(p);
    if (deg % 2 != 0) throw std::invalid_argument("heuristic_init: odd-degree polynomial cannot be SOS");
    int lo = (min_degree(p) + 1) / 2;
    int hi = deg / 2;

    DegreeVector cap(p.nvars(), 0);
    for (const auto& [a, c] : p.terms())
        for (int i = 0; i < p.nvars(); ++i) cap[i] = std::max(cap[i], a[i]);
    for (int& v : cap) v = (v + 1) / 2;

    std::vector<DegreeVector> all;
    DegreeVector cur(p.nvars(), 0);
    detail::enumerate_degrees(p.nvars(), 0, hi, cur, all);
    std::vector<DegreeVector> kept;
    for (auto& a : all) {
        int t = total_degree(a);
        if (t < lo || t > hi) continue;
        bool ok = true;
        for (int i = 0; i < p.nvars(); ++i)
            if (a[i] > cap[i]) { ok = false; break; }
        if (ok) kept.push_back(std::move(a));
    }
    return MonomialBasis::from_unordered(p.nvars(), std::move(kept));
}

}  // namespace sosprep
