#pragma once

// Shared deterministic generators for the property-style tests.

#include "sosprep/basis.hpp"
#include "sosprep/polynomial.hpp"

#include <random>
#include <vector>

namespace sosprep::testing {

inline DegreeVector random_degree_vector(std::mt19937_64& rng, int nvars, int max_total) {
    std::uniform_int_distribution<int> total(0, max_total);
    DegreeVector v(nvars, 0);
    int budget = total(rng);
    for (int i = 0; i < nvars && budget > 0; ++i) {
        std::uniform_int_distribution<int> e(0, budget);
        v[i] = (i + 1 == nvars) ? budget : e(rng);
        budget -= v[i];
    }
    return v;
}

inline Rat random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-9, 9);
    int v = 0;
    while (v == 0) v = c(rng);
    return Rat(v);
}

// Random polynomial with even total degree: one anchor term with all-even
// exponents at the top degree, plus random lower-or-equal terms.
inline Polynomial random_even_polynomial(std::mt19937_64& rng, int nvars, int deg, int terms) {
    Polynomial p(nvars);
    DegreeVector anchor(nvars, 0);
    std::uniform_int_distribution<int> pick(0, nvars - 1);
    for (int i = 0; i < deg / 2; ++i) anchor[pick(rng)] += 1;
    for (int& e : anchor) e *= 2;
    p.add_term(anchor, Rat(std::uniform_int_distribution<int>(1, 9)(rng)));
    int guard = 0;
    while (static_cast<int>(p.terms().size()) < terms && ++guard < 1000) {
        DegreeVector v = random_degree_vector(rng, nvars, deg);
        if (p.coefficient(v) == 0) p.add_term(v, random_coeff(rng));
    }
    return p;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, int nvars, int deg, int terms) {
    Polynomial p(nvars);
    int guard = 0;
    while (static_cast<int>(p.terms().size()) < terms && ++guard < 1000) {
        DegreeVector v = random_degree_vector(rng, nvars, deg);
        if (p.coefficient(v) == 0) p.add_term(v, random_coeff(rng));
    }
    return p;
}

}  // namespace sosprep::testing
