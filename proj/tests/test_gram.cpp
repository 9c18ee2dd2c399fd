#include "sosprep/gram.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sosprep;

namespace {

const char* kEq4 = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1";

const Equation& equation_for(const GramConstraintSystem& sys, const DegreeVector& alpha) {
    for (const auto& eq : sys.equations())
        if (eq.product_degree == alpha) return eq;
    FAIL("no equation for requested degree");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("build_gram_system over the full degree-2 basis") {
    GramConstraintSystem sys = build_gram_system(parse_polynomial(kEq4), full_basis(2, 2));
    REQUIRE(sys.equations().size() == 15);

    const Equation& top = equation_for(sys, {0, 4});
    REQUIRE(top.rhs == 0);
    REQUIRE(top.entries.size() == 1);
    REQUIRE(top.entries[0].i == 5);
    REQUIRE(top.entries[0].j == 5);

    const Equation& constant = equation_for(sys, {0, 0});
    REQUIRE(constant.rhs == 1);
    REQUIRE(constant.entries.size() == 1);
    REQUIRE(constant.entries[0].i == 0);
    REQUIRE(constant.entries[0].j == 0);
}

TEST_CASE("single-monomial system") {
    GramConstraintSystem sys =
        build_gram_system(parse_polynomial("1"), MonomialBasis(1, {{0}}));
    REQUIRE(sys.equations().size() == 1);
    REQUIRE(sys.equations()[0].rhs == 1);
    REQUIRE(sys.equations()[0].entries.size() == 1);
}

TEST_CASE("sparse block example exposes a lone diagonal") {
    MonomialBasis m(2, {{1, 0}, {0, 1}, {1, 1}, {2, 2}});
    GramConstraintSystem sys = build_gram_system(parse_polynomial("x1^2 + x2^2 + x1^4*x2^4"), m);
    const Equation& eq = equation_for(sys, {2, 2});
    REQUIRE(eq.rhs == 0);
    REQUIRE(eq.entries.size() == 1);
    REQUIRE(eq.entries[0].i == 2);
    REQUIRE(eq.entries[0].j == 2);
}

TEST_CASE("support point outside M+M is a recorded certificate, not an error") {
    GramConstraintSystem sys =
        build_gram_system(parse_polynomial("x1^4 + 1", 1), MonomialBasis(1, {{0}}));
    const Equation& eq = equation_for(sys, {4});
    REQUIRE(eq.entries.empty());
    REQUIRE(eq.rhs == 1);
}

TEST_CASE("evaluate_gram reproduces the paper's witness") {
    MonomialBasis m(2, {{0, 0}, {1, 0}, {0, 1}, {2, 0}});
    GramMatrix q(4, {{{1, 0, 0, 0},
                      {0, 7, -2, 0},
                      {0, -2, 4, -1},
                      {0, 0, -1, 3}}});
    REQUIRE(evaluate_gram(m, q) == parse_polynomial(kEq4));
    REQUIRE(is_psd(q));
}

TEST_CASE("evaluate_gram basics") {
    MonomialBasis m(2, {{0, 0}, {1, 0}});
    REQUIRE(evaluate_gram(m, GramMatrix(2)).is_zero());
    GramMatrix eye(2);
    eye.set(0, 0, Rat(1));
    eye.set(1, 1, Rat(1));
    REQUIRE(evaluate_gram(m, eye) == parse_polynomial("x1^2 + 1", 2));
    REQUIRE_THROWS_AS(evaluate_gram(m, GramMatrix(3)), std::invalid_argument);
}

TEST_CASE("deactivation uncovers new forced diagonals") {
    GramConstraintSystem sys = build_gram_system(parse_polynomial(kEq4), full_basis(2, 2));
    sys.deactivate(5);  // x2^2
    const Equation& uncovered = equation_for(sys, {2, 2});
    REQUIRE(uncovered.entries.size() == 1);
    REQUIRE(uncovered.entries[0].i == 4);
    REQUIRE(uncovered.entries[0].j == 4);
    REQUIRE(equation_for(sys, {1, 2}).entries.size() == 1);  // lost the pair with x2^2
    REQUIRE(equation_for(sys, {0, 3}).entries.empty());

    REQUIRE_THROWS_AS(sys.deactivate(5), std::invalid_argument);
    REQUIRE_THROWS_AS(sys.deactivate(99), std::out_of_range);
}

TEST_CASE("deactivating the only entry leaves an infeasibility marker") {
    GramConstraintSystem sys =
        build_gram_system(parse_polynomial("1"), MonomialBasis(1, {{0}}));
    sys.deactivate(0);
    REQUIRE(sys.equations()[0].entries.empty());
    REQUIRE(sys.equations()[0].rhs == 1);
}

TEST_CASE("pair-count identity") {
    for (int n = 1; n <= 3; ++n) {
        for (int d = 0; d <= 3; ++d) {
            MonomialBasis m = full_basis(n, d);
            GramConstraintSystem sys = build_gram_system(Polynomial(n), m);
            std::size_t total = 0;
            for (const auto& eq : sys.equations())
                for (const auto& e : eq.entries) total += e.multiplicity;
            REQUIRE(total == m.size() * m.size());
        }
    }
}

TEST_CASE("witness check: Q satisfies the equations iff zQz equals p") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        int n = 1 + static_cast<int>(rng() % 3);
        MonomialBasis m = full_basis(n, 1 + rng() % 2);
        if (m.size() > 6) m = MonomialBasis(n, {m.entries().begin(), m.entries().begin() + 6});
        GramMatrix q(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i; j < m.size(); ++j)
                q.set(i, j, Rat(static_cast<int>(rng() % 11) - 5));

        Polynomial zqz = evaluate_gram(m, q);
        GramConstraintSystem sys = build_gram_system(zqz, m);
        for (const auto& eq : sys.equations()) {
            Rat lhs(0);
            for (const auto& e : eq.entries) lhs += Rat(e.multiplicity) * q.at(e.i, e.j);
            REQUIRE(lhs == eq.rhs);
        }

        // perturb one entry: some equation must now fail
        GramMatrix bad = q;
        bad.set(0, 0, q.at(0, 0) + 1);
        bool violated = false;
        GramConstraintSystem sys2 = build_gram_system(zqz, m);
        for (const auto& eq : sys2.equations()) {
            Rat lhs(0);
            for (const auto& e : eq.entries) lhs += Rat(e.multiplicity) * bad.at(e.i, e.j);
            if (lhs != eq.rhs) violated = true;
        }
        REQUIRE(violated == (evaluate_gram(m, bad) != zqz));
    }
}

TEST_CASE("exact PSD check") {
    GramMatrix psd(2, {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}});
    REQUIRE(is_psd(psd));
    GramMatrix indefinite(2, {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}});
    REQUIRE_FALSE(is_psd(indefinite));
    GramMatrix zero_diag_nonzero_row(2, {{Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
    REQUIRE_FALSE(is_psd(zero_diag_nonzero_row));
    REQUIRE(is_psd(GramMatrix(3)));
}
