#include "sosprep/zda.hpp"

#include "sosprep/newton.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sosprep;
using sosprep::testing::random_even_polynomial;
using sosprep::testing::random_polynomial;

namespace {
const char* kEq4 = "3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1";
}

TEST_CASE("find_forced_zero_diagonals on the worked example") {
    GramConstraintSystem sys = build_gram_system(parse_polynomial(kEq4), full_basis(2, 2));
    REQUIRE(find_forced_zero_diagonals(sys) == std::vector<std::size_t>{5});
    sys.deactivate(5);
    REQUIRE(find_forced_zero_diagonals(sys) == std::vector<std::size_t>{4});

    GramConstraintSystem one = build_gram_system(parse_polynomial("1"), MonomialBasis(1, {{0}}));
    REQUIRE(find_forced_zero_diagonals(one).empty());
}

TEST_CASE("zda_reduce on the worked example") {
    ZdaResult res = zda_reduce(build_gram_system(parse_polynomial(kEq4), full_basis(2, 2)));
    REQUIRE(res.status == ZdaStatus::Reduced);
    std::vector<DegreeVector> expected = {{0, 0}, {1, 0}, {0, 1}, {2, 0}};
    REQUIRE(res.final_basis.entries() == expected);
    REQUIRE(res.removed.size() == 2);
    REQUIRE(res.removed[0] == std::make_pair(std::size_t(1), DegreeVector{0, 2}));
    REQUIRE(res.removed[1] == std::make_pair(std::size_t(2), DegreeVector{1, 1}));
    REQUIRE(res.sweeps <= 3);
}

TEST_CASE("zda_reduce beats the Newton reduction on the sparse block example") {
    Polynomial p = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4");
    MonomialBasis m0(2, {{1, 0}, {0, 1}, {1, 1}, {2, 2}});
    ZdaResult res = zda_reduce(build_gram_system(p, m0));
    REQUIRE(res.status == ZdaStatus::Reduced);
    std::vector<DegreeVector> expected = {{1, 0}, {0, 1}, {2, 2}};
    REQUIRE(res.final_basis.entries() == expected);
    REQUIRE(res.removed.size() == 1);
    REQUIRE(res.removed[0].second == DegreeVector{1, 1});
}

TEST_CASE("indefinite monomial yields an infeasibility certificate") {
    ZdaResult res = zda_reduce(build_gram_system(parse_polynomial("x1*x2"), full_basis(2, 1)));
    REQUIRE(res.status == ZdaStatus::InfeasibleCertificate);
    REQUIRE(res.certificate == DegreeVector{1, 1});
}

TEST_CASE("negative forced diagonal is infeasible") {
    // leading coefficient of x1^4 is negative and (x1^2, x1^2) is its only pair
    ZdaResult res =
        zda_reduce(build_gram_system(parse_polynomial("-1*x1^4 + x1^2"), full_basis(1, 2)));
    REQUIRE(res.status == ZdaStatus::InfeasibleCertificate);
    REQUIRE(res.certificate == DegreeVector{4});
}

TEST_CASE("containment chain: zda subset of newton subset of initial") {
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng() % 3);
        int deg = 2 * (1 + static_cast<int>(rng() % 4));
        Polynomial p = random_even_polynomial(rng, n, deg, 3 + rng() % 10);
        MonomialBasis m0 = full_basis(n, degree(p) / 2);
        MonomialBasis nb = newton_reduce(p, m0);
        ZdaResult res = zda_reduce(build_gram_system(p, m0));
        // an aborted run leaves a partial basis, so the containment claim
        // only covers completed reductions
        if (res.status == ZdaStatus::Reduced)
            for (const auto& alpha : res.final_basis) REQUIRE(nb.contains(alpha));
        for (const auto& alpha : nb) REQUIRE(m0.contains(alpha));
        REQUIRE(res.sweeps <= m0.size() + 1);
    }
}

TEST_CASE("sums of squares survive and their Gram matrix still fits") {
    std::mt19937_64 rng(808);
    int done = 0;
    while (done < 50) {
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<Polynomial> fs;
        for (int i = 0; i < 1 + static_cast<int>(rng() % 3); ++i) {
            Polynomial f = random_polynomial(rng, n, 3, 1 + rng() % 4);
            if (!f.is_zero()) fs.push_back(f);
        }
        if (fs.empty()) continue;
        Polynomial p = sum_of_squares(fs);
        ZdaResult res = zda_reduce(build_gram_system(p, full_basis(n, degree(p) / 2)));
        REQUIRE(res.status == ZdaStatus::Reduced);
        const MonomialBasis& mb = res.final_basis;
        for (const auto& f : fs)
            for (const auto& [alpha, c] : f.terms()) REQUIRE(mb.contains(alpha));

        // Q = sum a_i a_i^T over the final basis reproduces p exactly
        GramMatrix q(mb.size());
        for (const auto& f : fs) {
            std::vector<Rat> a(mb.size(), Rat(0));
            for (std::size_t i = 0; i < mb.size(); ++i) a[i] = f.coefficient(mb[i]);
            for (std::size_t i = 0; i < mb.size(); ++i)
                for (std::size_t j = i; j < mb.size(); ++j)
                    q.set(i, j, q.at(i, j) + a[i] * a[j]);
        }
        REQUIRE(evaluate_gram(mb, q) == p);
        ++done;
    }
}

TEST_CASE("zda_reduce is idempotent") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 30; ++iter) {
        int n = 1 + static_cast<int>(rng() % 2);
        Polynomial p = random_even_polynomial(rng, n, 4 + 2 * (rng() % 2), 3 + rng() % 6);
        ZdaResult first = zda_reduce(build_gram_system(p, full_basis(n, degree(p) / 2)));
        if (first.status != ZdaStatus::Reduced) continue;
        ZdaResult again = zda_reduce(std::move(first.reduced_system));
        REQUIRE(again.removed.empty());
        REQUIRE(again.final_basis == first.final_basis);
    }
}

TEST_CASE("full and heuristic initializations agree") {
    std::mt19937_64 rng(606);
    for (int iter = 0; iter < 100; ++iter) {
        int n = 1 + static_cast<int>(rng() % 3);
        int deg = 2 * (1 + static_cast<int>(rng() % 3));
        Polynomial p = random_even_polynomial(rng, n, deg, 3 + rng() % 8);
        ZdaResult from_full = zda_reduce(build_gram_system(p, full_basis(n, degree(p) / 2)));
        ZdaResult from_heur = zda_reduce(build_gram_system(p, heuristic_init(p)));
        if (from_full.status == ZdaStatus::Reduced && from_heur.status == ZdaStatus::Reduced)
            REQUIRE(from_full.final_basis == from_heur.final_basis);
        else
            REQUIRE(from_full.status == from_heur.status);
    }
}
