#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drep/linalg.hpp"

#include <random>

using namespace drep;

namespace {

std::vector<Rational> mat_apply(const SparseMatrix& a, const std::vector<Rational>& x) {
    std::vector<Rational> y(static_cast<size_t>(a.rows), Rational(0));
    for (int r = 0; r < a.rows; ++r)
        for (const auto& [c, v] : a.row[static_cast<size_t>(r)])
            y[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
    return y;
}

SparseMatrix random_matrix(std::mt19937& rng, int max_dim, double density) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    SparseMatrix a(dim(rng), dim(rng));
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c)
            if (coin(rng) < density) {
                Rational v(num(rng), den(rng));
                v.canonicalize();
                a.set(r, c, v);
            }
    return a;
}

} // namespace

TEST_CASE("reduction of a small known matrix") {
    // [1 2 3; 2 4 6; 0 1 1] has rank 2.
    SparseMatrix a(3, 3);
    a.set(0, 0, 1); a.set(0, 1, 2); a.set(0, 2, 3);
    a.set(1, 0, 2); a.set(1, 1, 4); a.set(1, 2, 6);
    a.set(2, 1, 1); a.set(2, 2, 1);
    Reduction red = reduce(a);
    CHECK(red.rank == 2);
    auto ker = red.kernel();
    REQUIRE(ker.size() == 1);
    std::vector<Rational> k(3, Rational(0));
    for (const auto& [i, v] : ker[0]) k[static_cast<size_t>(i)] = v;
    for (const Rational& y : mat_apply(a, k)) CHECK(y == 0);

    auto sol = red.solve({1, 2, 1});
    REQUIRE(sol.has_value());
    auto img = mat_apply(a, *sol);
    CHECK(img == std::vector<Rational>{1, 2, 1});
    CHECK_FALSE(red.solve({1, 3, 1}).has_value());
}

TEST_CASE("zero and identity matrices") {
    SparseMatrix z(2, 3);
    Reduction red = reduce(z);
    CHECK(red.rank == 0);
    CHECK(red.kernel().size() == 3);
    auto sol = red.solve({0, 0});
    REQUIRE(sol.has_value());
    CHECK(*sol == std::vector<Rational>(3, Rational(0)));

    SparseMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.set(i, i, 1);
    CHECK(rank_of(id) == 4);
    CHECK(reduce(id).kernel().empty());
}

TEST_CASE("dense path engages on full matrices") {
    SparseMatrix a(4, 4);
    int v = 1;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a.set(r, c, Rational(v++ % 7 + 1));
    Reduction red = reduce(a);
    CHECK(red.dense_path);
    SparseMatrix b(40, 40);
    b.set(3, 5, Rational(1, 2));
    CHECK_FALSE(reduce(b).dense_path);
}

TEST_CASE("policies and paths agree (randomized)") {
    std::mt19937 rng(90210);
    for (int i = 0; i < 1000; ++i) {
        double density = (i % 2) ? 0.2 : 0.8; // exercise both storage paths
        SparseMatrix a = random_matrix(rng, 7, density);
        Reduction fast = reduce(a, PivotPolicy::SmallestMagnitude);
        Reduction naive = reduce(a, PivotPolicy::FirstNonzero);
        CHECK(fast.rank == naive.rank);
        CHECK(fast.kernel().size() == naive.kernel().size());

        for (const auto& kv : fast.kernel()) {
            std::vector<Rational> x(static_cast<size_t>(a.cols), Rational(0));
            for (const auto& [c, v] : kv) x[static_cast<size_t>(c)] = v;
            for (const Rational& y : mat_apply(a, x)) CHECK(y == 0);
        }

        // A (solve(A, A x0)) = A x0 for a random x0.
        std::uniform_int_distribution<int> num(-3, 3);
        std::vector<Rational> x0(static_cast<size_t>(a.cols));
        for (auto& v : x0) v = num(rng);
        auto rhs = mat_apply(a, x0);
        auto sol = fast.solve(rhs);
        REQUIRE(sol.has_value());
        CHECK(mat_apply(a, *sol) == rhs);
    }
}
