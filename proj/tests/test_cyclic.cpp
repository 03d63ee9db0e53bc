#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drep/cyclic.hpp"
#include "oracles.hpp"

using namespace drep;

namespace {

AlgebraSpec spec_of(std::vector<std::pair<std::string, int>> gens,
                    std::vector<std::string> rels) {
    AlgebraSpec spec;
    spec.pres.flavor = Flavor::NC;
    for (const auto& [name, w] : gens) spec.pres.add_generator({name, 0, w});
    for (const auto& r : rels) spec.relations.push_back(parse_poly(spec.pres, r));
    return spec;
}

AlgebraSpec dual_numbers() { return spec_of({{"e", 1}}, {"e*e"}); }
AlgebraSpec two_fields() { return spec_of({{"u", 1}}, {"u*u - u"}); }
AlgebraSpec matrices2() {
    return spec_of({{"u", 1}, {"v", 1}}, {"u*u", "v*v", "u*v + v*u - 1"});
}
AlgebraSpec ground_field() { return AlgebraSpec{}; }
AlgebraSpec poly_one_var() { return spec_of({{"x", 1}}, {}); }

SparseMatrix mult(const SparseMatrix& a, const SparseMatrix& b) {
    REQUIRE(a.cols == b.rows);
    SparseMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (const auto& [k, va] : a.row[static_cast<size_t>(r)])
            for (const auto& [c, vb] : b.row[static_cast<size_t>(k)])
                out.add(r, c, va * vb);
    return out;
}

bool is_zero(const SparseMatrix& m) {
    for (const auto& row : m.row)
        for (const auto& [c, v] : row)
            if (v != 0) return false;
    return true;
}

} // namespace

TEST_CASE("cyclic reduction canonicalizes rotations with signs") {
    // Length 2 carries rotation sign -1.
    CyclicCanon c = cyclic_reduce({3, 1}, 1);
    CHECK(c.word == CycWord{1, 3});
    CHECK(c.sign == -1);
    CHECK_FALSE(c.zero);
    // A fixed word whose own rotation is odd vanishes.
    CyclicCanon z = cyclic_reduce({2, 2}, 1);
    CHECK(z.zero);
    // Length 3 rotations are even.
    CyclicCanon e = cyclic_reduce({2, 0, 1}, 2);
    CHECK(e.word == CycWord{0, 1, 2});
    CHECK(e.sign == 1);
}

TEST_CASE("cyclic words of the ground field alternate") {
    BasedAlgebra a = based_algebra(ground_field(), -1);
    REQUIRE(a.dim() == 1);
    for (int n = 0; n <= 6; ++n)
        CHECK(cyclic_basis(a, n).size() == (n % 2 == 0 ? 1u : 0u));
}

TEST_CASE("cyclic homology of the ground field") {
    BasedAlgebra a = based_algebra(ground_field(), -1);
    auto cells = hc_dims(a, 6);
    REQUIRE(cells.size() == 7);
    for (int n = 0; n <= 6; ++n) {
        CHECK(cells[static_cast<size_t>(n)].dim == (n % 2 == 0 ? 1 : 0));
        CHECK(cells[static_cast<size_t>(n)].reduced_dim == 0);
    }
}

TEST_CASE("b and b' square to zero on finite-dimensional coefficients") {
    for (const AlgebraSpec& spec : {dual_numbers(), two_fields(), matrices2()}) {
        BasedAlgebra a = based_algebra(spec, -1);
        for (int n = 2; n <= 4; ++n) {
            auto c2 = cyclic_basis(a, n);
            auto c1 = cyclic_basis(a, n - 1);
            auto c0 = cyclic_basis(a, n - 2);
            CHECK(is_zero(mult(b_matrix(a, n - 1, c1, c0), b_matrix(a, n, c2, c1))));
            auto t2 = tensor_words(a, n + 1);
            auto t1 = tensor_words(a, n);
            auto t0 = tensor_words(a, n - 1);
            CHECK(is_zero(
                mult(bprime_matrix(a, n, t1, t0), bprime_matrix(a, n + 1, t2, t1))));
        }
    }
}

TEST_CASE("b of a commutator word lands on the traceless part") {
    BasedAlgebra a = based_algebra(matrices2(), -1);
    int u = a.index_of({0}), v = a.index_of({1}), uv = a.index_of({0, 1});
    REQUIRE(u > 0);
    REQUIRE(v > 0);
    REQUIRE(uv > 0);
    auto src = cyclic_basis(a, 1);
    auto dst = cyclic_basis(a, 0);
    SparseMatrix b = b_matrix(a, 1, src, dst);
    int col = -1;
    for (size_t i = 0; i < src.size(); ++i)
        if (src[i] == CycWord{u, v}) col = static_cast<int>(i);
    REQUIRE(col >= 0);
    // b(u, v) = uv - vu = 2 uv - 1.
    std::map<CycWord, Rational> expect{{{uv}, 2}, {{a.unit}, -1}};
    for (size_t r = 0; r < dst.size(); ++r) {
        Rational want = expect.count(dst[r]) ? expect[dst[r]] : Rational(0);
        CHECK(b.get(static_cast<int>(r), col) == want);
    }
}

TEST_CASE("matrix algebra has one-dimensional HC_0") {
    BasedAlgebra a = based_algebra(matrices2(), -1);
    REQUIRE(a.dim() == 4);
    auto cells = hc_dims(a, 2);
    CHECK(cells[0].dim == 1);
    CHECK(cells[0].reduced_dim == 0);
    CHECK(cells[2].dim == 1);
}

TEST_CASE("norm map checks pass for the two sample coefficient algebras") {
    for (const AlgebraSpec& spec : {dual_numbers(), two_fields()}) {
        BasedAlgebra a = based_algebra(spec, -1);
        NormReport r = norm_check(a, 5);
        CHECK(r.pass);
        CHECK_FALSE(r.detail.empty());
    }
}

TEST_CASE("the norm image equals the averaged invariant subspace") {
    for (const AlgebraSpec& spec : {dual_numbers(), two_fields()}) {
        BasedAlgebra a = based_algebra(spec, -1);
        for (int len = 1; len <= 5; ++len) {
            auto src = cyclic_basis(a, len - 1);
            auto dst = tensor_words(a, len);
            SparseMatrix n = norm_matrix(a, len, src, dst);
            oracle::Projector p = oracle::cyclic_invariants(a.dim(), len);
            REQUIRE(p.mat.rows == static_cast<int>(dst.size()));
            // Index conversion: engine rows follow the enumeration order of
            // dst, the oracle uses base-dim digits, first letter leading.
            auto oracle_row = [&](const CycWord& w) {
                long long idx = 0;
                for (int letter : w) idx = idx * a.dim() + letter;
                return static_cast<int>(idx);
            };
            SparseMatrix joint(p.mat.rows, n.cols + p.mat.cols);
            for (int r = 0; r < n.rows; ++r)
                for (const auto& [c, v] : n.row[static_cast<size_t>(r)])
                    joint.add(oracle_row(dst[static_cast<size_t>(r)]), c, v);
            for (int r = 0; r < p.mat.rows; ++r)
                for (const auto& [c, v] : p.mat.row[static_cast<size_t>(r)])
                    joint.add(r, n.cols + c, v);
            int rn = rank_of(n);
            CHECK(rn == static_cast<int>(src.size())); // N injective
            CHECK(rn == p.rank);
            CHECK(rank_of(joint) == rn); // same column span
        }
    }
}

TEST_CASE("weight-graded cyclic homology of one polynomial variable") {
    BasedAlgebra a = based_algebra(poly_one_var(), 3);
    auto cells = hc_dims(a, 3, 3);
    auto cell = [&](int n, int w) -> const HCCell& {
        for (const auto& c : cells)
            if (c.n == n && c.w == w) return c;
        throw std::logic_error("missing cell");
    };
    for (int w = 0; w <= 3; ++w) {
        CHECK(cell(0, w).dim == 1);
        CHECK(cell(0, w).reduced_dim == (w == 0 ? 0 : 1));
        CHECK(cell(1, w).dim == 0);
        CHECK(cell(2, w).dim == (w == 0 ? 1 : 0));
        CHECK(cell(2, w).reduced_dim == 0);
        CHECK(cell(3, w).dim == 0);
    }
}
