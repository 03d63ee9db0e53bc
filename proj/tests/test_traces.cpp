#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drep/cyclic.hpp"
#include "drep/homology.hpp"
#include "drep/traces.hpp"
#include "test_util.hpp"

using namespace drep;
using namespace drep::testutil;

namespace {

AlgebraSpec kxy_spec() {
    AlgebraSpec spec;
    spec.pres.flavor = Flavor::NC;
    spec.pres.add_generator({"x", 0, 1});
    spec.pres.add_generator({"y", 0, 1});
    spec.relations.push_back(parse_poly(spec.pres, "x*y - y*x"));
    return spec;
}

struct Setup {
    DGPresentation r;
    BasedAlgebra a;
    RepScheme s;
    ResolutionData res;
    ContractingHomotopy h;
    AInftyMorphism f;
    Setup(int d, int letters, int w_max)
        : r(ex2d_nc()),
          a(based_algebra(kxy_spec(), w_max)),
          s(matrix_reduce(r, d)),
          res(make_resolution_data(r, a)),
          h(build_homotopy(res, letters, w_max)),
          f(solve_components(res, h, letters, w_max)) {}
};

PolyMatrix matmul(const DGPresentation& p, const PolyMatrix& a, const PolyMatrix& b) {
    size_t d = a.size();
    PolyMatrix out(d, std::vector<Poly>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k)
                out[i][j] = add(out[i][j], mul(p, a[i][k], b[k][j]));
    return out;
}

PolyMatrix matpow(const DGPresentation& p, const PolyMatrix& a, int e) {
    size_t d = a.size();
    PolyMatrix out(d, std::vector<Poly>(d));
    for (size_t i = 0; i < d; ++i) out[i][i] = unit_poly();
    for (int i = 0; i < e; ++i) out = matmul(p, out, a);
    return out;
}

} // namespace

TEST_CASE("degree-zero traces factor through the multiplication") {
    Setup su(2, 2, 4);
    int ixy = su.a.index_of({0, 1});
    REQUIRE(ixy > 0);
    Poly t0 = trace_word(su.s, su.res, su.f, {ixy});
    PolyMatrix prod = matmul(su.s.entries, universal_matrix(su.s, 0), universal_matrix(su.s, 1));
    CHECK(t0 == matrix_trace(prod));
    // The noncommutative trace abelianizes to the same value.
    Poly nt = ntrace(su.s, su.res, ixy);
    CHECK(parse_poly(su.s.entries, print_poly(su.s.entries_nc, nt)) == t0);
}

TEST_CASE("rotating a word flips the trace by the degree sign") {
    Setup su(2, 2, 4);
    int ix = su.a.index_of({0}), iy = su.a.index_of({1});
    Poly tyx = trace_word(su.s, su.res, su.f, {iy, ix});
    Poly txy = trace_word(su.s, su.res, su.f, {ix, iy});
    CHECK(txy == negate(tyx));
    Poly tr_t = parse_poly(su.s.entries, "t_1_1 + t_2_2");
    CHECK(tyx == tr_t);
}

TEST_CASE("traces form a chain map against the cyclic differential") {
    Setup su(2, 4, 5);
    for (int n = 1; n <= 3; ++n)
        for (int w = 1; w <= 5; ++w) {
            auto src = cyclic_basis(su.a, n, w);
            auto dst = cyclic_basis(su.a, n - 1, w);
            if (src.empty()) continue;
            SparseMatrix b = b_matrix(su.a, n, src, dst);
            for (size_t c = 0; c < src.size(); ++c) {
                Poly lhs = apply_d(su.s.entries, trace_word(su.s, su.res, su.f, src[c]));
                std::map<CycWord, Rational> chain;
                for (size_t rr = 0; rr < dst.size(); ++rr) {
                    Rational v = b.get(static_cast<int>(rr), static_cast<int>(c));
                    if (v != 0) chain[dst[rr]] = v;
                }
                Poly rhs = trace_chain(su.s, su.res, su.f, chain);
                CHECK(sub(lhs, rhs).is_zero());
            }
        }
}

TEST_CASE("degree-one traces match the closed formulas modulo boundaries") {
    Setup su(2, 2, 5);
    PolyMatrix mx = universal_matrix(su.s, 0);
    PolyMatrix my = universal_matrix(su.s, 1);
    PolyMatrix mt = universal_matrix(su.s, 2);
    const DGPresentation& e = su.s.entries;
    for (int k = 0; k + 0 <= 4; ++k)
        for (int m = 0; k + m <= 4; ++m) {
            std::vector<int> word;
            word.insert(word.end(), static_cast<size_t>(k), 0);
            word.insert(word.end(), static_cast<size_t>(m), 1);
            int ia = su.a.index_of(word);
            REQUIRE(ia >= 0);
            // x^k y^m dx -> sum_i Tr(Y^(m-1-i) X^k Y^i T)
            Poly got_dx = trace_word(su.s, su.res, su.f, {ia, su.a.index_of({0})});
            Poly want_dx;
            for (int i = 0; i < m; ++i) {
                PolyMatrix acc = matmul(e, matpow(e, my, m - 1 - i),
                                        matmul(e, matpow(e, mx, k), matmul(e, matpow(e, my, i), mt)));
                want_dx = add(want_dx, matrix_trace(acc));
            }
            CHECK(is_boundary(e, sub(got_dx, want_dx)).is_boundary);
            // x^k y^m dy -> -sum_j Tr(X^(k-1-j) Y^m X^j T)
            Poly got_dy = trace_word(su.s, su.res, su.f, {ia, su.a.index_of({1})});
            Poly want_dy;
            for (int j = 0; j < k; ++j) {
                PolyMatrix acc = matmul(e, matpow(e, mx, k - 1 - j),
                                        matmul(e, matpow(e, my, m), matmul(e, matpow(e, mx, j), mt)));
                want_dy = sub(want_dy, matrix_trace(acc));
            }
            CHECK(is_boundary(e, sub(got_dy, want_dy)).is_boundary);
        }
}

TEST_CASE("chain-level ch2 agrees across pivot policies modulo boundaries") {
    Setup su(2, 2, 4);
    ContractingHomotopy h2 = build_homotopy(su.res, 2, 4, PivotPolicy::FirstNonzero);
    AInftyMorphism f2 = solve_components(su.res, h2, 2, 4);
    int ix = su.a.index_of({0}), ixy = su.a.index_of({0, 1});
    Poly via_default = trace_word(su.s, su.res, su.f, {ixy, ix});
    Poly via_first = ch2_trace(su.s, su.res, f2, ixy, ix);
    CHECK(is_boundary(su.s.entries, sub(via_default, via_first)).is_boundary);
}

TEST_CASE("trace values are conjugation invariant") {
    Setup su(2, 3, 4);
    int ix = su.a.index_of({0}), iy = su.a.index_of({1});
    int ixy = su.a.index_of({0, 1}), iyy = su.a.index_of({1, 1});
    std::vector<Poly> values{
        trace_word(su.s, su.res, su.f, {ixy}),
        trace_word(su.s, su.res, su.f, {iy, ix}),
        trace_word(su.s, su.res, su.f, {iyy, ix}),
        trace_word(su.s, su.res, su.f, {ix, iy, ix}),
    };
    GLReport rep = gl_invariance_check(su.s, values, 10, 777);
    CHECK(rep.pass);
    CHECK(rep.samples == 10);
    CHECK(rep.negative_control_moved);
}

TEST_CASE("conjugating by the identity fixes everything, singular inputs fail") {
    Setup su(2, 2, 4);
    RatMatrix id{{1, 0}, {0, 1}};
    Poly v = trace_word(su.s, su.res, su.f, {su.a.index_of({0, 1})});
    CHECK(gl_substitute(su.s, id, v) == v);
    RatMatrix sing{{1, 2}, {2, 4}};
    CHECK_THROWS(gl_substitute(su.s, sing, v));
}
