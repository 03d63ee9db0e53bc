#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drep/algebra.hpp"
#include "drep/forms.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>

using namespace drep;
using namespace drep::testutil;

namespace {

oracle::TableAlgebra to_table(const BasedAlgebra& a) {
    oracle::TableAlgebra t;
    t.dim = a.dim();
    t.unit = a.unit;
    t.weights = a.weights;
    t.table.assign(static_cast<size_t>(t.dim),
                   std::vector<std::vector<Rational>>(
                       static_cast<size_t>(t.dim),
                       std::vector<Rational>(static_cast<size_t>(t.dim), Rational(0))));
    for (int i = 0; i < t.dim; ++i)
        for (int j = 0; j < t.dim; ++j)
            for (const auto& [k, v] : a.mul(i, j))
                t.table[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
                    v;
    return t;
}

AlgebraSpec spec_of(std::vector<std::string> gens, std::vector<std::string> rels) {
    AlgebraSpec spec;
    spec.pres.flavor = Flavor::NC;
    for (const auto& g : gens) spec.pres.add_generator({g, 0, 1});
    for (const auto& r : rels) spec.relations.push_back(parse_poly(spec.pres, r));
    return spec;
}

} // namespace

TEST_CASE("one-forms: module generators and the induced differential") {
    DGPresentation r = ex2d_nc();
    OneForms of = one_forms(r);
    CHECK(of.source_gens == 3);
    CHECK(of.ext.gens.size() == 6);
    int dt = of.dgen[2];
    CHECK(of.ext.gens[static_cast<size_t>(dt)].name == "dt");
    CHECK(of.ext.gens[static_cast<size_t>(dt)].kind == GenKind::Module);
    CHECK(of.ext.gens[static_cast<size_t>(dt)].homdeg == 1);
    CHECK(of.ext.gens[static_cast<size_t>(dt)].weight == 2);
    CHECK(of.ext.diff[static_cast<size_t>(dt)] ==
          parse_poly(of.ext, "dx*y + x*dy - dy*x - y*dx"));
    CHECK(of.del(parse_poly(of.ext, "x*y")) == parse_poly(of.ext, "dx*y + x*dy"));
    // A generator whose name collides with a form symbol is rejected.
    DGPresentation bad;
    bad.flavor = Flavor::NC;
    bad.add_generator({"x", 0, 1});
    bad.add_generator({"dx", 0, 1});
    CHECK_THROWS(one_forms(bad));
}

TEST_CASE("natural reduction rotates the tail with Koszul signs") {
    OneForms of = one_forms(ex2d_nc());
    CHECK(of.natural_reduce(parse_poly(of.ext, "x*dy*t")) == parse_poly(of.ext, "t*x*dy"));
    CHECK(of.natural_reduce(parse_poly(of.ext, "t*dx*t")) == parse_poly(of.ext, "-t*t*dx"));
    CHECK(of.natural_reduce(parse_poly(of.ext, "x*dy")) == parse_poly(of.ext, "x*dy"));
}

TEST_CASE("beta turns forms into commutators") {
    OneForms of = one_forms(ex2d_nc());
    CHECK(of.beta(parse_poly(of.ext, "dx")).is_zero());
    CHECK(of.beta(parse_poly(of.ext, "x*dy")) == parse_poly(of.ext, "x*y - y*x"));
    CHECK(of.beta(parse_poly(of.ext, "t*dx")) == parse_poly(of.ext, "t*x - x*t"));
}

TEST_CASE("beta annihilates the image of the natural derivation") {
    DGPresentation r = ex2d_nc();
    OneForms of = one_forms(r);
    std::mt19937 rng(4242);
    for (int i = 0; i < 50; ++i) {
        Mono m = random_raw_mono(rng, 3, 5);
        CHECK(of.beta(of.dbar(poly_of(m))).is_zero());
    }
}

TEST_CASE("cyclic word classes identify rotations and kill odd fixed orbits") {
    DGPresentation r = ex2d_nc();
    CHECK(tau(r, parse_poly(r, "x*y - y*x")).is_zero());
    CHECK(tau(r, parse_poly(r, "t*x - x*t")).is_zero());
    CHECK(tau(r, parse_poly(r, "t*t")).is_zero());
    CHECK_FALSE(tau(r, parse_poly(r, "x*y*t - y*x*t")).is_zero());
    CyclicWordCanon c = cyclic_word_reduce(r, parse_poly(r, "y*x*t").terms.begin()->first);
    CHECK_FALSE(c.zero);
    CHECK(print_mono(r, c.word) == "x*t*y");
}

TEST_CASE("the periodicity row is exact for the two-variable resolution") {
    auto cells = periodicity_exactness(ex2d_nc(), 3, 6);
    CHECK_FALSE(cells.empty());
    for (const auto& c : cells) {
        CAPTURE(c.n);
        CAPTURE(c.w);
        CAPTURE(c.note);
        CHECK(c.exact);
    }
}

TEST_CASE("total differentials square to zero on both sides") {
    XComplexReport rep = x_complexes(ex2d_nc(), 2, 4, 6, 4);
    CHECK(rep.d_squared_zero);
    CHECK(rep.failures.empty());
    CHECK(rep.blocks_checked > 0);
}

TEST_CASE("the V-side trace of the de Rham differential is the trace of forms") {
    VForms vf = v_forms(ex2d_nc(), 2);
    Poly tr_t = matrix_trace(universal_matrix(vf.scheme, 2));
    int dt_src = 5; // x, y, t, dx, dy, dt in the extended presentation
    CHECK(vf.forms.source.gens[static_cast<size_t>(dt_src)].name == "dt");
    Poly expect = matrix_trace(universal_matrix(vf.forms, dt_src));
    CHECK(vf.del_v(tr_t) == expect);
}

TEST_CASE("sv truncates below degree two") {
    VForms vf = v_forms(ex2d_nc(), 2);
    Poly tr_t = matrix_trace(universal_matrix(vf.scheme, 2));
    SvBvResult r = sv_bv(vf, VClass{1, {tr_t}}, 4);
    CHECK(r.sv.n == -1);
    CHECK(r.sv.comps.empty());
    CHECK_FALSE(r.bv.is_zero());
}

TEST_CASE("the extended trace and the V-side lift agree in the leading component") {
    DGPresentation r = ex2d_nc();
    VForms vf = v_forms(r, 2);
    OneForms forms = one_forms(r);
    Poly t2 = parse_poly(forms.ext, "t*t");
    Poly tail;
    VClass et = extended_trace(vf, forms, t2, &tail);
    REQUIRE(et.comps.size() == 2);
    CHECK(et.n == 2);
    // The leading component is the supertrace of the square of an odd
    // matrix, which vanishes; the lower components stay nontrivial.
    CHECK(et.comps[0] == matrix_trace(evaluate_matrix(vf.forms, t2)));
    CHECK_FALSE(et.comps[1].is_zero());
    CHECK(tail == parse_poly(forms.ext, "x*x*y*y - x*y*x*y"));
    SvBvResult sv = sv_bv(vf, et, 4);
    CHECK(sv.lifted_r == matrix_trace(evaluate_matrix(vf.forms, tail)));
    CHECK_FALSE(sv.lifted_r.is_zero());
    CHECK(sv.sv.n == 0);
}

TEST_CASE("tangent dims: free algebra, two commuting variables, enumeration oracle") {
    DGPresentation kx;
    kx.flavor = Flavor::NC;
    kx.add_generator({"x", 0, 1});
    for (int d : {1, 2}) {
        RatMatrix val(static_cast<size_t>(d),
                      std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
        val[0][0] = 1;
        if (d == 2) val[0][1] = 2;
        TangentResult t = tangent_complex({}, kx, d, {{"x", val}});
        REQUIRE(t.dims.size() == 1);
        CHECK(t.dims[0] == d * d);
    }
    oracle::TableAlgebra kx_table = to_table(based_algebra(spec_of({"x"}, {}), 3));
    auto hh_kx = oracle::hochschild_cochains(kx_table, 2, 3, 3);
    CHECK(hh_kx == std::vector<int>{4, 4, 0, 0});

    DGPresentation r = ex2d_nc();
    std::vector<Poly> rels{parse_poly(r, "x*y - y*x")};
    TangentResult t1 = tangent_complex(rels, r, 1, {{"x", {{2}}}, {"y", {{3}}}});
    CHECK(t1.dims == std::vector<int>{2, 1});
    RatMatrix z2(2, std::vector<Rational>(2, Rational(0)));
    TangentResult t2 = tangent_complex(rels, r, 2, {{"x", z2}, {"y", z2}});
    REQUIRE(t2.dims.size() == 2);
    CHECK(t2.dims[0] == 8);

    oracle::TableAlgebra kxy_table =
        to_table(based_algebra(spec_of({"x", "y"}, {"x*y - y*x"}), 4));
    auto hh1 = oracle::hochschild_cochains(kxy_table, 1, 3, 4);
    CHECK(hh1 == std::vector<int>{1, 2, 1, 0});
    auto hh2 = oracle::hochschild_cochains(kxy_table, 2, 2, 4);
    CHECK(hh2[1] == t2.dims[0]);
    CHECK(hh2[2] == t2.dims[1]);
    CHECK(t1.dims[0] == hh1[1]);
    CHECK(t1.dims[1] == hh1[2]);
}

TEST_CASE("tangent rejects bad representation points") {
    DGPresentation r = ex2d_nc();
    std::vector<Poly> rels{parse_poly(r, "x*y - y*x")};
    RatMatrix a{{1, 1}, {0, 1}}, b{{1, 0}, {1, 1}};
    CHECK_THROWS_AS(tangent_complex(rels, r, 2, {{"x", a}, {"y", b}}), std::invalid_argument);
    CHECK_THROWS_AS(tangent_complex(rels, r, 2, {{"x", a}}), std::invalid_argument);
    CHECK_THROWS_AS(tangent_complex(rels, r, 3, {{"x", a}, {"y", a}}), std::invalid_argument);
}

namespace {

Derivation random_shift_derivation(std::mt19937& rng, const DGPresentation& r) {
    std::uniform_int_distribution<int> shift_pick(-1, 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    int sd = shift_pick(rng);
    Derivation der;
    der.parity = sd & 1;
    der.images.resize(r.gens.size());
    for (size_t g = 0; g < r.gens.size(); ++g) {
        int hd = r.gens[g].homdeg + sd;
        int w = r.gens[g].weight + sd;
        if (hd < 0 || w < 1) continue;
        for (const Mono& m : block_basis(r, hd, w)) {
            int c = coef(rng);
            if (c != 0) add_term(der.images[g], m, c);
        }
    }
    return der;
}

Derivation commutator(const DGPresentation& p, const Derivation& d1, const Derivation& d2) {
    Derivation out;
    out.parity = (d1.parity + d2.parity) % 2;
    out.images.resize(p.gens.size());
    int sign = (d1.parity && d2.parity) ? -1 : 1;
    for (size_t g = 0; g < p.gens.size(); ++g) {
        Poly a = apply_derivation(p, d1, d2.images[g]);
        Poly b = apply_derivation(p, d2, d1.images[g]);
        out.images[g] = sign < 0 ? add(a, b) : sub(a, b);
    }
    return out;
}

} // namespace

TEST_CASE("pushing derivations forward preserves the bracket") {
    DGPresentation r = ex2d_nc();
    RepScheme s = matrix_reduce(r, 2);
    std::mt19937 rng(99173);
    for (int trial = 0; trial < 20; ++trial) {
        Derivation d1 = random_shift_derivation(rng, r);
        Derivation d2 = random_shift_derivation(rng, r);
        Derivation lhs = derivation_pushforward(s, commutator(r, d1, d2));
        Derivation rhs = commutator(s.entries, derivation_pushforward(s, d1),
                                    derivation_pushforward(s, d2));
        REQUIRE(lhs.parity == rhs.parity);
        for (size_t g = 0; g < s.entries.gens.size(); ++g) {
            CAPTURE(trial);
            CAPTURE(g);
            CHECK(lhs.images[g] == rhs.images[g]);
        }
    }
}
