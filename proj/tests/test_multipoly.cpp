#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"

using namespace monogen;

namespace {

PolyCtxPtr zctx(std::vector<std::string> vars) { return make_poly_context(corpus::ZZ(), std::move(vars)); }

MultiPoly var(const PolyCtxPtr& c, int v) { return MultiPoly::variable(c, v); }

/// The Dedekind index form -2b^3 - 15b^2c - 31bc^2 - 20c^3 built by hand.
MultiPoly dedekind_form(const PolyCtxPtr& c) {
    MultiPoly b = var(c, 1), cc = var(c, 2);
    auto k = [&](long long n) { return MultiPoly::from_integer(c, Int(n)); };
    return k(-2) * b.pow(3) + k(-15) * b.pow(2) * cc + k(-31) * b * cc.pow(2) + k(-20) * cc.pow(3);
}

} // namespace

TEST_CASE("arithmetic and normalization") {
    auto c = zctx({"x1", "x2"});
    MultiPoly x1 = var(c, 0), x2 = var(c, 1);
    CHECK(poly_to_string((x1 + x2) * (x1 - x2)) == "x1^2 - x2^2");
    MultiPoly p = x1 * x2 + x1;
    CHECK((p + (-p)).is_zero());  // empty term map

    // (b - c*beta)^3 over F3(beta) collapses to b^3 - c^3 beta^3
    auto F3b = corpus::F3beta();
    auto cb = make_poly_context(F3b, {"b", "c"});
    MultiPoly b = var(cb, 0), cpoly = var(cb, 1);
    auto beta = ring_generator(F3b);
    MultiPoly cube = (b - cpoly.scaled(beta)).pow(3);
    MultiPoly expect = b.pow(3) - cpoly.pow(3).scaled(beta * beta * beta);
    CHECK(cube == expect);
}

TEST_CASE("evaluation") {
    auto c = zctx({"a", "b"});
    MultiPoly form = var(c, 1);  // the quadratic index form "b"
    CHECK(poly_evaluate(form, {corpus::zi(7), corpus::zi(1)}) == corpus::zi(1));

    auto c3 = zctx({"a", "b", "c"});
    MultiPoly ded = dedekind_form(c3);
    CHECK(poly_evaluate(ded, {corpus::zi(0), corpus::zi(1), corpus::zi(1)}) == corpus::zi(-68));

    // value at all-zeros is the constant term
    MultiPoly p = var(c, 0) * var(c, 1) + MultiPoly::from_integer(c, Int(13));
    CHECK(poly_evaluate(p, {corpus::zi(0), corpus::zi(0)}) == corpus::zi(13));

    MultiPoly missing = var(c, 1);
    CHECK_THROWS_AS((void)poly_evaluate(missing, {corpus::zi(1)}), structural_error);
}

TEST_CASE("substitution") {
    auto c = zctx({"x1", "x2"});
    MultiPoly x1 = var(c, 0), x2 = var(c, 1);
    MultiPoly p = x2 * x2;
    MultiPoly q = poly_substitute(p, {{1, x2 + x1}});
    CHECK(poly_to_string(q) == "x1^2 + 2*x1*x2 + x2^2");
    CHECK(poly_substitute(p, {}) == p);  // identity
    // Vandermonde for n=2 vanishes on the collision locus
    MultiPoly vand = x1 - x2;
    CHECK(poly_substitute(vand, {{0, x2}}).is_zero());
}

TEST_CASE("homogeneity") {
    auto c3 = zctx({"a", "b", "c"});
    auto [h1, d1] = poly_is_homogeneous(dedekind_form(c3));
    CHECK(h1);
    CHECK(d1 == 3);  // n(n-1)/2 for n = 3

    auto c1 = zctx({"x1"});
    auto [h2, d2] = poly_is_homogeneous(var(c1, 0) + MultiPoly::from_integer(c1, Int(1)));
    CHECK_FALSE(h2);
    (void)d2;

    CHECK_THROWS_AS((void)poly_is_homogeneous(MultiPoly::zero(c1)), domain_error);

    // the sqrt2-sqrt3 sextic is homogeneous of degree 6
    auto f = local_index_form(corpus::sqrt23(), {"a", "b", "c", "d"});
    auto [h3, d3] = poly_is_homogeneous(f.poly);
    CHECK(h3);
    CHECK(d3 == 6);
}

TEST_CASE("coefficient maps") {
    auto c3 = zctx({"a", "b", "c"});
    MultiPoly ded = dedekind_form(c3);
    MultiPoly mod2 = poly_map_coefficients(ded, RingHom::reduction_mod(Int(2)));
    CHECK(poly_to_string(mod2) == "b^2*c + b*c^2");

    auto k = [&](long long n) { return MultiPoly::from_integer(c3, Int(n)); };
    MultiPoly f175 = k(5) * var(c3, 1).pow(3) + k(-7) * var(c3, 2).pow(3);
    CHECK(poly_to_string(poly_map_coefficients(f175, RingHom::reduction_mod(Int(7)))) == "5*b^3");

    CHECK(poly_map_coefficients(ded, RingHom::identity(corpus::ZZ())) == ded);
}

TEST_CASE("rendering is deterministic and canonical") {
    auto c3 = zctx({"a", "b", "c"});
    MultiPoly ded = dedekind_form(c3);
    const std::string s = "-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3";
    CHECK(poly_to_string(ded) == s);
    CHECK(poly_to_string(ded) == poly_to_string(ded));
    CHECK(poly_to_string(poly_normalize_sign(ded)) == "2*b^3 + 15*b^2*c + 31*b*c^2 + 20*c^3");
    CHECK(poly_to_string(MultiPoly::zero(c3)) == "0");
}

TEST_CASE("scaling homogeneity on the index-form corpus") {
    for (const auto& entry : corpus::index_form_corpus()) {
        INFO("algebra ", entry.name);
        IndexForm f = local_index_form(entry.alg, entry.vars);
        if (f.poly.is_zero()) continue;
        const auto ctx = f.poly.context();
        const int d = f.poly.total_degree();
        for (long long lambda : {-1LL, 2LL, 3LL}) {
            std::vector<std::pair<int, MultiPoly>> subs;
            const RingElem lam = ring_from_integer(ctx->coeff, Int(lambda));
            for (int v = 0; v < static_cast<int>(ctx->vars.size()); ++v)
                subs.push_back({v, MultiPoly::variable(ctx, v).scaled(lam)});
            MultiPoly lhs = poly_substitute(f.poly, subs);
            RingElem lamd = ring_one(ctx->coeff);
            for (int i = 0; i < d; ++i) lamd = lamd * lam;
            CHECK(lhs == f.poly.scaled(lamd));
        }
    }
}

TEST_CASE("coefficient maps commute with arithmetic on 1000 random pairs") {
    std::mt19937_64 rng(2024);
    auto c = zctx({"x1", "x2", "x3"});
    auto f = RingHom::reduction_mod(Int(6));
    for (int t = 0; t < 1000; ++t) {
        MultiPoly p = corpus::random_poly(c, rng), q = corpus::random_poly(c, rng);
        REQUIRE(poly_map_coefficients(p + q, f) == poly_map_coefficients(p, f) + poly_map_coefficients(q, f));
        REQUIRE(poly_map_coefficients(p * q, f) == poly_map_coefficients(p, f) * poly_map_coefficients(q, f));
    }
}

TEST_CASE("evaluation agrees with substitution by constants") {
    std::mt19937_64 rng(515);
    auto c = zctx({"x1", "x2"});
    for (int t = 0; t < 300; ++t) {
        MultiPoly p = corpus::random_poly(c, rng);
        std::vector<RingElem> pt{corpus::random_elem(corpus::ZZ(), rng), corpus::random_elem(corpus::ZZ(), rng)};
        std::vector<std::pair<int, MultiPoly>> subs;
        for (int v = 0; v < 2; ++v) subs.push_back({v, MultiPoly::constant(c, pt[static_cast<std::size_t>(v)])});
        MultiPoly collapsed = poly_substitute(p, subs);
        RingElem direct = poly_evaluate(p, pt);
        if (collapsed.is_zero())
            REQUIRE(ring_is_zero(direct));
        else
            REQUIRE(collapsed.terms().begin()->second == direct);
    }
}
