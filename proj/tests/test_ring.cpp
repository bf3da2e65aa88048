#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"

using namespace monogen;
using corpus::random_elem;

namespace {

std::vector<RingPtr> axiom_rings() {
    return {
        corpus::ZZ(),
        corpus::QQ(),
        corpus::Fp(7),
        ring_integers_mod(Int(8)),  // composite residues
        ring_poly(corpus::ZZ(), "x"),
        corpus::F3alpha_poly(),
        corpus::F3alpha(),
        corpus::Qi(),
    };
}

} // namespace

TEST_CASE("basic arithmetic matches the worked examples") {
    auto Z = corpus::ZZ();
    CHECK(ring_to_string(corpus::zi(2) + corpus::zi(3)) == "5");

    auto Z8 = ring_integers_mod(Int(8));
    auto three = ring_from_integer(Z8, Int(3));
    CHECK(ring_to_string(three * three) == "1");

    auto F = corpus::F3alpha();
    auto alpha = ring_generator(F);
    auto ap1 = alpha + ring_one(F);
    auto frac = alpha * ring_inverse(ap1);
    CHECK(frac * ap1 == alpha);  // cancellation back to canonical form
}

TEST_CASE("unit tests across the ring tower") {
    CHECK_FALSE(ring_is_unit(corpus::zi(2)));
    CHECK(ring_is_unit(corpus::zi(-1)));
    CHECK(ring_is_unit(ring_from_integer(ring_integers_mod(Int(8)), Int(3))));
    CHECK_FALSE(ring_is_unit(ring_from_integer(ring_integers_mod(Int(8)), Int(4))));

    // F3[alpha]: alpha is not a unit, -1 is
    auto P = corpus::F3alpha_poly();
    CHECK_FALSE(ring_is_unit(ring_generator(P)));
    CHECK(ring_is_unit(-ring_one(P)));

    // polynomial ring over ZZ: only +-1
    auto Zx = ring_poly(corpus::ZZ(), "x");
    CHECK(ring_is_unit(-ring_one(Zx)));
    CHECK_FALSE(ring_is_unit(ring_from_integer(Zx, Int(2))));
    CHECK_FALSE(ring_is_unit(ring_generator(Zx)));

    // nonconstant polynomials over composite residues are deliberately unsupported
    auto Z4x = ring_poly(ring_integers_mod(Int(4)), "x");
    auto twoXplus1 = poly_value(Z4x, {ring_one(Z4x->base), ring_from_integer(Z4x->base, Int(2))});
    CHECK_THROWS_AS((void)ring_is_unit(twoXplus1), unsupported_error);
    CHECK(ring_is_unit(ring_from_integer(Z4x, Int(3))));  // constants still decidable
}

TEST_CASE("inverses") {
    auto Qi = corpus::Qi();
    auto i = ring_generator(Qi);
    CHECK(ring_inverse(i) == -i);
    CHECK(ring_inverse(corpus::zi(-1)) == corpus::zi(-1));
    auto Z8 = ring_integers_mod(Int(8));
    CHECK(ring_inverse(ring_from_integer(Z8, Int(3))) == ring_from_integer(Z8, Int(3)));
    CHECK_THROWS_AS((void)ring_inverse(corpus::zi(2)), domain_error);

    // a reducible quotient modulus has zero divisors: inversion must fail loudly
    auto P = ring_poly(corpus::QQ(), "u");
    auto reducible = ring_quotient_field(  // u^2 - 1 = (u-1)(u+1)
        P, {-ring_one(corpus::QQ()), ring_zero(corpus::QQ()), ring_one(corpus::QQ())});
    auto um1 = ring_generator(reducible) - ring_one(reducible);
    CHECK_THROWS_AS((void)ring_inverse(um1), domain_error);
}

TEST_CASE("ring maps: reduction, inclusion, lift, substitution") {
    auto red2 = RingHom::reduction_mod(Int(2));
    CHECK(ring_to_string(red2(corpus::zi(31))) == "1");

    auto inc = RingHom::rational_inclusion();
    CHECK(inc(corpus::zi(5)) == corpus::qq(5));

    // coefficientwise lift ZZ -> ZZ/2 through ZZ[x]
    auto Zx = ring_poly(corpus::ZZ(), "x");
    auto lift = RingHom::coefficient_lift(red2, Zx);
    auto p = poly_value(Zx, {corpus::zi(4), corpus::zi(31)});  // 31x + 4
    CHECK(ring_to_string(lift(p)) == "x");

    // F3(alpha) -> F3(beta), alpha |-> beta^3
    auto F3a = corpus::F3alpha();
    auto F3b = corpus::F3beta();
    auto beta = ring_generator(F3b);
    auto h = RingHom::generator_subst(F3a, beta * beta * beta);
    CHECK(ring_to_string(h(ring_generator(F3a) + ring_one(F3a))) == "beta^3+1");

    // denominator mapping to a non-unit is a domain error: alpha |-> 0 kills 1/alpha
    auto kill = RingHom::generator_subst(F3a, ring_zero(F3b));
    CHECK_THROWS_AS((void)kill(ring_inverse(ring_generator(F3a))), domain_error);
}

TEST_CASE("canonicalization is idempotent") {
    std::mt19937_64 rng(7);
    for (const auto& r : axiom_rings())
        for (int t = 0; t < 200; ++t) {
            RingElem x = random_elem(r, rng);
            RingElem c1 = canonicalize(x);
            CHECK(c1 == x);
            CHECK(canonicalize(c1) == c1);
        }
}

TEST_CASE("ring axioms hold on 1000 random triples per descriptor kind") {
    std::mt19937_64 rng(42);
    for (const auto& r : axiom_rings()) {
        INFO("ring ", ring_describe(r));
        const RingElem one = ring_one(r);
        for (int t = 0; t < 1000; ++t) {
            RingElem a = random_elem(r, rng), b = random_elem(r, rng), c = random_elem(r, rng);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a * one == a);
            REQUIRE(a - a == ring_zero(r));
        }
    }
}

TEST_CASE("x unit implies x * inverse(x) = 1") {
    std::mt19937_64 rng(99);
    for (const auto& r : axiom_rings()) {
        for (int t = 0; t < 300; ++t) {
            RingElem x = random_elem(r, rng);
            bool unit = false;
            try {
                unit = ring_is_unit(x);
            } catch (const unsupported_error&) {
                continue;
            }
            if (unit) REQUIRE(x * ring_inverse(x) == ring_one(r));
        }
    }
}

TEST_CASE("ring maps are homomorphisms on 1000 random pairs per map") {
    std::mt19937_64 rng(1234);
    auto Zx = ring_poly(corpus::ZZ(), "x");
    auto F3a = corpus::F3alpha();
    auto beta = ring_generator(corpus::F3beta());
    std::vector<RingHom> maps = {
        RingHom::reduction_mod(Int(2)),
        RingHom::reduction_mod(Int(7)),
        RingHom::rational_inclusion(),
        RingHom::coefficient_lift(RingHom::reduction_mod(Int(5)), Zx),
        RingHom::generator_subst(F3a, beta * beta * beta),
        RingHom::natural_embed(corpus::Fp(3), corpus::F3alpha()),
    };
    for (const auto& f : maps) {
        INFO("map ", ring_describe(f.source()), " -> ", ring_describe(f.target()));
        REQUIRE(f(ring_one(f.source())) == ring_one(f.target()));
        for (int t = 0; t < 1000; ++t) {
            RingElem x = random_elem(f.source(), rng), y = random_elem(f.source(), rng);
            REQUIRE(f(x + y) == f(x) + f(y));
            REQUIRE(f(x * y) == f(x) * f(y));
        }
    }
}

TEST_CASE("descriptor invariants are enforced") {
    CHECK_THROWS_AS((void)ring_integers_mod(Int(1)), domain_error);
    CHECK_THROWS_AS((void)ring_fraction_field(ring_poly(corpus::ZZ(), "x")), structural_error);
    // non-monic quotient modulus
    auto P = ring_poly(corpus::QQ(), "u");
    CHECK_THROWS_AS(
        (void)ring_quotient_field(P, {ring_one(corpus::QQ()), corpus::qq(2)}), structural_error);
    // mismatched operands
    CHECK_THROWS_AS((void)(corpus::zi(1) + corpus::qq(1)), structural_error);
}

TEST_CASE("canonical strings") {
    CHECK(ring_to_string(corpus::qq(5)) == "5");
    CHECK(ring_to_string(corpus::qq(1, 2)) == "1/2");
    CHECK(ring_to_string(corpus::qq(-3, 4)) == "-3/4");
    auto Qi = corpus::Qi();
    auto i = ring_generator(Qi);
    CHECK(ring_to_string(i + ring_from_integer(Qi, Int(2))) == "i+2");
    auto F = corpus::F3alpha();
    auto a = ring_generator(F);
    CHECK(ring_to_string(a * ring_inverse(a + ring_one(F))) == "alpha/(alpha+1)");
}
