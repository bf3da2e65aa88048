#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.hpp"

using namespace monogen;

namespace {

Mat<RingElem> random_int_matrix(std::size_t n, std::mt19937_64& rng, long long bound = 9) {
    Mat<RingElem> m(n, n, ring_zero(corpus::ZZ()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = corpus::zi(static_cast<long long>(rng() % (2 * bound + 1)) - bound);
    return m;
}

} // namespace

TEST_CASE("charpoly of small known matrices") {
    auto Z = corpus::ZZ();
    Mat<RingElem> a(2, 2, ring_zero(Z));
    a.at(0, 0) = corpus::zi(1);
    a.at(0, 1) = corpus::zi(2);
    a.at(1, 0) = corpus::zi(3);
    a.at(1, 1) = corpus::zi(4);
    auto cp = berkowitz_charpoly(a, ring_zero(Z), ring_one(Z));
    REQUIRE(cp.size() == 3);
    CHECK(cp[0] == corpus::zi(1));
    CHECK(cp[1] == corpus::zi(-5));  // -(trace)
    CHECK(cp[2] == corpus::zi(-2));  // det
    CHECK(berkowitz_det(a, ring_zero(Z), ring_one(Z)) == corpus::zi(-2));
}

TEST_CASE("Berkowitz and Bareiss determinants agree over ZZ") {
    std::mt19937_64 rng(31337);
    auto Z = corpus::ZZ();
    auto exact_div = [](const RingElem& x, const RingElem& y) { return ring_exact_div(x, y); };
    for (std::size_t n = 1; n <= 5; ++n)
        for (int t = 0; t < 50; ++t) {
            Mat<RingElem> m = random_int_matrix(n, rng);
            RingElem d1 = berkowitz_det(m, ring_zero(Z), ring_one(Z));
            RingElem d2 = bareiss_det(m, ring_zero(Z), ring_one(Z), exact_div);
            REQUIRE(d1 == d2);
        }
}

TEST_CASE("Berkowitz works over rings with zero divisors") {
    auto Z4 = ring_integers_mod(Int(4));
    Mat<RingElem> m(2, 2, ring_zero(Z4));
    m.at(0, 0) = ring_from_integer(Z4, Int(2));
    m.at(0, 1) = ring_from_integer(Z4, Int(1));
    m.at(1, 0) = ring_from_integer(Z4, Int(3));
    m.at(1, 1) = ring_from_integer(Z4, Int(2));
    CHECK(berkowitz_det(m, ring_zero(Z4), ring_one(Z4)) == ring_from_integer(Z4, Int(1)));
}

TEST_CASE("adjugate inverse over ZZ for unimodular matrices") {
    auto Z = corpus::ZZ();
    Mat<RingElem> p(2, 2, ring_zero(Z));
    p.at(0, 0) = corpus::zi(1);
    p.at(1, 0) = corpus::zi(1);
    p.at(1, 1) = corpus::zi(1);
    auto inv = inverse_over_ring(
        p, ring_zero(Z), ring_one(Z), [](const RingElem& x) { return ring_is_unit(x); },
        [](const RingElem& x) { return ring_inverse(x); });
    REQUIRE(inv.has_value());
    auto prod = mat_mul(*inv, p, ring_zero(Z));
    CHECK(prod.at(0, 0) == corpus::zi(1));
    CHECK(prod.at(0, 1) == corpus::zi(0));
    CHECK(prod.at(1, 0) == corpus::zi(0));
    CHECK(prod.at(1, 1) == corpus::zi(1));

    Mat<RingElem> bad(2, 2, ring_zero(Z));
    bad.at(0, 0) = corpus::zi(2);
    bad.at(1, 1) = corpus::zi(1);
    CHECK_FALSE(inverse_over_ring(bad, ring_zero(Z), ring_one(Z),
                                  [](const RingElem& x) { return ring_is_unit(x); },
                                  [](const RingElem& x) { return ring_inverse(x); })
                    .has_value());
}

TEST_CASE("field solve") {
    auto Q = corpus::QQ();
    Mat<RingElem> a(2, 2, ring_zero(Q));
    a.at(0, 0) = corpus::qq(2);
    a.at(0, 1) = corpus::qq(1);
    a.at(1, 0) = corpus::qq(1);
    a.at(1, 1) = corpus::qq(3);
    std::vector<RingElem> b{corpus::qq(5), corpus::qq(10)};
    auto x = solve_field(a, b, ring_zero(Q), [](const RingElem& v) { return ring_inverse(v); });
    REQUIRE(x.has_value());
    CHECK((*x)[0] == corpus::qq(1));
    CHECK((*x)[1] == corpus::qq(3));

    Mat<RingElem> sing(2, 2, ring_zero(Q));
    sing.at(0, 0) = corpus::qq(1);
    sing.at(1, 0) = corpus::qq(1);
    CHECK_FALSE(solve_field(sing, b, ring_zero(Q), [](const RingElem& v) { return ring_inverse(v); }).has_value());
}

TEST_CASE("Berkowitz and Bareiss agree on polynomial matrices over a domain") {
    // dual determinant routes for the index-form corpus matrices
    for (const auto& entry : corpus::index_form_corpus()) {
        if (!ring_is_integral_domain(entry.alg->base)) continue;
        UniversalContext u = make_universal_context(entry.alg, entry.vars);
        Mat<MultiPoly> m = coefficient_matrix(u);
        const MultiPoly zero = MultiPoly::zero(u.ctx);
        const MultiPoly one = MultiPoly::from_integer(u.ctx, 1);
        MultiPoly d1 = berkowitz_det(m, zero, one);
        MultiPoly d2 = bareiss_det(m, zero, one, [](const MultiPoly& a, const MultiPoly& b) {
            return poly_exact_div(a, b);
        });
        INFO("algebra ", entry.name);
        REQUIRE(d1 == d2);
    }
}
