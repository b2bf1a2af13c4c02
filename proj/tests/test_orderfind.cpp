#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "onefifth/orderfind.hpp"
#include "onefifth/primality.hpp"
#include "oracles.hpp"

#include <numeric>
#include <random>

using namespace onefifth;

TEST_CASE("bsgs_order_bounded examples") {
    Modulus m15(mpz_class(15));
    CHECK(bsgs_order_bounded(ZnElement(1, m15), 5).value() == 1);
    CHECK(bsgs_order_bounded(ZnElement(2, m15), 10).value() == 4);
    CHECK(!bsgs_order_bounded(ZnElement(2, m15), 3).has_value());
    try {
        bsgs_order_bounded(ZnElement(6, m15), 10);
        FAIL("expected NonInvertibleError");
    } catch (const NonInvertibleError& e) {
        CHECK(e.witness_gcd() == 3);
    }
}

TEST_CASE("bsgs_order_bounded equals exhaustive order enumeration") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 400; ++it) {
        std::uint64_t n = 2 + rng() % 5000;
        std::uint64_t a = rng() % n;
        if (std::gcd(a, n) != 1 || a == 0) continue;
        std::uint64_t ord = oracle::multiplicative_order(a, n);
        Modulus mod((mpz_class(static_cast<unsigned long>(n))));
        ZnElement alpha(mpz_class(static_cast<unsigned long>(a)), mod);
        for (std::uint64_t D : {ord - 1, ord, ord + 3, std::uint64_t(1)}) {
            if (D < 1) continue;
            auto got = bsgs_order_bounded(alpha, mpz_class((unsigned long)D));
            if (ord <= D) {
                REQUIRE(got.has_value());
                CHECK(*got == ord);
            } else {
                CHECK(!got.has_value());
            }
        }
    }
}

TEST_CASE("find_large_order_element examples") {
    // ord_15(2) = 4 > 3
    auto r = find_large_order_element(15, 3);
    REQUIRE(r.kind() == OrderOutcome::Kind::LargeOrder);
    CHECK(r.alpha().value() == 2);
    CHECK(!bsgs_order_bounded(r.alpha(), 3).has_value());

    // candidate 2 has order 6 <= D, candidate 3 shares a factor with 9
    auto f = find_large_order_element(9, 6);
    REQUIRE(f.kind() == OrderOutcome::Kind::Factor);
    CHECK(f.factor_value() == 3);

    mpz_class p("1000000007");
    mpz_class D = iroot_ceil(p * p, 1, 1, 5);
    auto pr = find_large_order_element(p, D);
    CHECK(pr.kind() != OrderOutcome::Kind::Factor);
    if (pr.kind() == OrderOutcome::Kind::LargeOrder) {
        CHECK(!bsgs_order_bounded(pr.alpha(), D).has_value());
    }
}

TEST_CASE("find_large_order_element precondition checks") {
    CHECK_THROWS_AS(find_large_order_element(mpz_class("1000000007"), 10), DomainError);
    CHECK_THROWS_AS(find_large_order_element(15, 16), DomainError);
    CHECK_THROWS_AS(find_large_order_element(1, 1), DomainError);
}

TEST_CASE("fallback fires when early candidates all have small order") {
    // 561 = 3*11*17 is Carmichael; every unit has order <= 80 <= D
    auto r = find_large_order_element(561, 561);
    REQUIRE(r.kind() == OrderOutcome::Kind::Factor);
    CHECK(r.factor_value() == 3);

    // tiny N exhausts the candidate list and falls through
    auto two = find_large_order_element(2, 2);
    CHECK(two.kind() == OrderOutcome::Kind::Prime);
    auto three = find_large_order_element(3, 3);
    CHECK(three.kind() != OrderOutcome::Kind::Factor);
}

TEST_CASE("outcomes verified across small N") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 200; ++it) {
        std::uint64_t n = 4 + rng() % 100000;
        mpz_class N(static_cast<unsigned long>(n));
        mpz_class D = iroot_ceil(N * N, 1, 1, 5);
        if (D > N) continue;
        auto r = find_large_order_element(N, D);
        switch (r.kind()) {
            case OrderOutcome::Kind::LargeOrder: {
                CHECK(gcd_counted(r.alpha().value(), N) == 1);
                CHECK(!bsgs_order_bounded(r.alpha(), D).has_value());
                break;
            }
            case OrderOutcome::Kind::Factor: {
                CHECK(r.factor_value() > 1);
                CHECK(r.factor_value() < N);
                CHECK(mpz_divisible_p(N.get_mpz_t(), r.factor_value().get_mpz_t()));
                break;
            }
            case OrderOutcome::Kind::Prime:
                CHECK(is_prime_u64(n));
                break;
        }
    }
}
