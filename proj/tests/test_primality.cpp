#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "onefifth/primality.hpp"
#include "oracles.hpp"

using namespace onefifth;

TEST_CASE("agrees with trial division up to 2*10^5") {
    for (std::uint64_t n = 0; n < 200000; ++n) {
        CHECK(is_prime_u64(n) == oracle::is_prime_trial(n));
    }
}

TEST_CASE("known primes and composites") {
    CHECK(is_prime_u64(1000000007ull));
    CHECK(is_prime_u64(1000000021ull));
    CHECK(is_prime_u64(18446744073709551557ull)); // largest prime < 2^64
    CHECK(!is_prime_u64(18446744073709551615ull));
    CHECK(!is_prime_u64(3215031751ull)); // strong pseudoprime to bases 2,3,5,7
    CHECK(!is_prime_u64(1000036000099ull));
    CHECK(is_probable_prime(mpz_class("1000003")));
    CHECK(!is_probable_prime(mpz_class("1000036000099")));
    CHECK(is_probable_prime(mpz_class("170141183460469231731687303715884105727"))); // 2^127-1
}
