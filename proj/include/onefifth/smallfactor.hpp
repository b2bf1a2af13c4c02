#pragma once

#include "onefifth/znum.hpp"

#include <cstdint>
#include <optional>

namespace onefifth {

struct SmallFactorOptions {
    /// Below this bound for M, plain trial division is used; the product-tree
    /// machinery has no advantage there.
    std::uint64_t trial_crossover = 1u << 16;
    /// Cap on the sieve block size d = ceil(sqrt(M)).
    std::uint64_t max_degree = 1u << 22;
};

/// Smallest prime p <= M dividing N, or nullopt if none. Bounded divisor
/// sieve: build f(x) = (x+1)...(x+d) with d = ceil(sqrt(M)) by product tree,
/// evaluate at 0, d, ..., (d-1)d by multipoint evaluation, and scan the first
/// block whose value shares a factor with N.
std::optional<mpz_class> smallest_prime_divisor(const mpz_class& N, const mpz_class& M,
                                                const SmallFactorOptions& opts = {});

/// Same contract by testing divisors 2, 3, ... <= M in order.
std::optional<mpz_class> trial_division(const mpz_class& N, const mpz_class& M);

} // namespace onefifth
