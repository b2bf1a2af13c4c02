#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace onefifth {

/// Deterministic Miller-Rabin for n < 2^64 (fixed base set, 128-bit
/// arithmetic). Independent of the factoring engine; used for verification.
bool is_prime_u64(std::uint64_t n);

/// Deterministic for values below 2^64 (via is_prime_u64); above that,
/// Baillie-PSW + 40 Miller-Rabin rounds through mpz_probab_prime_p.
bool is_probable_prime(const mpz_class& n);

} // namespace onefifth
