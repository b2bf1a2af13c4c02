#pragma once

#include "onefifth/znum.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace onefifth {

/// One (a, b) cell of the candidate search: base = ceil(sqrt(4abN)) and the
/// number of giant indices j admitted for it.
struct CandidateWindow {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    mpz_class base;
    std::uint64_t j_count = 0;
};

/// Exact decision of  0 <= u - sqrt(4abN) < sqrt(N) / (4r sqrt(ab)).
/// Both sides are settled by cross-multiplied squares:
///   u^2 >= 4abN   and   16 r^2 ab u^2 < (8 r ab + 1)^2 N.
bool lehman_interval_contains(const mpz_class& N, const mpz_class& r,
                              const mpz_class& ab, const mpz_class& u);

/// Exact decision of  j < sqrt(N) / (4 r m sqrt(ab)),  i.e. (4rmj)^2 ab < N.
bool giant_index_admitted(const mpz_class& N, std::uint64_t r, std::uint64_t m,
                          const mpz_class& ab, std::uint64_t j);

/// Tests whether u = aq + bp for some factorisation N = pq; on success
/// returns (p, q) with p <= q. aq and bp are the roots of
/// y^2 - uy + abN, found when u^2 - 4abN is a perfect square; both
/// root-to-(a, b) pairings are tried.
std::optional<std::pair<mpz_class, mpz_class>> recover_from_candidate(
    const mpz_class& N, const mpz_class& a, const mpz_class& b, const mpz_class& u);

/// Like recover_from_candidate but knowing only the product ab (which must be
/// coprime to N); a root is split off with one extra GCD against N.
std::optional<std::pair<mpz_class, mpz_class>> recover_from_product(
    const mpz_class& N, const mpz_class& ab, const mpz_class& u);

/// All windows with 1 <= ab <= r, in the order a = 1..r, b = 1..floor(r/a).
std::vector<CandidateWindow> enumerate_windows(const mpz_class& N, std::uint64_t r,
                                               std::uint64_t m);

} // namespace onefifth
