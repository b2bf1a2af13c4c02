#pragma once

#include "onefifth/search.hpp"
#include "onefifth/smallfactor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace onefifth {

/// (r, m, M, D) for the deep search, all exact integer roots:
///   r = ceil((N / lg^4 N)^(1/5)),  m = ceil((N lg^6 N)^(1/5)),
///   M = ceil((N / r)^(1/2)),       D = ceil(N^(2/5)).
struct SearchParams {
    mpz_class r, m, M, D;
};

SearchParams derive_params(const mpz_class& N); // requires N >= 10^9

/// Deepest machinery that ran for an input; reported as the CLI "path".
enum class EnginePath { Trial, Strassen, OneFifth };

const char* engine_path_name(EnginePath p);

struct FactorOptions {
    SearchLimits limits{};
    SmallFactorOptions small{};
    unsigned order_candidates = 4;
    /// Expert overrides for the search parameters (CLI --r / --m).
    std::optional<std::uint64_t> override_r;
    std::optional<std::uint64_t> override_m;
};

struct FactorReport {
    EnginePath path = EnginePath::Trial;
    SearchParams params{};
    bool params_set = false;
    SearchTrace search{};
    bool search_ran = false;
    int semiprime_stage = 0; // driver step (1..4) that settled the deep call
};

/// Algorithm for N >= 10^9 known to be prime or a semiprime pq with p < q:
/// parameter selection, divisor sieve up to M, large-order element, then the
/// combined baby-step/giant-step sweep. Returns Factors or Prime. Inputs
/// outside the prime/semiprime promise still terminate; any Factors result is
/// division-checked, but a Prime verdict is only meaningful under the promise.
FactorOutcome factor_semiprime_or_prime(const mpz_class& N, const FactorOptions& opts = {},
                                        FactorReport* report = nullptr);

/// Complete factorisation, primes ascending with multiplicities.
struct Factorisation {
    std::vector<std::pair<mpz_class, unsigned>> factors;

    mpz_class product() const;
};

/// Prime factorisation of any N >= 1: strip primes <= N_i^(1/3) round by
/// round, then finish the remainder (1, a prime square, a small number, or a
/// prime/semiprime for the deep driver).
Factorisation factorise(const mpz_class& N, const FactorOptions& opts = {},
                        FactorReport* report = nullptr);

} // namespace onefifth
