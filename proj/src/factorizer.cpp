#include "onefifth/factorizer.hpp"

#include "onefifth/orderfind.hpp"
#include "onefifth/primality.hpp"

#include <algorithm>
#include <cassert>

namespace onefifth {

namespace {

const mpz_class kDeepThreshold = 1000000000; // 10^9

} // namespace

SearchParams derive_params(const mpz_class& N) {
    if (N < kDeepThreshold) throw DomainError("derive_params: N must be >= 10^9");
    const unsigned long L = lg(N);
    mpz_class L4, L6;
    mpz_ui_pow_ui(L4.get_mpz_t(), L, 4);
    mpz_ui_pow_ui(L6.get_mpz_t(), L, 6);
    SearchParams p;
    // N^(1/5)/lg^(4/5) N = (N/lg^4 N)^(1/5); N^(1/5) lg^(6/5) N = (N lg^6 N)^(1/5)
    p.r = iroot_ceil(N, L4, 1, 5);
    if (p.r < 1) p.r = 1;
    p.m = iroot_ceil(N * L6, 1, 1, 5);
    p.M = iroot_ceil(N, p.r, 1, 2);
    p.D = iroot_ceil(N * N, 1, 1, 5);
    return p;
}

const char* engine_path_name(EnginePath p) {
    switch (p) {
        case EnginePath::Trial: return "trial";
        case EnginePath::Strassen: return "strassen";
        case EnginePath::OneFifth: return "onefifth";
    }
    return "?";
}

namespace {

std::uint64_t to_u64_or_throw(const mpz_class& v, const char* what) {
    if (!mpz_fits_ulong_p(v.get_mpz_t())) {
        throw ResourceLimitError(std::string(what) + " does not fit the search engine");
    }
    return mpz_get_ui(v.get_mpz_t());
}

} // namespace

FactorOutcome factor_semiprime_or_prime(const mpz_class& N, const FactorOptions& opts,
                                        FactorReport* report) {
    if (N < kDeepThreshold) {
        throw DomainError("factor_semiprime_or_prime: N must be >= 10^9");
    }
    SearchParams params = derive_params(N);
    if (report) {
        report->params = params;
        report->params_set = true;
    }

    // The search parameters must fit the engine caps; refuse before the
    // sieve stage has done any real work.
    std::uint64_t m = opts.override_m ? *opts.override_m
                                      : to_u64_or_throw(params.m, "m");
    std::uint64_t r = opts.override_r ? *opts.override_r
                                      : to_u64_or_throw(params.r, "r");
    if (r < 1 || m < 1) throw DomainError("factor_semiprime_or_prime: r, m must be >= 1");
    if (m > opts.limits.max_baby_steps) {
        throw ResourceLimitError("factor_semiprime_or_prime: m exceeds the step limit");
    }

    // Step 2: rule out p <= M.
    if (auto p = smallest_prime_divisor(N, params.M, opts.small)) {
        if (report) report->semiprime_stage = 2;
        if (report && report->path < EnginePath::Strassen) {
            report->path = EnginePath::Strassen;
        }
        return FactorOutcome::from_divisor(N, *p);
    }

    // Step 3: a provably large-order element (or an early resolution).
    mpz_class D = params.D;
    if (D < m) D = m; // ord > D >= m is what the search needs; for the
                      // derived parameters D >= m already holds at N >= 10^9
    if (report) {
        report->path = EnginePath::OneFifth;
        report->semiprime_stage = 3;
    }
    OrderOutcome oc = find_large_order_element(N, D, opts.order_candidates);
    if (oc.kind() == OrderOutcome::Kind::Factor) {
        return FactorOutcome::from_divisor(N, oc.factor_value());
    }
    if (oc.kind() == OrderOutcome::Kind::Prime) {
        return FactorOutcome::prime();
    }

    // Step 4: the main sweep.
    if (report) report->semiprime_stage = 4;
    SearchTrace* tr = report ? &report->search : nullptr;
    if (report) report->search_ran = true;
    return main_search(N, r, m, oc.alpha(), opts.limits, tr);
}

mpz_class Factorisation::product() const {
    mpz_class n = 1;
    mpz_class pe;
    for (const auto& [p, e] : factors) {
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        n *= pe;
    }
    return n;
}

Factorisation factorise(const mpz_class& N, const FactorOptions& opts,
                        FactorReport* report) {
    if (N < 1) throw DomainError("factorise: N must be >= 1");
    std::vector<mpz_class> primes;
    mpz_class cur = N;

    // Strip one prime <= cur^(1/3) per round, recomputing the bound.
    while (cur > 1) {
        mpz_class M = iroot_ceil(cur, 1, 1, 3);
        if (report && mpz_cmp_ui(M.get_mpz_t(), opts.small.trial_crossover) >= 0 &&
            report->path < EnginePath::Strassen) {
            report->path = EnginePath::Strassen;
        }
        auto p = smallest_prime_divisor(cur, M, opts.small);
        if (!p) break;
        cur /= *p;
        primes.push_back(std::move(*p));
    }

    if (cur > 1) {
        // cur now has at most two prime factors, both > cur^(1/3).
        if (auto s = is_perfect_square(cur)) {
            assert(is_probable_prime(*s));
            primes.push_back(*s);
            primes.push_back(std::move(*s));
        } else if (cur < kDeepThreshold) {
            mpz_class root = iroot_floor(cur, 1, 1, 2);
            auto d = trial_division(cur, root);
            if (d) {
                primes.push_back(cur / *d);
                primes.push_back(std::move(*d));
            } else {
                primes.push_back(cur);
            }
        } else {
            FactorOutcome out = factor_semiprime_or_prime(cur, opts, report);
            if (out.is_factors()) {
                primes.push_back(out.p());
                primes.push_back(out.q());
            } else {
                primes.push_back(cur);
            }
        }
    }

    std::sort(primes.begin(), primes.end());
    Factorisation result;
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        result.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    if (result.product() != N) {
        throw InternalError("factorise: product check failed");
    }
    return result;
}

} // namespace onefifth
