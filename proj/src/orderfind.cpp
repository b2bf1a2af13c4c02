#include "onefifth/orderfind.hpp"

#include "onefifth/smallfactor.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace onefifth {

OrderOutcome OrderOutcome::large_order(ZnElement alpha) {
    return OrderOutcome(Kind::LargeOrder, std::move(alpha), mpz_class());
}

OrderOutcome OrderOutcome::factor(mpz_class d) {
    return OrderOutcome(Kind::Factor, std::nullopt, std::move(d));
}

OrderOutcome OrderOutcome::prime() {
    return OrderOutcome(Kind::Prime, std::nullopt, mpz_class());
}

const ZnElement& OrderOutcome::alpha() const {
    if (kind_ != Kind::LargeOrder) throw DomainError("outcome holds no element");
    return *alpha_;
}

const mpz_class& OrderOutcome::factor_value() const {
    if (kind_ != Kind::Factor) throw DomainError("outcome holds no factor");
    return factor_;
}

std::optional<mpz_class> bsgs_order_bounded(const ZnElement& alpha, const mpz_class& D) {
    if (D < 1) throw DomainError("bsgs_order_bounded: D must be >= 1");
    const Modulus& mod = alpha.modulus();
    {
        mpz_class g = mod.gcd_with(alpha.value());
        if (g != 1) throw NonInvertibleError("bsgs_order_bounded: alpha is not a unit", g);
    }

    mpz_class c_z = iroot_ceil(D, 1, 1, 2);
    if (!mpz_fits_ulong_p(c_z.get_mpz_t()) || mpz_get_ui(c_z.get_mpz_t()) > (1u << 24)) {
        throw ResourceLimitError("bsgs_order_bounded: baby-step table too large");
    }
    const std::uint64_t c = mpz_get_ui(c_z.get_mpz_t());

    // Baby steps. The power sequence is purely periodic, so the first repeat
    // is the value 1 at index ord(alpha); spotting it here settles ord < c.
    std::vector<std::pair<mpz_class, std::uint64_t>> baby;
    baby.reserve(c);
    mpz_class power = 1;
    for (std::uint64_t i = 0; i < c; ++i) {
        if (i > 0 && power == 1) return mpz_class(i); // ord = i <= c-1 <= D
        baby.emplace_back(power, i);
        if (i + 1 < c) mod.mul_inplace(power, alpha.value());
    }
    std::sort(baby.begin(), baby.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    ZnElement giant_step = modpow(alpha, -mpz_class(c));
    mpz_class cur = 1;
    mpz_class jmax_z;
    mpz_fdiv_q(jmax_z.get_mpz_t(), D.get_mpz_t(), c_z.get_mpz_t());
    const std::uint64_t jmax = mpz_get_ui(jmax_z.get_mpz_t());
    for (std::uint64_t j = 1; j <= jmax; ++j) {
        mod.mul_inplace(cur, giant_step.value());
        auto it = std::lower_bound(
            baby.begin(), baby.end(), cur,
            [](const auto& entry, const mpz_class& v) { return entry.first < v; });
        if (it != baby.end() && it->first == cur) {
            // First matching j gives the least exponent: any later match
            // exceeds this one by at least c - i > 0.
            mpz_class e = mpz_class(j) * c + it->second;
            if (e <= D) return e;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

OrderOutcome find_large_order_element(const mpz_class& N, const mpz_class& D,
                                      unsigned max_small_order_candidates) {
    if (N < 2) throw DomainError("find_large_order_element: N must be >= 2");
    if (D < 1 || D > N) throw DomainError("find_large_order_element: need N^(2/5) <= D <= N");
    {
        mpz_class d5, n2;
        mpz_pow_ui(d5.get_mpz_t(), D.get_mpz_t(), 5);
        mpz_pow_ui(n2.get_mpz_t(), N.get_mpz_t(), 2);
        if (d5 < n2) throw DomainError("find_large_order_element: need N^(2/5) <= D <= N");
    }

    Modulus mod(N);
    unsigned small_order_seen = 0;
    for (mpz_class cand = 2; cand < N && small_order_seen < max_small_order_candidates;
         ++cand) {
        mpz_class g = mod.gcd_with(cand);
        if (g != 1) return OrderOutcome::factor(std::move(g));
        ZnElement alpha(cand, mod);
        if (!bsgs_order_bounded(alpha, D)) {
            return OrderOutcome::large_order(std::move(alpha));
        }
        ++small_order_seen;
    }

    // Unconditional fallback: any prime divisor is <= ceil(sqrt(N)) unless N
    // is prime.
    auto p = smallest_prime_divisor(N, iroot_ceil(N, 1, 1, 2));
    if (p && *p != N) return OrderOutcome::factor(std::move(*p));
    return OrderOutcome::prime();
}

} // namespace onefifth
