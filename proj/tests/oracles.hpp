// Independent reference implementations used as test oracles. Everything here
// deliberately takes the dumb route (per-point Horner, schoolbook products,
// exhaustive enumeration) so it shares no code path with the library.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

inline mpz_class horner(const std::vector<mpz_class>& coeffs, const mpz_class& x,
                        const mpz_class& N) {
    mpz_class acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = (acc * x + coeffs[i]) % N;
    }
    return acc;
}

inline std::vector<mpz_class> schoolbook_mul(const std::vector<mpz_class>& a,
                                             const std::vector<mpz_class>& b,
                                             const mpz_class& N) {
    std::vector<mpz_class> out(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = (out[i + j] + a[i] * b[j]) % N;
        }
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

/// Least e >= 1 with a^e = 1 mod n, by plain enumeration. gcd(a, n) must be 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
    std::uint64_t t = a % n, e = 1;
    while (t != 1) {
        t = (unsigned __int128)t * a % n;
        ++e;
    }
    return e;
}

/// Smallest divisor >= 2 up to limit, or 0.
inline std::uint64_t smallest_divisor_u64(std::uint64_t n, std::uint64_t limit) {
    for (std::uint64_t d = 2; d <= limit && d <= n; ++d) {
        if (n % d == 0) return d;
    }
    return 0;
}

/// Full trial-division factorisation, (prime, multiplicity) ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factorise(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; (unsigned __int128)d * d <= n; ++d) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; (unsigned __int128)d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// floor(A^(1/v)) by pure bisection; independent of the Newton route.
inline mpz_class nth_root_floor_bisect(const mpz_class& A, unsigned v) {
    if (A == 0) return 0;
    mpz_class lo = 0, hi = 1, pw;
    auto pow_le = [&](const mpz_class& z) {
        mpz_pow_ui(pw.get_mpz_t(), z.get_mpz_t(), v);
        return pw <= A;
    };
    while (pow_le(hi)) hi *= 2;
    while (lo + 1 < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (pow_le(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

/// Exact decision of u < sqrt(4abN) + sqrt(N / (16 r^2 ab)) by two-step
/// squaring of the nested radicals: structurally different from the
/// single-squaring route in the library.
inline bool lehman_upper_nested(const mpz_class& N, const mpz_class& r,
                                const mpz_class& ab, const mpz_class& u) {
    // u < sqrt(A) + sqrt(B/C) with A = 4abN, B = N, C = 16 r^2 ab.
    mpz_class A = 4 * ab * N;
    mpz_class C = 16 * r * r * ab;
    // If u^2 < A then u < sqrt(A) and we are done.
    if (u * u < A) return true;
    // Now u - sqrt(A) >= 0; compare (u - sqrt(A))^2 < B/C, i.e.
    // C*(u^2 + A) - B < 2Cu*sqrt(A); if LHS < 0 done, else square again.
    mpz_class lhs = C * (u * u + A) - N;
    if (lhs < 0) return true;
    mpz_class rhs = 2 * C * u;
    return lhs * lhs < rhs * rhs * A;
}

} // namespace oracle
