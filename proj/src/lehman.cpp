#include "onefifth/lehman.hpp"

namespace onefifth {

bool lehman_interval_contains(const mpz_class& N, const mpz_class& r,
                              const mpz_class& ab, const mpz_class& u) {
    if (N < 1 || r < 1 || ab < 1 || u < 1) {
        throw DomainError("lehman_interval_contains: arguments must be positive");
    }
    mpz_class u2 = u * u;
    if (u2 < 4 * ab * N) return false;
    mpz_class lhs = 16 * r * r * ab * u2;
    mpz_class rhs = 8 * r * ab + 1;
    rhs = rhs * rhs * N;
    return lhs < rhs;
}

bool giant_index_admitted(const mpz_class& N, std::uint64_t r, std::uint64_t m,
                          const mpz_class& ab, std::uint64_t j) {
    if (N < 1 || r < 1 || m < 1 || ab < 1) {
        throw DomainError("giant_index_admitted: arguments must be positive");
    }
    mpz_class t = 4 * mpz_class(r);
    t *= m;
    t *= j;
    return t * t * ab < N;
}

namespace {

struct QuadraticRoots {
    mpz_class y1, y2; // y1 >= y2, y1 + y2 = u, y1*y2 = ab*N
};

// Integer roots of y^2 - u y + abN, when they exist.
std::optional<QuadraticRoots> split_candidate(const mpz_class& N, const mpz_class& ab,
                                              const mpz_class& u) {
    mpz_class disc = u * u - 4 * ab * N;
    if (disc < 0) return std::nullopt;
    auto s = is_perfect_square(disc);
    if (!s) return std::nullopt;
    if (mpz_odd_p(mpz_class(u - *s).get_mpz_t())) return std::nullopt;
    QuadraticRoots roots;
    roots.y1 = (u + *s) / 2;
    roots.y2 = (u - *s) / 2;
    return roots;
}

std::optional<std::pair<mpz_class, mpz_class>> order_factors(mpz_class p, mpz_class q) {
    if (p > q) std::swap(p, q);
    return std::make_pair(std::move(p), std::move(q));
}

} // namespace

std::optional<std::pair<mpz_class, mpz_class>> recover_from_candidate(
    const mpz_class& N, const mpz_class& a, const mpz_class& b, const mpz_class& u) {
    if (N < 2) throw DomainError("recover_from_candidate: N must be >= 2");
    if (a < 1 || b < 1 || u < 1) {
        throw DomainError("recover_from_candidate: a, b, u must be positive");
    }
    auto roots = split_candidate(N, a * b, u);
    if (!roots) return std::nullopt;

    // y1 = aq, y2 = bp in one of the two orientations.
    auto try_pairing = [&](const mpz_class& aa,
                           const mpz_class& bb) -> std::optional<std::pair<mpz_class, mpz_class>> {
        if (!mpz_divisible_p(roots->y1.get_mpz_t(), aa.get_mpz_t())) return std::nullopt;
        if (!mpz_divisible_p(roots->y2.get_mpz_t(), bb.get_mpz_t())) return std::nullopt;
        mpz_class q = roots->y1 / aa;
        mpz_class p = roots->y2 / bb;
        if (p <= 1 || q <= 1 || p * q != N) return std::nullopt;
        return order_factors(std::move(p), std::move(q));
    };

    auto result = try_pairing(a, b);
    if (!result) result = try_pairing(b, a);
    if (result) {
        const mpz_class& p = result->first;
        const mpz_class& q = result->second;
        if (p * q != N || (u != a * q + b * p && u != a * p + b * q)) {
            throw InternalError("recover_from_candidate: inconsistent recovery");
        }
    }
    return result;
}

std::optional<std::pair<mpz_class, mpz_class>> recover_from_product(
    const mpz_class& N, const mpz_class& ab, const mpz_class& u) {
    if (N < 2) throw DomainError("recover_from_product: N must be >= 2");
    if (ab < 1 || u < 1) {
        throw DomainError("recover_from_product: ab, u must be positive");
    }
    {
        mpz_class g = gcd_counted(ab, N);
        if (g != 1) {
            throw NonInvertibleError("recover_from_product: gcd(ab, N) must be 1",
                                     std::move(g));
        }
    }
    auto roots = split_candidate(N, ab, u);
    if (!roots) return std::nullopt;

    // One root is (some divisor of ab) * q with the cofactor coprime to N,
    // so a single GCD against N splits off the prime.
    for (const mpz_class* y : {&roots->y1, &roots->y2}) {
        mpz_class g = gcd_counted(*y, N);
        if (g > 1 && g < N) {
            return order_factors(std::move(g), N / g);
        }
    }
    return std::nullopt;
}

std::vector<CandidateWindow> enumerate_windows(const mpz_class& N, std::uint64_t r,
                                               std::uint64_t m) {
    if (N < 1) throw DomainError("enumerate_windows: N must be positive");
    if (r < 1 || m < 1) throw DomainError("enumerate_windows: r, m must be >= 1");
    std::vector<CandidateWindow> out;
    mpz_class rm = mpz_class(r) * m;
    mpz_class K_base = 16 * rm * rm;
    for (std::uint64_t a = 1; a <= r; ++a) {
        for (std::uint64_t b = 1; b <= r / a; ++b) {
            CandidateWindow w;
            w.a = a;
            w.b = b;
            mpz_class ab = mpz_class(a) * b;
            w.base = iroot_ceil(4 * ab * N, 1, 1, 2);
            // count of j >= 0 with (4rmj)^2 ab < N
            mpz_class jmax = iroot_floor(N - 1, K_base * ab, 1, 2);
            if (!mpz_fits_ulong_p(jmax.get_mpz_t())) {
                throw ResourceLimitError("enumerate_windows: giant index range too large");
            }
            w.j_count = mpz_get_ui(jmax.get_mpz_t()) + 1;
            out.push_back(std::move(w));
        }
    }
    return out;
}

} // namespace onefifth
