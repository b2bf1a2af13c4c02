#include "onefifth/smallfactor.hpp"

#include "onefifth/polyring.hpp"

#include <vector>

namespace onefifth {

std::optional<mpz_class> trial_division(const mpz_class& N, const mpz_class& M) {
    if (N < 2) throw DomainError("trial_division: N must be >= 2");
    if (M < 1) throw DomainError("trial_division: M must be >= 1");
    if (mpz_fits_ulong_p(N.get_mpz_t())) {
        unsigned long n = mpz_get_ui(N.get_mpz_t());
        unsigned long lim = mpz_fits_ulong_p(M.get_mpz_t())
                                ? mpz_get_ui(M.get_mpz_t())
                                : n; // M >= N: no divisor beyond N matters
        for (unsigned long d = 2; d <= lim && d <= n; ++d) {
            if (n % d == 0) return mpz_class(d);
        }
        return std::nullopt;
    }
    mpz_class d = 2;
    while (d <= M && d <= N) {
        if (mpz_divisible_p(N.get_mpz_t(), d.get_mpz_t())) return d;
        ++d;
    }
    return std::nullopt;
}

std::optional<mpz_class> smallest_prime_divisor(const mpz_class& N, const mpz_class& M,
                                                const SmallFactorOptions& opts) {
    if (N < 2) throw DomainError("smallest_prime_divisor: N must be >= 2");
    if (M < 1) throw DomainError("smallest_prime_divisor: M must be >= 1");
    if (mpz_cmp_ui(M.get_mpz_t(), opts.trial_crossover) < 0) {
        return trial_division(N, M);
    }

    mpz_class d_z = iroot_ceil(M, 1, 1, 2);
    if (!mpz_fits_ulong_p(d_z.get_mpz_t()) ||
        mpz_get_ui(d_z.get_mpz_t()) > opts.max_degree) {
        throw ResourceLimitError("smallest_prime_divisor: sieve block too large");
    }
    const std::uint64_t d = mpz_get_ui(d_z.get_mpz_t());

    Modulus mod(N);
    // f(x) = (x+1)...(x+d): roots -1, ..., -d.
    std::vector<mpz_class> roots;
    roots.reserve(d);
    for (std::uint64_t i = 1; i <= d; ++i) {
        mpz_class r = -mpz_class(i);
        mod.reduce(r);
        roots.push_back(std::move(r));
    }
    ModPoly f = product_tree(roots, mod);

    std::vector<ZnElement> points;
    points.reserve(d);
    for (std::uint64_t j = 0; j < d; ++j) {
        points.emplace_back(mpz_class(j) * d, mod);
    }
    std::vector<ZnElement> vals = multipoint_eval(f, points);

    // Blocks cover jd+1 .. jd+d, ascending, so the first hit is the smallest
    // divisor of N overall; it is > 1 and has no smaller divisor, hence prime.
    for (std::uint64_t j = 0; j < d; ++j) {
        if (mod.gcd_with(vals[j].value()) == 1) continue;
        mpz_class candidate = mpz_class(j) * d;
        for (std::uint64_t i = 1; i <= d; ++i) {
            ++candidate;
            if (candidate > M) return std::nullopt;
            if (gcd_counted(N, candidate) > 1) return candidate;
        }
        // gcd trips only through some jd+i in this block
        throw InternalError("smallest_prime_divisor: block scan missed its witness");
    }
    return std::nullopt;
}

} // namespace onefifth
