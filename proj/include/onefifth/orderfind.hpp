#pragma once

#include "onefifth/znum.hpp"

#include <optional>

namespace onefifth {

/// Result of the large-order-element search: an element with ord_N > D, a
/// nontrivial factor of N stumbled upon along the way, or a primality verdict.
class OrderOutcome {
public:
    enum class Kind { LargeOrder, Factor, Prime };

    static OrderOutcome large_order(ZnElement alpha);
    static OrderOutcome factor(mpz_class d);
    static OrderOutcome prime();

    Kind kind() const { return kind_; }
    const ZnElement& alpha() const;
    const mpz_class& factor_value() const;

private:
    OrderOutcome(Kind k, std::optional<ZnElement> a, mpz_class d)
        : kind_(k), alpha_(std::move(a)), factor_(std::move(d)) {}

    Kind kind_;
    std::optional<ZnElement> alpha_;
    mpz_class factor_;
};

/// Least e in [1, D] with alpha^e = 1, or nullopt when ord(alpha) > D.
/// Baby steps alpha^0..alpha^(c-1) with c = ceil(sqrt(D)) in a sorted table,
/// giant steps alpha^(-jc) matched against it.
std::optional<mpz_class> bsgs_order_bounded(const ZnElement& alpha, const mpz_class& D);

/// Scan candidates alpha = 2, 3, ...; a shared factor ends the search, an
/// order that the bounded BSGS cannot find certifies ord > D. After
/// max_small_order_candidates candidates with small order, fall back to the
/// bounded divisor sieve with M = ceil(sqrt(N)), which settles N
/// unconditionally. Requires N^(2/5) <= D <= N, checked as D^5 >= N^2.
OrderOutcome find_large_order_element(const mpz_class& N, const mpz_class& D,
                                      unsigned max_small_order_candidates = 4);

} // namespace onefifth
