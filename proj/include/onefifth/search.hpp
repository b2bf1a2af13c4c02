#pragma once

#include "onefifth/znum.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace onefifth {

/// Outcome of a search: a nontrivial split of N, a primality verdict, or
/// nothing found.
class FactorOutcome {
public:
    enum class Kind { Factors, Prime, NoFactorsFound };

    /// Split N by a known divisor d, 1 < d < N; validated.
    static FactorOutcome from_divisor(const mpz_class& N, const mpz_class& d);
    static FactorOutcome factors(mpz_class p, mpz_class q);
    static FactorOutcome prime();
    static FactorOutcome none();

    Kind kind() const { return kind_; }
    bool is_factors() const { return kind_ == Kind::Factors; }
    const mpz_class& p() const;
    const mpz_class& q() const;

private:
    FactorOutcome(Kind k, mpz_class p, mpz_class q)
        : kind_(k), p_(std::move(p)), q_(std::move(q)) {}

    Kind kind_;
    mpz_class p_, q_;
};

struct SearchLimits {
    std::uint64_t max_baby_steps = 1u << 25;
    std::uint64_t max_giant_steps = 1u << 25;
};

/// Per-step counts reported by the CLI's verbose mode. resolved_step is the
/// algorithm step (1..5) that settled the outcome.
struct SearchTrace {
    std::uint64_t baby_steps = 0;
    std::uint64_t window_count = 0;
    std::uint64_t giant_steps = 0;
    std::uint64_t match_count = 0;
    std::uint64_t survivor_count = 0;
    int resolved_step = 0;
};

/// The powers alpha^0 .. alpha^(m-1), stored as fixed-stride packed residues
/// with a value-sorted rank index. Powers are distinct when ord(alpha) >= m.
class BabyStepTable {
public:
    /// per_power (when set) sees each (i, alpha^i) during construction and
    /// may return false to abort early.
    static BabyStepTable build(
        const ZnElement& alpha, std::uint64_t m,
        const std::function<bool(std::uint64_t, const mpz_class&)>& per_power = {});

    std::uint64_t size() const { return count_; }
    bool complete() const { return complete_; }

    /// Index i with alpha^i == value, if present.
    std::optional<std::uint64_t> lookup(const mpz_class& value) const;

    std::uint64_t index_at_rank(std::uint64_t rank) const { return order_[rank]; }
    /// <0 / 0 / >0 as the rank-th smallest table value compares to v.
    int compare_rank(std::uint64_t rank, const mpz_class& v) const;

private:
    BabyStepTable() = default;

    std::size_t stride_ = 0;
    std::vector<mp_limb_t> data_;
    std::vector<std::uint32_t> order_;
    std::uint64_t count_ = 0;
    bool complete_ = false;
};

/// One giant-step record: v = alpha^(-jm) * t_{a,b} and its generating triple.
struct GiantStepRecord {
    mpz_class v;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t j = 0;
};

struct MatchRecord {
    std::uint64_t baby_index;
    std::uint64_t record_index;
};

/// Linear merge of the two value-sorted lists. giant_order is a permutation
/// of record indices sorted by value (stable, so equal values keep their
/// enumeration order). Every record value matches at most one baby index.
std::vector<MatchRecord> match_sorted_lists(const BabyStepTable& table,
                                            const std::vector<GiantStepRecord>& records,
                                            const std::vector<std::uint64_t>& giant_order);

/// Collision search modulo a factor: builds f(x) = prod (x - v_h), evaluates
/// it at alpha^0..alpha^(m-1), and inspects gcd(N, f(alpha^i)). Requires
/// ord(alpha) >= m and v_h != alpha^i for all h, i (caller guarantees).
/// Empty v returns NoFactorsFound immediately.
FactorOutcome find_collisions(const mpz_class& N, const ZnElement& alpha,
                              std::uint64_t m, const std::vector<ZnElement>& v,
                              const SearchLimits& limits = {});

/// The combined sweep over all candidate windows with one baby-step table:
/// (1) powers + gcd screening, (2) giant-step records for every window,
/// (3) sort-and-match with candidate recovery, (4) collision search over the
/// survivors, (5) primality verdict.
FactorOutcome main_search(const mpz_class& N, std::uint64_t r, std::uint64_t m,
                          const ZnElement& alpha, const SearchLimits& limits = {},
                          SearchTrace* trace = nullptr);

} // namespace onefifth
