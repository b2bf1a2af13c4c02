#include "onefifth/search.hpp"

#include "onefifth/lehman.hpp"
#include "onefifth/polyring.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace onefifth {

FactorOutcome FactorOutcome::from_divisor(const mpz_class& N, const mpz_class& d) {
    if (d <= 1 || d >= N || !mpz_divisible_p(N.get_mpz_t(), d.get_mpz_t())) {
        throw InternalError("from_divisor: not a nontrivial divisor");
    }
    mpz_class other = N / d;
    if (d <= other) return FactorOutcome(Kind::Factors, d, std::move(other));
    return FactorOutcome(Kind::Factors, std::move(other), d);
}

FactorOutcome FactorOutcome::factors(mpz_class p, mpz_class q) {
    if (p > q || p <= 1) throw InternalError("factors: need 1 < p <= q");
    return FactorOutcome(Kind::Factors, std::move(p), std::move(q));
}

FactorOutcome FactorOutcome::prime() {
    return FactorOutcome(Kind::Prime, mpz_class(), mpz_class());
}

FactorOutcome FactorOutcome::none() {
    return FactorOutcome(Kind::NoFactorsFound, mpz_class(), mpz_class());
}

const mpz_class& FactorOutcome::p() const {
    if (kind_ != Kind::Factors) throw DomainError("outcome holds no factors");
    return p_;
}

const mpz_class& FactorOutcome::q() const {
    if (kind_ != Kind::Factors) throw DomainError("outcome holds no factors");
    return q_;
}

// ---- BabyStepTable --------------------------------------------------------

BabyStepTable BabyStepTable::build(
    const ZnElement& alpha, std::uint64_t m,
    const std::function<bool(std::uint64_t, const mpz_class&)>& per_power) {
    if (m == 0) throw DomainError("BabyStepTable: m must be >= 1");
    if (m > std::numeric_limits<std::uint32_t>::max()) {
        throw ResourceLimitError("BabyStepTable: m exceeds the index width");
    }
    const Modulus& mod = alpha.modulus();
    BabyStepTable t;
    t.stride_ = mpz_size(mod.n().get_mpz_t());
    t.data_.assign(t.stride_ * m, 0);

    mpz_class power = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        if (per_power && !per_power(i, power)) {
            t.count_ = i;
            t.complete_ = false;
            return t;
        }
        const std::size_t nl = mpz_size(power.get_mpz_t());
        const mp_limb_t* limbs = mpz_limbs_read(power.get_mpz_t());
        std::copy(limbs, limbs + nl, t.data_.begin() + i * t.stride_);
        ++t.count_;
        if (i + 1 < m) mod.mul_inplace(power, alpha.value());
    }
    t.complete_ = true;

    t.order_.resize(m);
    for (std::uint64_t i = 0; i < m; ++i) t.order_[i] = static_cast<std::uint32_t>(i);
    const mp_limb_t* base = t.data_.data();
    const std::size_t stride = t.stride_;
    std::sort(t.order_.begin(), t.order_.end(),
              [base, stride](std::uint32_t x, std::uint32_t y) {
                  const mp_limb_t* px = base + (std::size_t)x * stride;
                  const mp_limb_t* py = base + (std::size_t)y * stride;
                  for (std::size_t k = stride; k-- > 0;) {
                      if (px[k] != py[k]) return px[k] < py[k];
                  }
                  return false;
              });
    return t;
}

int BabyStepTable::compare_rank(std::uint64_t rank, const mpz_class& v) const {
    const mp_limb_t* entry = data_.data() + (std::size_t)order_[rank] * stride_;
    const std::size_t vs = mpz_size(v.get_mpz_t());
    const mp_limb_t* vl = mpz_limbs_read(v.get_mpz_t());
    for (std::size_t k = stride_; k-- > 0;) {
        mp_limb_t w = k < vs ? vl[k] : 0;
        if (entry[k] != w) return entry[k] < w ? -1 : 1;
    }
    return 0;
}

std::optional<std::uint64_t> BabyStepTable::lookup(const mpz_class& value) const {
    std::uint64_t lo = 0, hi = count_;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        int c = compare_rank(mid, value);
        if (c == 0) return order_[mid];
        if (c < 0) lo = mid + 1;
        else hi = mid;
    }
    return std::nullopt;
}

// ---- matching -------------------------------------------------------------

std::vector<MatchRecord> match_sorted_lists(const BabyStepTable& table,
                                            const std::vector<GiantStepRecord>& records,
                                            const std::vector<std::uint64_t>& giant_order) {
    std::vector<MatchRecord> matches;
    std::uint64_t t = 0;
    std::size_t g = 0;
    while (t < table.size() && g < giant_order.size()) {
        const GiantStepRecord& rec = records[giant_order[g]];
        int c = table.compare_rank(t, rec.v);
        if (c < 0) {
            ++t;
        } else if (c > 0) {
            ++g;
        } else {
            // table values are distinct; several records may share a value
            matches.push_back({table.index_at_rank(t), giant_order[g]});
            ++g;
        }
    }
    return matches;
}

// ---- Algorithm: collision search -------------------------------------------

FactorOutcome find_collisions(const mpz_class& N, const ZnElement& alpha,
                              std::uint64_t m, const std::vector<ZnElement>& v,
                              const SearchLimits& limits) {
    if (N < 2) throw DomainError("find_collisions: N must be >= 2");
    if (alpha.modulus().n() != N) throw DomainError("find_collisions: alpha not mod N");
    if (m == 0) throw DomainError("find_collisions: m must be >= 1");
    if (m > limits.max_baby_steps) {
        throw ResourceLimitError("find_collisions: m exceeds the configured limit");
    }
    if (v.empty()) return FactorOutcome::none();

    const Modulus& mod = alpha.modulus();
    {
        mpz_class g = mod.gcd_with(alpha.value());
        if (g != 1) throw NonInvertibleError("find_collisions: alpha is not a unit", g);
    }

    ModPoly f = product_tree(v);
    const std::uint64_t block = std::max<std::uint64_t>(v.size() + 1, 1024);

    FactorOutcome result = FactorOutcome::none();
    eval_geometric_blocked(
        f, alpha, m, block, [&](std::uint64_t i, const mpz_class& fval) {
            mpz_class gamma = mod.gcd_with(fval);
            if (gamma == 1) return true;
            if (gamma != N) {
                result = FactorOutcome::from_divisor(N, gamma);
                return false;
            }
            // f(alpha^i) = 0 in Z_N: some factor v_h - alpha^i must be a
            // zero divisor, and v_h != alpha^i keeps its gcd below N.
            ZnElement power = modpow(alpha, mpz_class(i));
            mpz_class diff;
            for (const ZnElement& vh : v) {
                mod.sub(diff, vh.value(), power.value());
                mpz_class g2 = mod.gcd_with(diff);
                if (g2 != 1 && g2 != N) {
                    result = FactorOutcome::from_divisor(N, g2);
                    return false;
                }
            }
            return true;
        });
    return result;
}

// ---- Algorithm: the main search --------------------------------------------

FactorOutcome main_search(const mpz_class& N, std::uint64_t r, std::uint64_t m,
                          const ZnElement& alpha, const SearchLimits& limits,
                          SearchTrace* trace) {
    if (N < 2) throw DomainError("main_search: N must be >= 2");
    if (r < 1 || m < 1) throw DomainError("main_search: r, m must be >= 1");
    if (alpha.modulus().n() != N) throw DomainError("main_search: alpha not mod N");
    if (m > limits.max_baby_steps) {
        throw ResourceLimitError("main_search: m exceeds the configured limit");
    }
    const Modulus& mod = alpha.modulus();
    {
        mpz_class g = mod.gcd_with(alpha.value());
        if (g != 1) throw NonInvertibleError("main_search: alpha is not a unit", g);
    }

    SearchTrace local;
    SearchTrace& tr = trace ? *trace : local;
    tr = SearchTrace{};
    tr.baby_steps = m;

    // Step 1: baby steps with gcd(N, alpha^i - 1) screening.
    std::optional<mpz_class> screened;
    bool order_violation = false;
    mpz_class tmp;
    BabyStepTable table = BabyStepTable::build(
        alpha, m, [&](std::uint64_t i, const mpz_class& power) {
            if (i == 0) return true;
            tmp = power - 1;
            mpz_class g = mod.gcd_with(tmp);
            if (g == 1) return true;
            if (g == N) {
                order_violation = true; // alpha^i = 1 with i < m
                return false;
            }
            screened = std::move(g);
            return false;
        });
    if (order_violation) {
        throw DomainError("main_search: ord(alpha) < m violates the precondition");
    }
    if (screened) {
        tr.resolved_step = 1;
        return FactorOutcome::from_divisor(N, *screened);
    }

    // Step 2: t_{a,b} = alpha^(aN + b - ceil(sqrt(4abN))), then the giant
    // records v_{a,b,j} by repeated multiplication with alpha^-m.
    std::vector<CandidateWindow> windows = enumerate_windows(N, r, m);
    tr.window_count = windows.size();
    ZnElement inv_m = modpow(alpha, -mpz_class(m));
    std::vector<GiantStepRecord> records;
    for (const CandidateWindow& w : windows) {
        mpz_class exponent = mpz_class(w.a) * N + w.b - w.base;
        ZnElement t = modpow(alpha, exponent);
        mpz_class cur = t.value();
        for (std::uint64_t j = 0; j < w.j_count; ++j) {
            if (j > 0) mod.mul_inplace(cur, inv_m.value());
            if (records.size() >= limits.max_giant_steps) {
                throw ResourceLimitError("main_search: giant-step count exceeds the limit");
            }
            records.push_back({cur, w.a, w.b, j});
        }
    }
    tr.giant_steps = records.size();

    // Step 3: sort and match; each match yields a candidate u to test.
    std::vector<std::uint64_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // stable: records with equal values keep their enumeration order
    std::stable_sort(order.begin(), order.end(),
                     [&records](std::uint64_t x, std::uint64_t y) {
                         return records[x].v < records[y].v;
                     });
    std::vector<MatchRecord> matches = match_sorted_lists(table, records, order);
    tr.match_count = matches.size();

    std::vector<bool> matched(records.size(), false);
    for (const MatchRecord& mr : matches) {
        matched[mr.record_index] = true;
        const GiantStepRecord& rec = records[mr.record_index];
        mpz_class base = iroot_ceil(4 * mpz_class(rec.a) * rec.b * N, 1, 1, 2);
        mpz_class u = mpz_class(mr.baby_index) + mpz_class(rec.j) * m + base;
        auto pq = recover_from_candidate(N, mpz_class(rec.a), mpz_class(rec.b), u);
        if (pq) {
            tr.resolved_step = 3;
            return FactorOutcome::factors(std::move(pq->first), std::move(pq->second));
        }
    }

    // Step 4: collision search over the unmatched records, original order.
    std::vector<ZnElement> survivors;
    survivors.reserve(records.size() - matches.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!matched[i]) survivors.emplace_back(records[i].v, mod);
    }
    tr.survivor_count = survivors.size();
    if (!survivors.empty()) {
        FactorOutcome out = find_collisions(N, alpha, m, survivors, limits);
        if (out.is_factors()) {
            tr.resolved_step = 4;
            return out;
        }
    }

    tr.resolved_step = 5;
    return FactorOutcome::prime();
}

} // namespace onefifth
