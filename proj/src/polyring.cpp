#include "onefifth/polyring.hpp"

#include "onefifth/stats.hpp"

#include <algorithm>
#include <cassert>

namespace onefifth {

static_assert(GMP_NUMB_BITS == 64 && GMP_NAIL_BITS == 0,
              "Kronecker packing assumes full 64-bit limbs");

namespace {

void normalize(std::vector<mpz_class>& c) {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.empty()) c.emplace_back(0);
}

// ---- Kronecker packing -------------------------------------------------

// OR the limbs of v into buf starting at bit_off. Slots never overlap, but
// they may share boundary limbs, hence the accumulate.
void write_bits(std::vector<mp_limb_t>& buf, std::size_t bit_off, const mpz_class& v) {
    std::size_t n = mpz_size(v.get_mpz_t());
    if (n == 0) return;
    const mp_limb_t* limbs = mpz_limbs_read(v.get_mpz_t());
    std::size_t idx = bit_off >> 6;
    unsigned sh = bit_off & 63;
    if (sh == 0) {
        for (std::size_t k = 0; k < n; ++k) buf[idx + k] |= limbs[k];
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            buf[idx + k] |= limbs[k] << sh;
            buf[idx + k + 1] |= limbs[k] >> (64 - sh);
        }
    }
}

// Extract `width` bits at bit_off from src (nl limbs; out-of-range reads are 0).
void read_bits(const mp_limb_t* src, std::size_t nl, std::size_t bit_off,
               std::size_t width, std::vector<mp_limb_t>& tmp, mpz_class& out) {
    std::size_t out_limbs = (width + 63) >> 6;
    tmp.assign(out_limbs, 0);
    std::size_t idx = bit_off >> 6;
    unsigned sh = bit_off & 63;
    for (std::size_t k = 0; k < out_limbs; ++k) {
        mp_limb_t lo = (idx + k < nl) ? src[idx + k] : 0;
        mp_limb_t hi = (sh && idx + k + 1 < nl) ? src[idx + k + 1] : 0;
        tmp[k] = sh ? ((lo >> sh) | (hi << (64 - sh))) : lo;
    }
    unsigned rem = width & 63;
    if (rem) tmp[out_limbs - 1] &= ((mp_limb_t)1 << rem) - 1;
    mpz_import(out.get_mpz_t(), out_limbs, -1, sizeof(mp_limb_t), 0, 0, tmp.data());
}

// Raw convolution: result has exactly la+lb-1 coefficients, no normalization.
std::vector<mpz_class> raw_mul(const std::vector<mpz_class>& a,
                               const std::vector<mpz_class>& b, const Modulus& mod) {
    const std::size_t la = a.size(), lb = b.size();
    stats::note_poly_mul_degree(la + lb - 2);
    const mpz_class& N = mod.n();
    mpz_class nm1 = N - 1;
    std::size_t bits_n = mpz_sizeinbase(nm1.get_mpz_t(), 2);
    std::size_t dmin = std::min(la, lb) - 1;
    // No convolution sum of residues < N can reach 2^W.
    std::size_t W = 2 * bits_n + lg(mpz_class(dmin + 1)) + 1;
    std::size_t slots = la + lb - 1;

    auto pack = [&](const std::vector<mpz_class>& c) {
        std::vector<mp_limb_t> buf((c.size() * W) / 64 + 2, 0);
        for (std::size_t i = 0; i < c.size(); ++i) write_bits(buf, i * W, c[i]);
        mpz_class packed;
        mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0,
                   buf.data());
        return packed;
    };

    mpz_class P = pack(a) * pack(b);
    const mp_limb_t* pl = mpz_limbs_read(P.get_mpz_t());
    std::size_t nl = mpz_size(P.get_mpz_t());

    std::vector<mpz_class> out(slots);
    std::vector<mp_limb_t> tmp;
    mpz_class slot;
    for (std::size_t s = 0; s < slots; ++s) {
        read_bits(pl, nl, s * W, W, tmp, slot);
        mpz_fdiv_r(out[s].get_mpz_t(), slot.get_mpz_t(), N.get_mpz_t());
    }
    return out;
}

std::vector<mpz_class> raw_mul_trunc(const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b,
                                     const Modulus& mod, std::size_t k) {
    std::vector<mpz_class> a2(a.begin(), a.begin() + std::min(a.size(), k));
    std::vector<mpz_class> b2(b.begin(), b.begin() + std::min(b.size(), k));
    std::vector<mpz_class> p = raw_mul(a2, b2, mod);
    p.resize(k, mpz_class(0));
    return p;
}

// Inverse of the power series a (a[0] must be 1) modulo x^k, by Newton
// doubling: h <- h*(2 - a*h).
std::vector<mpz_class> series_inverse(const std::vector<mpz_class>& a,
                                      const Modulus& mod, std::size_t k) {
    assert(!a.empty() && a[0] == 1);
    std::vector<mpz_class> h{mpz_class(1)};
    std::size_t prec = 1;
    while (prec < k) {
        std::size_t nprec = std::min(2 * prec, k);
        std::vector<mpz_class> t = raw_mul_trunc(a, h, mod, nprec);
        const mpz_class& N = mod.n();
        t[0] = 2 - t[0];
        if (t[0] < 0) t[0] += N;
        for (std::size_t j = 1; j < nprec; ++j) {
            if (t[j] != 0) t[j] = N - t[j];
        }
        h = raw_mul_trunc(h, t, mod, nprec);
        prec = nprec;
    }
    h.resize(k, mpz_class(0));
    return h;
}

struct RawDivRem {
    std::vector<mpz_class> q, r;
};

RawDivRem divrem_naive(const std::vector<mpz_class>& f,
                       const std::vector<mpz_class>& g, const Modulus& mod) {
    const std::size_t dg = g.size() - 1;
    RawDivRem out;
    out.r = f;
    out.q.assign(f.size() - dg, mpz_class(0));
    mpz_class t;
    for (std::size_t i = f.size(); i-- > dg;) {
        mpz_class c = out.r[i];
        if (c == 0) continue;
        out.q[i - dg] = c;
        for (std::size_t k = 0; k < dg; ++k) {
            if (g[k] == 0) continue;
            mod.mul(t, c, g[k]);
            mod.sub(out.r[i - dg + k], out.r[i - dg + k], t);
        }
        out.r[i] = 0;
    }
    out.r.resize(dg == 0 ? 1 : dg, mpz_class(0));
    return out;
}

RawDivRem divrem_newton(const std::vector<mpz_class>& f,
                        const std::vector<mpz_class>& g, const Modulus& mod) {
    const std::size_t dg = g.size() - 1;
    const std::size_t ell = f.size() - dg; // quotient length
    std::vector<mpz_class> grev(g.rbegin(), g.rend());
    std::vector<mpz_class> frev(f.rbegin(), f.rend());
    std::vector<mpz_class> inv = series_inverse(grev, mod, ell);
    std::vector<mpz_class> qrev = raw_mul_trunc(frev, inv, mod, ell);
    RawDivRem out;
    out.q.assign(qrev.rbegin(), qrev.rend());
    // r = f - q*g, degree < dg; the higher coefficients cancel exactly.
    std::vector<mpz_class> qg = raw_mul(out.q, g, mod);
    out.r.assign(dg == 0 ? 1 : dg, mpz_class(0));
    for (std::size_t i = 0; i < out.r.size() && i < f.size(); ++i) {
        mod.sub(out.r[i], f[i], i < qg.size() ? qg[i] : mpz_class(0));
    }
#ifndef NDEBUG
    for (std::size_t i = dg; i < f.size(); ++i) {
        assert(f[i] == qg[i]);
    }
#endif
    return out;
}

std::vector<mpz_class> chirp_chain(const mpz_class& alpha, const Modulus& mod,
                                   std::uint64_t count) {
    std::vector<mpz_class> res;
    res.reserve(count);
    if (count == 0) return res;
    res.emplace_back(1);
    mpz_class run = alpha; // alpha^t after t updates; C(t+1,2) = C(t,2) + t
    mpz_class next;
    for (std::uint64_t t = 1; t < count; ++t) {
        if (t == 1) {
            res.emplace_back(1); // C(1,2) = 0
            continue;
        }
        mod.mul(next, res.back(), run);
        res.emplace_back(std::move(next));
        mod.mul_inplace(run, alpha);
    }
    return res;
}

// Core of eval_geometric on raw coefficient vectors.
std::vector<mpz_class> eval_geometric_raw(const std::vector<mpz_class>& coeffs,
                                          const Modulus& mod, const mpz_class& alpha,
                                          std::uint64_t m) {
    const std::size_t n = coeffs.size() - 1;
    mpz_class alpha_inv;
    if (mpz_invert(alpha_inv.get_mpz_t(), alpha.get_mpz_t(),
                   mod.n().get_mpz_t()) == 0) {
        throw NonInvertibleError("eval_geometric: alpha is not a unit",
                                 mod.gcd_with(alpha));
    }
    const std::uint64_t L = std::max<std::uint64_t>(m, n + 2);
    std::vector<mpz_class> fwd = chirp_chain(alpha, mod, L);      // alpha^C(t,2)
    std::vector<mpz_class> bwd = chirp_chain(alpha_inv, mod, L);  // alpha^-C(t,2)

    // f'_j = alpha^C(-j,2) f_j = alpha^C(j+1,2) f_j.
    std::vector<mpz_class> fprime(n + 1);
    for (std::size_t j = 0; j <= n; ++j) mod.mul(fprime[j], coeffs[j], fwd[j + 1]);

    // G is the chirp x^n * sum_{k=-n}^{m-1} alpha^-C(k,2) x^k. The Laurent
    // shift by n lives in this one helper only.
    auto shifted = [n](std::int64_t k) { return static_cast<std::size_t>(k + (std::int64_t)n); };
    std::vector<mpz_class> G(n + m);
    for (std::int64_t k = -(std::int64_t)n; k < (std::int64_t)m; ++k) {
        G[shifted(k)] = k >= 0 ? bwd[(std::size_t)k] : bwd[(std::size_t)(-k) + 1];
    }

    std::vector<mpz_class> P = raw_mul(fprime, G, mod);
    std::vector<mpz_class> out(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        mod.mul(out[i], fwd[i], P[shifted((std::int64_t)i)]);
    }
    return out;
}

} // namespace

// ---- ModPoly ------------------------------------------------------------

ModPoly::ModPoly(std::vector<mpz_class> coeffs, Modulus m)
    : coeffs_(std::move(coeffs)), mod_(std::move(m)) {
    if (coeffs_.empty()) throw DomainError("polynomial needs at least one coefficient");
    for (auto& c : coeffs_) mod_.reduce(c);
    normalize(coeffs_);
}

ModPoly ModPoly::zero(const Modulus& m) { return ModPoly({mpz_class(0)}, m); }

ModPoly ModPoly::constant(const mpz_class& c, const Modulus& m) {
    return ModPoly({c}, m);
}

ModPoly ModPoly::linear_root(const ZnElement& v) {
    return ModPoly({-v.value(), mpz_class(1)}, v.modulus());
}

ZnElement ModPoly::coeff(std::size_t i) const {
    return ZnElement(i < coeffs_.size() ? coeffs_[i] : mpz_class(0), mod_);
}

bool operator==(const ModPoly& a, const ModPoly& b) {
    return a.mod_ == b.mod_ && a.coeffs_ == b.coeffs_;
}

ModPoly poly_mul(const ModPoly& f, const ModPoly& g) {
    if (f.modulus() != g.modulus()) throw DomainError("poly_mul: modulus mismatch");
    if (f.is_zero() || g.is_zero()) return ModPoly::zero(f.modulus());
    return ModPoly(raw_mul(f.coeffs(), g.coeffs(), f.modulus()), f.modulus());
}

ModPoly product_tree(const std::vector<mpz_class>& roots, const Modulus& m) {
    if (roots.empty()) throw DomainError("product_tree: empty input");
    std::vector<ModPoly> level;
    level.reserve(roots.size());
    for (const auto& v : roots) {
        level.push_back(ModPoly::linear_root(ZnElement(v, m)));
    }
    while (level.size() > 1) {
        std::vector<ModPoly> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(poly_mul(level[i], level[i + 1]));
        }
        if (level.size() & 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return std::move(level.front());
}

ModPoly product_tree(const std::vector<ZnElement>& v) {
    if (v.empty()) throw DomainError("product_tree: empty input");
    const Modulus& m = v.front().modulus();
    std::vector<mpz_class> roots;
    roots.reserve(v.size());
    for (const auto& e : v) {
        if (e.modulus() != m) throw DomainError("product_tree: modulus mismatch");
        roots.push_back(e.value());
    }
    return product_tree(roots, m);
}

std::vector<ZnElement> eval_geometric(const ModPoly& f, const ZnElement& alpha,
                                      std::uint64_t m) {
    if (m == 0) throw DomainError("eval_geometric: m must be >= 1");
    if (f.modulus() != alpha.modulus()) throw DomainError("eval_geometric: modulus mismatch");
    std::vector<mpz_class> vals =
        eval_geometric_raw(f.coeffs(), f.modulus(), alpha.value(), m);
    std::vector<ZnElement> out;
    out.reserve(m);
    for (auto& v : vals) out.emplace_back(std::move(v), f.modulus());
    return out;
}

void eval_geometric_blocked(const ModPoly& f, const ZnElement& alpha,
                            std::uint64_t m, std::uint64_t block,
                            const std::function<bool(std::uint64_t, const mpz_class&)>& sink) {
    if (m == 0) throw DomainError("eval_geometric_blocked: m must be >= 1");
    if (block == 0) block = 1;
    if (f.modulus() != alpha.modulus()) throw DomainError("eval_geometric_blocked: modulus mismatch");
    const Modulus& mod = f.modulus();
    std::vector<mpz_class> cur = f.coeffs();
    ZnElement delta = modpow(alpha, mpz_class(block));
    std::uint64_t base = 0;
    mpz_class scale;
    while (base < m) {
        std::uint64_t bm = std::min<std::uint64_t>(block, m - base);
        std::vector<mpz_class> vals = eval_geometric_raw(cur, mod, alpha.value(), bm);
        for (std::uint64_t i = 0; i < bm; ++i) {
            if (!sink(base + i, vals[i])) return;
        }
        base += bm;
        if (base < m) {
            // shift the window: coefficients of f(alpha^block * x)
            scale = 1;
            for (std::size_t j = 1; j < cur.size(); ++j) {
                mod.mul_inplace(scale, delta.value());
                mod.mul_inplace(cur[j], scale);
            }
        }
    }
}

std::vector<ZnElement> multipoint_eval(const ModPoly& f,
                                       const std::vector<ZnElement>& points) {
    if (points.empty()) throw DomainError("multipoint_eval: empty points");
    const Modulus& mod = f.modulus();
    std::vector<std::vector<ModPoly>> tree;
    {
        std::vector<ModPoly> leaves;
        leaves.reserve(points.size());
        for (const auto& p : points) {
            if (p.modulus() != mod) throw DomainError("multipoint_eval: modulus mismatch");
            leaves.push_back(ModPoly::linear_root(p));
        }
        tree.push_back(std::move(leaves));
    }
    while (tree.back().size() > 1) {
        const auto& prev = tree.back();
        std::vector<ModPoly> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2) {
            next.push_back(poly_mul(prev[i], prev[i + 1]));
        }
        if (prev.size() & 1) next.push_back(prev.back());
        tree.push_back(std::move(next));
    }

    std::vector<ModPoly> cur{poly_divrem(f, tree.back()[0]).second};
    for (std::size_t level = tree.size() - 1; level-- > 0;) {
        std::vector<ModPoly> next;
        next.reserve(tree[level].size());
        for (std::size_t j = 0; j < tree[level].size(); ++j) {
            next.push_back(poly_divrem(cur[j / 2], tree[level][j]).second);
        }
        cur = std::move(next);
    }

    std::vector<ZnElement> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.emplace_back(cur[i].coeffs()[0], mod);
    }
    return out;
}

std::pair<ModPoly, ModPoly> poly_divrem(const ModPoly& f, const ModPoly& g) {
    if (f.modulus() != g.modulus()) throw DomainError("poly_divrem: modulus mismatch");
    if (g.is_zero() || !g.is_monic()) throw DomainError("poly_divrem: divisor must be monic");
    if (f.is_zero() || f.degree() < g.degree()) {
        return {ModPoly::zero(f.modulus()), f};
    }
    const std::size_t dg = g.degree();
    const std::size_t ell = f.degree() - dg + 1;
    RawDivRem raw = (static_cast<std::uint64_t>(ell) * dg <= 16384)
                        ? divrem_naive(f.coeffs(), g.coeffs(), f.modulus())
                        : divrem_newton(f.coeffs(), g.coeffs(), f.modulus());
    return {ModPoly(std::move(raw.q), f.modulus()),
            ModPoly(std::move(raw.r), f.modulus())};
}

std::vector<ZnElement> chirp_powers(const ZnElement& alpha, std::uint64_t count) {
    std::vector<mpz_class> chain =
        chirp_chain(alpha.value(), alpha.modulus(), count);
    std::vector<ZnElement> out;
    out.reserve(chain.size());
    for (auto& v : chain) out.emplace_back(std::move(v), alpha.modulus());
    return out;
}

} // namespace onefifth
