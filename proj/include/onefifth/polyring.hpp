#pragma once

#include "onefifth/znum.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace onefifth {

/// Dense polynomial over Z_N. Coefficient i belongs to x^i; the stored form
/// is normalized (no trailing zero coefficients; the zero polynomial is the
/// single coefficient 0).
class ModPoly {
public:
    ModPoly(std::vector<mpz_class> coeffs, Modulus m);

    static ModPoly zero(const Modulus& m);
    static ModPoly constant(const mpz_class& c, const Modulus& m);
    /// x - v.
    static ModPoly linear_root(const ZnElement& v);

    std::size_t degree() const { return coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    bool is_monic() const { return coeffs_.back() == 1; }

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const Modulus& modulus() const { return mod_; }
    ZnElement coeff(std::size_t i) const;

    friend bool operator==(const ModPoly& a, const ModPoly& b);

private:
    std::vector<mpz_class> coeffs_;
    Modulus mod_;
};

/// f*g by Kronecker substitution: both operands are packed into single big
/// integers at a fixed slot width wide enough that no convolution sum can
/// carry across slots, multiplied once, and unpacked with per-slot reduction.
ModPoly poly_mul(const ModPoly& f, const ModPoly& g);

/// Monic (x - v_1)...(x - v_n) by pairwise level-by-level merging. An odd
/// node at a level is promoted unchanged, so the schedule is deterministic.
ModPoly product_tree(const std::vector<ZnElement>& v);
ModPoly product_tree(const std::vector<mpz_class>& roots, const Modulus& m);

/// [f(1), f(alpha), ..., f(alpha^(m-1))] through the chirp identity
/// i*j = C(i,2) + C(-j,2) - C(i-j,2): one convolution of the prepared
/// coefficients against the chirp sequence, read off at offset deg(f).
std::vector<ZnElement> eval_geometric(const ModPoly& f, const ZnElement& alpha,
                                      std::uint64_t m);

/// Same values as eval_geometric, delivered through `sink(i, value)` in
/// blocks of at most `block` points so memory stays proportional to the
/// block, not to m. Rescales coefficients by alpha^block between blocks and
/// runs the same kernel. sink returns false to stop early.
void eval_geometric_blocked(const ModPoly& f, const ZnElement& alpha,
                            std::uint64_t m, std::uint64_t block,
                            const std::function<bool(std::uint64_t, const mpz_class&)>& sink);

/// [f(p_1), ..., f(p_k)] via a subproduct tree over the points and a
/// top-down remainder tree.
std::vector<ZnElement> multipoint_eval(const ModPoly& f,
                                       const std::vector<ZnElement>& points);

/// Division with remainder by a monic divisor: f = q*g + r, deg r < deg g.
/// Naive long division below a degree crossover, Newton power-series
/// inversion above it.
std::pair<ModPoly, ModPoly> poly_divrem(const ModPoly& f, const ModPoly& g);

/// [alpha^C(t,2)] for t = 0..count-1, built by the running recurrence
/// C(t+1,2) = C(t,2) + t. Negative upper indices reduce to this chain via
/// C(-j,2) = C(j+1,2).
std::vector<ZnElement> chirp_powers(const ZnElement& alpha, std::uint64_t count);

} // namespace onefifth
