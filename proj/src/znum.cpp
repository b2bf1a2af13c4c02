#include "onefifth/znum.hpp"

#include "onefifth/stats.hpp"

namespace onefifth {

Modulus::Modulus(mpz_class n) {
    if (n < 2) throw DomainError("modulus must be >= 2");
    bits_ = mpz_sizeinbase(n.get_mpz_t(), 2);
    n_ = std::make_shared<const mpz_class>(std::move(n));
}

void Modulus::reduce(mpz_class& x) const {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n_->get_mpz_t());
}

void Modulus::mul(mpz_class& out, const mpz_class& a, const mpz_class& b) const {
    ++stats::counters().modmul;
    mpz_mul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), n_->get_mpz_t());
}

void Modulus::mul_inplace(mpz_class& acc, const mpz_class& b) const {
    ++stats::counters().modmul;
    mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), b.get_mpz_t());
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), n_->get_mpz_t());
}

void Modulus::add(mpz_class& out, const mpz_class& a, const mpz_class& b) const {
    mpz_add(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (out >= *n_) out -= *n_;
}

void Modulus::sub(mpz_class& out, const mpz_class& a, const mpz_class& b) const {
    mpz_sub(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (out < 0) out += *n_;
}

mpz_class Modulus::gcd_with(const mpz_class& x) const {
    ++stats::counters().gcd;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n_->get_mpz_t(), x.get_mpz_t());
    return g;
}

ZnElement::ZnElement(mpz_class value, Modulus m)
    : value_(std::move(value)), mod_(std::move(m)) {
    mod_.reduce(value_);
}

ZnElement ZnElement::pow(const mpz_class& e) const { return modpow(*this, e); }

ZnElement ZnElement::inverse() const {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(), mod_.n().get_mpz_t()) == 0) {
        throw NonInvertibleError("element is not a unit", mod_.gcd_with(value_));
    }
    return ZnElement(std::move(inv), mod_);
}

ZnElement operator*(const ZnElement& a, const ZnElement& b) {
    if (a.mod_ != b.mod_) throw DomainError("modulus mismatch");
    mpz_class out;
    a.mod_.mul(out, a.value_, b.value_);
    return ZnElement(std::move(out), a.mod_);
}

ZnElement operator+(const ZnElement& a, const ZnElement& b) {
    if (a.mod_ != b.mod_) throw DomainError("modulus mismatch");
    mpz_class out;
    a.mod_.add(out, a.value_, b.value_);
    return ZnElement(std::move(out), a.mod_);
}

ZnElement operator-(const ZnElement& a, const ZnElement& b) {
    if (a.mod_ != b.mod_) throw DomainError("modulus mismatch");
    mpz_class out;
    a.mod_.sub(out, a.value_, b.value_);
    return ZnElement(std::move(out), a.mod_);
}

bool operator==(const ZnElement& a, const ZnElement& b) {
    return a.mod_ == b.mod_ && a.value_ == b.value_;
}

bool operator!=(const ZnElement& a, const ZnElement& b) { return !(a == b); }

unsigned long lg(const mpz_class& n) {
    if (n < 1) throw DomainError("lg requires n >= 1");
    if (n == 1) return 1;
    mpz_class t = n - 1;
    return mpz_sizeinbase(t.get_mpz_t(), 2);
}

namespace {

// Largest z with z^v <= A, A >= 0, v >= 1. Newton iteration on integers,
// then a correction loop that makes the bracket exact.
mpz_class nth_root_floor(const mpz_class& A, unsigned v) {
    if (A == 0) return 0;
    if (v == 1) return A;
    // Initial overestimate: 2^ceil(bits/v) >= A^(1/v).
    std::size_t bits = mpz_sizeinbase(A.get_mpz_t(), 2);
    mpz_class z = 1;
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), (bits + v - 1) / v);
    mpz_class zv, next, t;
    while (true) {
        // next = ((v-1)*z + A / z^(v-1)) / v
        mpz_pow_ui(zv.get_mpz_t(), z.get_mpz_t(), v - 1);
        mpz_fdiv_q(t.get_mpz_t(), A.get_mpz_t(), zv.get_mpz_t());
        next = ((v - 1) * z + t) / v;
        if (next >= z) break;
        z = next;
    }
    // Two-sided correction; Newton from above lands at most a step away.
    mpz_pow_ui(zv.get_mpz_t(), z.get_mpz_t(), v);
    while (zv > A) {
        --z;
        mpz_pow_ui(zv.get_mpz_t(), z.get_mpz_t(), v);
    }
    mpz_class z1 = z + 1;
    mpz_pow_ui(zv.get_mpz_t(), z1.get_mpz_t(), v);
    while (zv <= A) {
        z = z1;
        ++z1;
        mpz_pow_ui(zv.get_mpz_t(), z1.get_mpz_t(), v);
    }
    return z;
}

void iroot_check_args(const mpz_class& x, const mpz_class& y, unsigned u, unsigned v) {
    if (y == 0) throw DomainError("iroot: y must be positive");
    if (y < 0 || x < 0) throw DomainError("iroot: x, y must be nonnegative");
    if (u == 0 || v == 0) throw DomainError("iroot: u, v must be positive");
}

} // namespace

mpz_class iroot_floor(const mpz_class& x, const mpz_class& y, unsigned u, unsigned v) {
    iroot_check_args(x, y, u, v);
    // z <= (x/y)^(u/v)  <=>  z^v * y^u <= x^u  <=>  z^v <= floor(x^u / y^u).
    mpz_class xu, yu, A;
    mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
    mpz_pow_ui(yu.get_mpz_t(), y.get_mpz_t(), u);
    mpz_fdiv_q(A.get_mpz_t(), xu.get_mpz_t(), yu.get_mpz_t());
    return nth_root_floor(A, v);
}

mpz_class iroot_ceil(const mpz_class& x, const mpz_class& y, unsigned u, unsigned v) {
    iroot_check_args(x, y, u, v);
    mpz_class xu, yu, A;
    mpz_pow_ui(xu.get_mpz_t(), x.get_mpz_t(), u);
    mpz_pow_ui(yu.get_mpz_t(), y.get_mpz_t(), u);
    mpz_fdiv_q(A.get_mpz_t(), xu.get_mpz_t(), yu.get_mpz_t());
    mpz_class z = nth_root_floor(A, v);
    // Exact only if z^v * y^u == x^u (compare against x^u, not the quotient).
    mpz_class zv;
    mpz_pow_ui(zv.get_mpz_t(), z.get_mpz_t(), v);
    if (zv * yu == xu) return z;
    return z + 1;
}

std::optional<mpz_class> is_perfect_square(const mpz_class& x) {
    if (x < 0) return std::nullopt;
    if (mpz_perfect_square_p(x.get_mpz_t()) == 0) return std::nullopt;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
    return s;
}

ZnElement modpow(const ZnElement& x, const mpz_class& e) {
    ++stats::counters().modpow;
    const Modulus& m = x.modulus();
    mpz_class out;
    if (e >= 0) {
        mpz_powm(out.get_mpz_t(), x.value().get_mpz_t(), e.get_mpz_t(),
                 m.n().get_mpz_t());
        return ZnElement(std::move(out), m);
    }
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), x.value().get_mpz_t(), m.n().get_mpz_t()) == 0) {
        throw NonInvertibleError("modpow with negative exponent needs a unit base",
                                 m.gcd_with(x.value()));
    }
    mpz_class pos = -e;
    mpz_powm(out.get_mpz_t(), inv.get_mpz_t(), pos.get_mpz_t(), m.n().get_mpz_t());
    return ZnElement(std::move(out), m);
}

BezoutTriple gcd_ext(const mpz_class& x, const mpz_class& y) {
    if (x == 0 && y == 0) throw DomainError("gcd_ext(0, 0) is undefined");
    ++stats::counters().gcd;
    BezoutTriple t;
    mpz_gcdext(t.g.get_mpz_t(), t.u.get_mpz_t(), t.v.get_mpz_t(), x.get_mpz_t(),
               y.get_mpz_t());
    return t;
}

mpz_class gcd_counted(const mpz_class& a, const mpz_class& b) {
    ++stats::counters().gcd;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

} // namespace onefifth
