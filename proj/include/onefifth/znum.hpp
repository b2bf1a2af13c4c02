#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace onefifth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violation (bad argument, mismatched moduli, empty input).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured search-size cap was exceeded; the CLI maps this to exit code 3.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

/// Raised when an operation needs x to be a unit mod N and it is not.
/// Carries gcd(x, N); when 1 < gcd < N the caller holds a factor of N.
class NonInvertibleError : public Error {
public:
    NonInvertibleError(const std::string& what, mpz_class witness)
        : Error(what), gcd_(std::move(witness)) {}

    const mpz_class& witness_gcd() const { return gcd_; }

private:
    mpz_class gcd_;
};

/// Shared ring context Z_N, N >= 2. Cheap to copy.
///
/// The residue helpers operate on caller-owned mpz values so hot loops can
/// reuse storage; they also feed the bench operation counters.
class Modulus {
public:
    explicit Modulus(mpz_class n);

    const mpz_class& n() const { return *n_; }

    /// Bit length of N.
    std::size_t bit_length() const { return bits_; }

    bool operator==(const Modulus& other) const {
        return n_ == other.n_ || *n_ == *other.n_;
    }
    bool operator!=(const Modulus& other) const { return !(*this == other); }

    void reduce(mpz_class& x) const;

    /// out = a*b mod N. out may not alias a or b.
    void mul(mpz_class& out, const mpz_class& a, const mpz_class& b) const;
    /// acc = acc*b mod N.
    void mul_inplace(mpz_class& acc, const mpz_class& b) const;
    void add(mpz_class& out, const mpz_class& a, const mpz_class& b) const;
    void sub(mpz_class& out, const mpz_class& a, const mpz_class& b) const;

    /// gcd(x, N), counted.
    mpz_class gcd_with(const mpz_class& x) const;

private:
    std::shared_ptr<const mpz_class> n_;
    std::size_t bits_;
};

/// A residue in [0, N) together with its ring.
class ZnElement {
public:
    ZnElement(mpz_class value, Modulus m);

    const mpz_class& value() const { return value_; }
    const Modulus& modulus() const { return mod_; }

    ZnElement pow(const mpz_class& e) const;
    ZnElement inverse() const;

    friend ZnElement operator*(const ZnElement& a, const ZnElement& b);
    friend ZnElement operator+(const ZnElement& a, const ZnElement& b);
    friend ZnElement operator-(const ZnElement& a, const ZnElement& b);
    friend bool operator==(const ZnElement& a, const ZnElement& b);
    friend bool operator!=(const ZnElement& a, const ZnElement& b);

private:
    mpz_class value_;
    Modulus mod_;
};

/// ceil(log2 n) for n >= 2, and 1 for n = 1. Exact, from the binary
/// representation (bit length of n-1).
unsigned long lg(const mpz_class& n);

/// floor((x/y)^(u/v)): the unique z >= 0 with z^v * y^u <= x^u < (z+1)^v * y^u.
/// Integer Newton iteration with a two-sided correction; no floating point.
mpz_class iroot_floor(const mpz_class& x, const mpz_class& y, unsigned u, unsigned v);
/// ceil((x/y)^(u/v)).
mpz_class iroot_ceil(const mpz_class& x, const mpz_class& y, unsigned u, unsigned v);

/// The root if x is a perfect square, otherwise nullopt.
std::optional<mpz_class> is_perfect_square(const mpz_class& x);

/// x^e mod N. Negative e goes through the modular inverse of x and raises
/// NonInvertibleError (carrying gcd(x, N)) when x is not a unit.
ZnElement modpow(const ZnElement& x, const mpz_class& e);

struct BezoutTriple {
    mpz_class g, u, v; // u*x + v*y == g == gcd(|x|, |y|)
};

BezoutTriple gcd_ext(const mpz_class& x, const mpz_class& y);

/// gcd(|a|, |b|), counted toward the bench gcd counter.
mpz_class gcd_counted(const mpz_class& a, const mpz_class& b);

} // namespace onefifth
