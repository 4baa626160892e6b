#ifndef GALINDEX_SCALAR_HPP
#define GALINDEX_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "galindex/errors.hpp"

namespace galindex {

/* Valuation of a truncated element. Either an exact integer, or only a
 * lower bound because every stored digit vanishes ("zero to precision").
 * The bound case is a value, not an error: callers decide whether the
 * available information suffices. */
struct Val {
    long value = 0;
    bool exact = true;

    static Val certain(long v) { return Val{v, true}; }
    static Val at_least(long v) { return Val{v, false}; }

    bool operator==(const Val& o) const { return value == o.value && exact == o.exact; }
};

std::ostream& operator<<(std::ostream& os, const Val& v);

/* Truncated p-adic scalar.
 *
 * Represents the value p^(-denom) * mant where mant is an integer known
 * modulo p^prec, so the value itself is known modulo p^(prec - denom).
 * Invariants:
 *   - 0 <= mant < p^prec;
 *   - denom <= prec;
 *   - canonical form: denom == 0, or mant is nonzero and not divisible by p.
 * Arithmetic is exact modulo the tracked precision; every operation
 * computes the precision of its result from the precisions of its inputs.
 * Values are immutable and safe to share across threads.
 */
class PadicScalar {
public:
    PadicScalar() = default;

    // integer value v, known modulo p^prec
    PadicScalar(unsigned long p, unsigned prec, const mpz_class& v);
    PadicScalar(unsigned long p, unsigned prec, long v);

    // value v / p^denom_exp
    static PadicScalar with_denominator(unsigned long p, unsigned prec,
                                        const mpz_class& v, unsigned denom_exp);
    static PadicScalar zero(unsigned long p, unsigned prec);
    static PadicScalar one(unsigned long p, unsigned prec);

    unsigned long prime() const { return p_; }
    unsigned precision() const { return prec_; }
    unsigned denom_exp() const { return denom_; }
    const mpz_class& mantissa() const { return mant_; }

    // the value is known modulo p^effective_precision()
    long effective_precision() const { return (long)prec_ - (long)denom_; }

    bool is_zero_to_precision() const { return mant_ == 0; }
    bool is_integral() const { return denom_ == 0; }

    Val valuation() const;

    PadicScalar operator-() const;
    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;

    // multiplicative inverse; throws NotInvertibleToPrecision on zero-to-precision
    PadicScalar inv() const;

    // multiply by p^s (s may be negative)
    PadicScalar shift(long s) const;

    // truncate to effective precision new_eff (must not exceed the current one)
    PadicScalar truncated(long new_eff) const;

    // ring constants carrying this element's prime and base precision
    PadicScalar zero_like() const { return zero(p_, prec_ > denom_ ? prec_ - denom_ : 1); }
    PadicScalar one_like() const { return one(p_, prec_ > denom_ ? prec_ - denom_ : 1); }

    // equal modulo the smaller of the two effective precisions
    bool eq_to_min_precision(const PadicScalar& o) const;

    // residue digits of the integral part, least significant first (for
    // canonical ordering and test output); requires is_integral()
    std::string to_string() const;

private:
    unsigned long p_ = 0;
    unsigned prec_ = 0;   // mantissa known modulo p^prec_
    unsigned denom_ = 0;  // value = mant_ / p^denom_
    mpz_class mant_;

    void canonicalize();
    void check_same_prime(const PadicScalar& o) const;
};

std::ostream& operator<<(std::ostream& os, const PadicScalar& x);

// p^e as an mpz, with a per-thread cache for the common (p, e)
mpz_class prime_power(unsigned long p, unsigned long e);

// r with a*r == 1 mod m (m a prime power); throws NotInvertibleToPrecision
mpz_class modular_inverse(const mpz_class& a, const mpz_class& m);

} // namespace galindex

#endif
