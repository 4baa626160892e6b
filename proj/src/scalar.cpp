#include "galindex/scalar.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace galindex {

std::ostream& operator<<(std::ostream& os, const Val& v) {
    if (v.exact)
        return os << v.value;
    return os << ">=" << v.value;
}

mpz_class prime_power(unsigned long p, unsigned long e) {
    struct Entry {
        unsigned long p = 0;
        unsigned long e = 0;
        bool set = false;
        mpz_class v;
    };
    thread_local Entry cache[4];
    Entry& c = cache[e & 3u];
    if (c.set && c.p == p && c.e == e)
        return c.v;
    mpz_ui_pow_ui(c.v.get_mpz_t(), p, e);
    c.p = p;
    c.e = e;
    c.set = true;
    return c.v;
}

mpz_class modular_inverse(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotInvertibleToPrecision("no inverse modulo " + m.get_str());
    return r;
}

PadicScalar::PadicScalar(unsigned long p, unsigned prec, const mpz_class& v)
    : p_(p), prec_(prec), denom_(0), mant_(v) {
    if (p < 2)
        throw InputError("prime must be >= 2");
    if (prec == 0)
        throw InputError("precision must be positive");
    canonicalize();
}

PadicScalar::PadicScalar(unsigned long p, unsigned prec, long v)
    : PadicScalar(p, prec, mpz_class(v)) {}

PadicScalar PadicScalar::with_denominator(unsigned long p, unsigned prec,
                                          const mpz_class& v, unsigned denom_exp) {
    if (denom_exp >= prec)
        throw InputError("denominator exponent exceeds precision: no significant digits");
    PadicScalar r(p, prec, v);
    r.denom_ = denom_exp;
    r.canonicalize();
    return r;
}

PadicScalar PadicScalar::zero(unsigned long p, unsigned prec) {
    return PadicScalar(p, prec, 0L);
}

PadicScalar PadicScalar::one(unsigned long p, unsigned prec) {
    return PadicScalar(p, prec, 1L);
}

void PadicScalar::canonicalize() {
    if ((long)prec_ - (long)denom_ <= 0)
        throw PrecisionExhausted("scalar with no significant digits");
    const mpz_class mod = prime_power(p_, prec_);
    mpz_fdiv_r(mant_.get_mpz_t(), mant_.get_mpz_t(), mod.get_mpz_t());
    if (mant_ == 0) {
        // zero to precision: fold the denominator into the precision
        prec_ -= denom_;
        denom_ = 0;
        return;
    }
    while (denom_ > 0 && mpz_divisible_ui_p(mant_.get_mpz_t(), p_)) {
        mpz_divexact_ui(mant_.get_mpz_t(), mant_.get_mpz_t(), p_);
        --denom_;
        --prec_;
    }
}

void PadicScalar::check_same_prime(const PadicScalar& o) const {
    if (p_ != o.p_)
        throw PrimeMismatch("operands live over different primes");
}

Val PadicScalar::valuation() const {
    if (mant_ == 0)
        return Val::at_least(effective_precision());
    const mpz_class pz((unsigned long)p_);
    mpz_class stripped;
    const unsigned long v =
        mpz_remove(stripped.get_mpz_t(), mant_.get_mpz_t(), pz.get_mpz_t());
    // 0 < mant < p^prec, so v < prec and the valuation is certain
    return Val::certain((long)v - (long)denom_);
}

PadicScalar PadicScalar::operator-() const {
    PadicScalar r(*this);
    if (r.mant_ != 0)
        r.mant_ = prime_power(p_, prec_) - r.mant_;
    return r;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_same_prime(o);
    const unsigned m = std::max(denom_, o.denom_);
    const long eff = std::min(effective_precision(), o.effective_precision());
    if (eff <= 0)
        throw PrecisionExhausted("sum has no significant digits");
    mpz_class u = mant_;
    if (m > denom_)
        u *= prime_power(p_, m - denom_);
    mpz_class v = o.mant_;
    if (m > o.denom_)
        v *= prime_power(p_, m - o.denom_);
    PadicScalar r;
    r.p_ = p_;
    r.prec_ = (unsigned)eff + m;
    r.denom_ = m;
    r.mant_ = u + v;
    r.canonicalize();
    return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
    return *this + (-o);
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_same_prime(o);
    // mantissa product known mod p^min(precA + v(mantB), precB + v(mantA));
    // a mantissa that is zero to precision contributes its full precision
    const Val va = valuation();
    const Val vb = o.valuation();
    const long va_int = va.value + (long)denom_;
    const long vb_int = vb.value + (long)o.denom_;
    const long prec = std::min((long)prec_ + vb_int, (long)o.prec_ + va_int);
    PadicScalar r;
    r.p_ = p_;
    r.prec_ = (unsigned)prec;
    r.denom_ = denom_ + o.denom_;
    r.mant_ = mant_ * o.mant_;
    r.canonicalize();
    return r;
}

PadicScalar PadicScalar::inv() const {
    if (mant_ == 0)
        throw NotInvertibleToPrecision("inverse of zero to precision");
    const Val v = valuation();
    // canonical form: either denom_ > 0 with unit mantissa, or denom_ == 0
    // and the mantissa carries the whole valuation
    const long v_int = v.value + (long)denom_;
    const long unit_prec = (long)prec_ - v_int;
    mpz_class w = mant_;
    if (v_int > 0)
        mpz_divexact(w.get_mpz_t(), w.get_mpz_t(),
                     prime_power(p_, (unsigned long)v_int).get_mpz_t());
    const mpz_class winv = modular_inverse(w, prime_power(p_, (unsigned long)unit_prec));
    PadicScalar r;
    r.p_ = p_;
    if (v.value >= 0) {
        r.denom_ = (unsigned)v.value;
        r.prec_ = (unsigned)(unit_prec + v.value);
        r.mant_ = winv;
    } else {
        r.denom_ = 0;
        r.prec_ = (unsigned)(unit_prec - v.value);
        r.mant_ = winv * prime_power(p_, (unsigned long)(-v.value));
    }
    r.canonicalize();
    return r;
}

PadicScalar PadicScalar::shift(long s) const {
    if (s == 0)
        return *this;
    PadicScalar r(*this);
    if (s > 0) {
        r.mant_ *= prime_power(p_, (unsigned long)s);
        r.prec_ += (unsigned)s;
    } else {
        r.denom_ += (unsigned)(-s);
    }
    r.canonicalize();
    return r;
}

PadicScalar PadicScalar::truncated(long new_eff) const {
    if (new_eff > effective_precision())
        throw InputError("cannot truncate upward");
    PadicScalar r(*this);
    r.prec_ = (unsigned)(new_eff + (long)denom_);
    r.canonicalize();
    return r;
}

bool PadicScalar::eq_to_min_precision(const PadicScalar& o) const {
    check_same_prime(o);
    const long eff = std::min(effective_precision(), o.effective_precision());
    if (eff <= 0)
        return true;
    const PadicScalar d = *this - o;
    const Val v = d.valuation();
    return !v.exact || v.value >= eff;
}

std::string PadicScalar::to_string() const {
    std::ostringstream os;
    os << mant_.get_str();
    if (denom_ > 0)
        os << "/" << p_ << "^" << denom_;
    os << " + O(" << p_ << "^" << effective_precision() << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const PadicScalar& x) {
    return os << x.to_string();
}

} // namespace galindex
