#include "galindex/tower.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace galindex {

namespace {

/* ---- small F_p[x] helpers for the unramified-layer checks ---- */

using FpPoly = std::vector<unsigned long>; // little-endian, coefficients mod p

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

unsigned long fp_inv(unsigned long a, unsigned long p) {
    const mpz_class r = modular_inverse(mpz_class(a), mpz_class(p));
    return r.get_ui();
}

FpPoly fp_mod(FpPoly a, const FpPoly& f, unsigned long p) {
    fp_trim(a);
    const size_t df = f.size() - 1;
    const unsigned long lead_inv = fp_inv(f[df], p);
    while (a.size() > df) {
        const size_t da = a.size() - 1;
        const unsigned long c = (a[da] * lead_inv) % p;
        for (size_t i = 0; i <= df; ++i) {
            const unsigned long sub = (c * f[i]) % p;
            const size_t k = da - df + i;
            a[k] = (a[k] + p - sub) % p;
        }
        fp_trim(a);
        if (a.empty())
            break;
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, unsigned long p) {
    if (a.empty() || b.empty())
        return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return fp_mod(std::move(r), f, p);
}

// x^(p^k) mod f
FpPoly fp_frobenius_power(const FpPoly& f, unsigned long p, unsigned k) {
    FpPoly x{0, 1};
    FpPoly r = fp_mod(x, f, p);
    for (unsigned step = 0; step < k; ++step) {
        // raise to the p-th power by square and multiply
        FpPoly acc{1};
        FpPoly base = r;
        unsigned long e = p;
        while (e) {
            if (e & 1)
                acc = fp_mulmod(acc, base, f, p);
            base = fp_mulmod(base, base, f, p);
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, unsigned long p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool fp_is_irreducible(const FpPoly& f, unsigned long p) {
    const size_t n = f.size() - 1;
    if (n == 0)
        return false;
    if (n == 1)
        return true;
    // x^(p^n) == x mod f
    FpPoly t = fp_frobenius_power(f, p, (unsigned)n);
    FpPoly x{0, 1};
    FpPoly diff = t;
    diff.resize(std::max(diff.size(), x.size()), 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(diff);
    if (!diff.empty())
        return false;
    // gcd(x^(p^(n/q)) - x, f) must be trivial for every prime q | n
    for (size_t q = 2; q <= n; ++q) {
        if (n % q != 0)
            continue;
        bool q_prime = true;
        for (size_t d = 2; d * d <= q; ++d)
            if (q % d == 0)
                q_prime = false;
        if (!q_prime)
            continue;
        FpPoly s = fp_frobenius_power(f, p, (unsigned)(n / q));
        s.resize(std::max(s.size(), x.size()), 0);
        s[1] = (s[1] + p - 1) % p;
        fp_trim(s);
        FpPoly g = fp_gcd(f, s, p);
        if (g.size() > 1)
            return false;
    }
    return true;
}

/* ---- recursive flat-vector arithmetic ---- */

std::vector<PadicScalar> add_flat(const std::vector<PadicScalar>& a,
                                  const std::vector<PadicScalar>& b, bool subtract) {
    std::vector<PadicScalar> r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r.push_back(subtract ? a[i] - b[i] : a[i] + b[i]);
    return r;
}

} // namespace

/* ---- TowerElement ---- */

TowerElement::TowerElement(const FieldTower* tower, unsigned level,
                           std::vector<PadicScalar> flat)
    : tower_(tower), level_(level), flat_(std::move(flat)) {
    if (flat_.size() != tower->dim(level))
        throw InputError("coefficient vector length does not match the field degree");
}

void TowerElement::check_compatible(const TowerElement& o) const {
    if (tower_ != o.tower_)
        throw PrimeMismatch("elements of different towers");
    if (level_ != o.level_)
        throw InputError("elements of different fields in the tower");
}

bool TowerElement::is_zero_to_precision() const {
    for (const auto& c : flat_)
        if (!c.is_zero_to_precision())
            return false;
    return true;
}

bool TowerElement::is_integral() const {
    for (const auto& c : flat_)
        if (!c.is_integral())
            return false;
    return true;
}

namespace {

Val val_rec(const FieldTower& tw, unsigned level, const PadicScalar* a) {
    if (level == 0)
        return a[0].valuation();
    const auto& layer = tw.layer(level - 1);
    const unsigned sub = tw.dim(level - 1);
    const bool eis = layer.kind == LayerKind::eisenstein;
    long best_c = LONG_MAX, best_b = LONG_MAX;
    for (unsigned i = 0; i < layer.degree; ++i) {
        const Val v = val_rec(tw, level - 1, a + (size_t)i * sub);
        const long cand = eis ? (long)layer.degree * v.value + (long)i : v.value;
        if (v.exact)
            best_c = std::min(best_c, cand);
        else
            best_b = std::min(best_b, cand);
    }
    if (best_c < best_b)
        return Val::certain(best_c);
    return Val::at_least(std::min(best_c, best_b));
}

long eff_rec(const FieldTower& tw, unsigned level, const PadicScalar* a) {
    if (level == 0)
        return a[0].effective_precision();
    const auto& layer = tw.layer(level - 1);
    const unsigned sub = tw.dim(level - 1);
    const bool eis = layer.kind == LayerKind::eisenstein;
    long best = LONG_MAX;
    for (unsigned i = 0; i < layer.degree; ++i) {
        const long e = eff_rec(tw, level - 1, a + (size_t)i * sub);
        best = std::min(best, eis ? (long)layer.degree * e + (long)i : e);
    }
    return best;
}

std::vector<PadicScalar> mul_rec(const FieldTower& tw, unsigned level,
                                 const PadicScalar* a, const PadicScalar* b) {
    if (level == 0)
        return {a[0] * b[0]};
    const auto& layer = tw.layer(level - 1);
    const unsigned d = layer.degree;
    const size_t sub = tw.dim(level - 1);

    // schoolbook product into 2d-1 blocks; accumulators start from the first
    // contribution so that precision is never artificially capped
    std::vector<std::vector<PadicScalar>> t(2 * (size_t)d - 1);
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            std::vector<PadicScalar> prod =
                mul_rec(tw, level - 1, a + (size_t)i * sub, b + (size_t)j * sub);
            auto& acc = t[(size_t)i + j];
            if (acc.empty())
                acc = std::move(prod);
            else
                acc = add_flat(acc, prod, false);
        }
    // reduce modulo the defining polynomial: g^d = -(c_0 + ... + c_{d-1} g^{d-1})
    for (size_t m = 2 * (size_t)d - 2; m >= d; --m) {
        for (unsigned j = 0; j < d; ++j) {
            std::vector<PadicScalar> prod =
                mul_rec(tw, level - 1, t[m].data(), layer.poly[j].coeffs().data());
            t[m - d + j] = add_flat(t[m - d + j], prod, true);
        }
        if (m == d)
            break;
    }
    std::vector<PadicScalar> out;
    out.reserve((size_t)d * sub);
    for (unsigned i = 0; i < d; ++i)
        for (size_t k = 0; k < sub; ++k)
            out.push_back(t[i][k]);
    return out;
}

} // namespace

Val TowerElement::valuation() const {
    return val_rec(*tower_, level_, flat_.data());
}

long TowerElement::effective_precision() const {
    return eff_rec(*tower_, level_, flat_.data());
}

TowerElement TowerElement::operator-() const {
    std::vector<PadicScalar> r;
    r.reserve(flat_.size());
    for (const auto& c : flat_)
        r.push_back(-c);
    return TowerElement(tower_, level_, std::move(r));
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    check_compatible(o);
    return TowerElement(tower_, level_, add_flat(flat_, o.flat_, false));
}

TowerElement TowerElement::operator-(const TowerElement& o) const {
    check_compatible(o);
    return TowerElement(tower_, level_, add_flat(flat_, o.flat_, true));
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
    check_compatible(o);
    return TowerElement(tower_, level_, mul_rec(*tower_, level_, flat_.data(), o.flat_.data()));
}

TowerElement TowerElement::inv() const {
    if (level_ == 0)
        return TowerElement(tower_, 0, {flat_[0].inv()});
    if (is_zero_to_precision())
        throw NotInvertibleToPrecision("inverse of zero to precision in tower field");
    // solve (multiplication-by-x matrix) y = e_0 over the field below
    const unsigned d = tower_->layer(level_ - 1).degree;
    const TowerElement g = tower_->generator(level_);
    Matrix<TowerElement> m(d, d, tower_->zero(level_ - 1));
    TowerElement xg = *this;
    for (unsigned j = 0; j < d; ++j) {
        const std::vector<TowerElement> col = xg.blocks(level_ - 1);
        for (unsigned i = 0; i < d; ++i)
            m.at(i, j) = col[i];
        if (j + 1 < d)
            xg = xg * g;
    }
    std::vector<TowerElement> rhs(d, tower_->zero(level_ - 1));
    rhs[0] = tower_->one(level_ - 1);
    std::vector<TowerElement> y;
    try {
        y = solve_linear(m, rhs);
    } catch (const PrecisionExhausted&) {
        throw NotInvertibleToPrecision("element not invertible at this precision");
    }
    std::vector<PadicScalar> out;
    out.reserve(flat_.size());
    for (const auto& blk : y)
        for (const auto& c : blk.coeffs())
            out.push_back(c);
    return TowerElement(tower_, level_, std::move(out));
}

TowerElement TowerElement::shift(long s) const {
    if (s == 0)
        return *this;
    if (level_ == 0)
        return TowerElement(tower_, 0, {flat_[0].shift(s)});
    const TowerElement base =
        s > 0 ? tower_->uniformizer(level_) : tower_->uniformizer_inverse(level_);
    return *this * base.pow((unsigned long)(s > 0 ? s : -s));
}

TowerElement TowerElement::pow(unsigned long k) const {
    TowerElement acc = one_like();
    TowerElement base = *this;
    while (k) {
        if (k & 1)
            acc = acc * base;
        base = k > 1 ? base * base : base;
        k >>= 1;
    }
    return acc;
}

TowerElement TowerElement::zero_like() const {
    return tower_->zero(level_);
}

TowerElement TowerElement::one_like() const {
    return tower_->one(level_);
}

TowerElement TowerElement::embedded(unsigned higher_level) const {
    if (higher_level < level_)
        throw InputError("cannot embed into a smaller field");
    if (higher_level == level_)
        return *this;
    std::vector<PadicScalar> out = flat_;
    out.resize(tower_->dim(higher_level), PadicScalar::zero(tower_->prime(), tower_->precision()));
    return TowerElement(tower_, higher_level, std::move(out));
}

std::vector<TowerElement> TowerElement::blocks(unsigned sub_level) const {
    if (sub_level > level_)
        throw InputError("blocks: sub_level above element level");
    const size_t sub = tower_->dim(sub_level);
    const size_t count = flat_.size() / sub;
    std::vector<TowerElement> out;
    out.reserve(count);
    for (size_t b = 0; b < count; ++b)
        out.push_back(TowerElement(
            tower_, sub_level,
            std::vector<PadicScalar>(flat_.begin() + b * sub, flat_.begin() + (b + 1) * sub)));
    return out;
}

bool TowerElement::eq_to_min_precision(const TowerElement& o) const {
    check_compatible(o);
    const TowerElement d = *this - o;
    return d.is_zero_to_precision();
}

std::vector<mpz_class> TowerElement::stable_key() const {
    constexpr long kDigits = 16;
    std::vector<mpz_class> key;
    key.reserve(flat_.size());
    const mpz_class mod = prime_power(tower_->prime(), kDigits);
    for (const auto& c : flat_) {
        if (!c.is_integral())
            throw InputError("stable ordering key requires integral coordinates");
        if (c.effective_precision() < kDigits)
            throw PrecisionExhausted("not enough digits for a stable ordering key");
        mpz_class m;
        mpz_fdiv_r(m.get_mpz_t(), c.mantissa().get_mpz_t(), mod.get_mpz_t());
        key.push_back(m);
    }
    return key;
}

bool stable_key_less(const TowerElement& a, const TowerElement& b) {
    const auto ka = a.stable_key();
    const auto kb = b.stable_key();
    for (size_t i = 0; i < ka.size() && i < kb.size(); ++i) {
        if (ka[i] != kb[i])
            return ka[i] < kb[i];
    }
    return ka.size() < kb.size();
}

std::string TowerElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < flat_.size(); ++i) {
        if (i)
            os << ", ";
        os << flat_[i].to_string();
    }
    os << "]";
    return os.str();
}

/* ---- FieldTower ---- */

unsigned FieldTower::dim(unsigned level) const {
    if (level > layers_.size())
        throw InputError("level beyond tower height");
    unsigned d = 1;
    for (unsigned i = 0; i < level; ++i)
        d *= layers_[i].degree;
    return d;
}

unsigned FieldTower::e_abs(unsigned level) const {
    unsigned e = 1;
    for (unsigned i = 0; i < level; ++i)
        if (layers_[i].kind == LayerKind::eisenstein)
            e *= layers_[i].degree;
    return e;
}

unsigned FieldTower::f_abs(unsigned level) const {
    unsigned f = 1;
    for (unsigned i = 0; i < level; ++i)
        if (layers_[i].kind == LayerKind::unramified)
            f *= layers_[i].degree;
    return f;
}

TowerElement FieldTower::zero(unsigned level) const {
    return TowerElement(this, level,
                        std::vector<PadicScalar>(dim(level), PadicScalar::zero(p_, prec_)));
}

TowerElement FieldTower::one(unsigned level) const {
    return constant(level, 1);
}

TowerElement FieldTower::constant(unsigned level, long v) const {
    auto flat = std::vector<PadicScalar>(dim(level), PadicScalar::zero(p_, prec_));
    flat[0] = PadicScalar(p_, prec_, v);
    return TowerElement(this, level, std::move(flat));
}

TowerElement FieldTower::from_scalar(unsigned level, const PadicScalar& s) const {
    auto flat = std::vector<PadicScalar>(dim(level), PadicScalar::zero(p_, prec_));
    flat[0] = s;
    return TowerElement(this, level, std::move(flat));
}

TowerElement FieldTower::from_tree(unsigned level, const CoeffTree& t) const {
    if (t.leaf) {
        const PadicScalar s = t.denom_exp == 0
                                  ? PadicScalar(p_, prec_, t.mantissa)
                                  : PadicScalar::with_denominator(p_, prec_, t.mantissa, t.denom_exp);
        return from_scalar(level, s);
    }
    if (level == 0)
        throw InputError("nested coefficient given for a base-field scalar");
    const unsigned d = layers_[level - 1].degree;
    if (t.children.size() > d)
        throw InputError("coefficient vector longer than the layer degree");
    std::vector<PadicScalar> flat(dim(level), PadicScalar::zero(p_, prec_));
    const size_t sub = dim(level - 1);
    for (size_t i = 0; i < t.children.size(); ++i) {
        const TowerElement blk = from_tree(level - 1, t.children[i]);
        for (size_t k = 0; k < sub; ++k)
            flat[i * sub + k] = blk.coeffs()[k];
    }
    return TowerElement(this, level, std::move(flat));
}

TowerElement FieldTower::generator(unsigned level) const {
    if (level == 0 || level > layers_.size())
        throw InputError("generator: no layer at this level");
    std::vector<PadicScalar> flat(dim(level), PadicScalar::zero(p_, prec_));
    flat[dim(level - 1)] = PadicScalar::one(p_, prec_);
    return TowerElement(this, level, std::move(flat));
}

TowerElement FieldTower::uniformizer(unsigned level) const {
    for (unsigned i = level; i-- > 0;)
        if (layers_[i].kind == LayerKind::eisenstein)
            return generator(i + 1).embedded(level);
    return constant(level, (long)p_);
}

TowerElement FieldTower::uniformizer_inverse(unsigned level) const {
    return pi_inverse_[level].embedded(level);
}

std::vector<TowerElement> FieldTower::residue_representatives(unsigned level) const {
    // flat positions whose multi-index vanishes at every Eisenstein layer
    std::vector<size_t> positions;
    const unsigned n = dim(level);
    for (size_t idx = 0; idx < n; ++idx) {
        size_t rest = idx;
        bool ok = true;
        for (unsigned i = 0; i < level; ++i) {
            const size_t digit = rest % layers_[i].degree;
            rest /= layers_[i].degree;
            if (digit != 0 && layers_[i].kind == LayerKind::eisenstein)
                ok = false;
        }
        if (ok)
            positions.push_back(idx);
    }
    std::vector<TowerElement> reps;
    const size_t count_digits = positions.size();
    size_t total = 1;
    for (size_t i = 0; i < count_digits; ++i)
        total *= p_;
    reps.reserve(total);
    for (size_t code = 0; code < total; ++code) {
        std::vector<PadicScalar> flat(n, PadicScalar::zero(p_, prec_));
        size_t rest = code;
        for (size_t i = 0; i < count_digits; ++i) {
            const long digit = (long)(rest % p_);
            rest /= p_;
            if (digit != 0)
                flat[positions[i]] = PadicScalar(p_, prec_, digit);
        }
        reps.push_back(TowerElement(this, level, std::move(flat)));
    }
    return reps;
}

namespace {

TowerElement eval_poly(const std::vector<TowerElement>& coeffs, const TowerElement& x) {
    TowerElement acc = coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;)
        acc = acc * x + coeffs[i];
    return acc;
}

std::vector<TowerElement> derivative(const std::vector<TowerElement>& coeffs) {
    std::vector<TowerElement> d;
    d.reserve(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) {
        const TowerElement k = coeffs[i].tower()->constant(coeffs[i].level(), (long)i);
        d.push_back(coeffs[i] * k);
    }
    return d;
}

TowerElement newton_polish(const std::vector<TowerElement>& poly,
                           const std::vector<TowerElement>& dpoly, TowerElement s) {
    for (int iter = 0; iter < 64; ++iter) {
        const TowerElement fx = eval_poly(poly, s);
        if (fx.is_zero_to_precision())
            return s;
        const TowerElement fpx = eval_poly(dpoly, s);
        s = s - fx * fpx.inv();
    }
    throw PrecisionExhausted("Newton iteration failed to converge");
}

} // namespace

std::optional<TowerElement> FieldTower::find_one_root(
    unsigned level, const std::vector<TowerElement>& poly) const {
    const std::vector<TowerElement> dpoly = derivative(poly);
    const std::vector<TowerElement> reps = residue_representatives(level);
    const TowerElement pi = uniformizer(level);

    std::vector<TowerElement> frontier = reps;
    TowerElement pipow = pi;
    const long cap = 2L * (long)prec_ * (long)e_abs(level) + 16;
    for (long depth = 1; depth <= cap && !frontier.empty(); ++depth) {
        if (frontier.size() > 4096)
            throw PrecisionExhausted("root search frontier exploded");
        std::vector<TowerElement> next;
        for (const auto& s : frontier) {
            const TowerElement fx = eval_poly(poly, s);
            const Val vf = fx.valuation();
            const TowerElement fpx = eval_poly(dpoly, s);
            const Val vfp = fpx.valuation();
            if (!vf.exact) {
                // f(s) vanishes to the available precision
                if (vfp.exact && vf.value > 2 * vfp.value)
                    return newton_polish(poly, dpoly, s);
                throw PrecisionExhausted("cannot separate a root at this precision");
            }
            if (vfp.exact && vf.value > 2 * vfp.value)
                return newton_polish(poly, dpoly, s);
            // a truncation of a true root satisfies
            // v(f(s)) >= min(v(f'(s)) + depth, 2 depth)
            if (vf.value < std::min(vfp.value + depth, 2 * depth))
                continue;
            for (const auto& digit : reps)
                next.push_back(s + digit * pipow);
        }
        frontier = std::move(next);
        if (!frontier.empty())
            pipow = pipow * pi;
    }
    if (!frontier.empty())
        throw PrecisionExhausted("root search exceeded its depth cap");
    return std::nullopt;
}

std::vector<TowerElement> FieldTower::roots_of(unsigned level,
                                               const std::vector<TowerElement>& poly) const {
    if (poly.size() < 2)
        throw InputError("roots_of needs degree >= 1");
    if (!(poly.back() - one(level)).is_zero_to_precision())
        throw InputError("roots_of expects a monic polynomial");
    const std::vector<TowerElement> dpoly = derivative(poly);

    // one root at a time, deflating by (x - r) so that conjugates with a
    // common expansion prefix are still found
    std::vector<TowerElement> roots;
    std::vector<TowerElement> current = poly;
    while (current.size() >= 2) {
        const std::optional<TowerElement> found = find_one_root(level, current);
        if (!found)
            break;
        // polish against the original polynomial, then guard against
        // rediscovering an earlier root through deflation noise
        const TowerElement r = newton_polish(poly, dpoly, *found);
        for (const auto& known : roots)
            if ((known - r).is_zero_to_precision())
                throw PrecisionExhausted("deflated search repeated a root");
        roots.push_back(r);
        // synthetic division: current = current / (x - r)
        std::vector<TowerElement> quot(current.size() - 1, zero(level));
        TowerElement carry = current.back();
        for (size_t i = current.size() - 1; i-- > 0;) {
            quot[i] = carry;
            carry = current[i] + carry * r;
        }
        current = std::move(quot);
    }
    std::sort(roots.begin(), roots.end(), stable_key_less);
    return roots;
}

void FieldTower::append_unramified(const std::vector<CoeffTree>& poly) {
    if (!layers_.empty())
        throw InputError("unramified layers are only supported at the bottom of the tower");
    if (poly.size() < 2)
        throw InputError("layer polynomial needs degree >= 1");
    const unsigned d = (unsigned)poly.size() - 1;
    FpPoly residue(poly.size(), 0);
    for (size_t i = 0; i < poly.size(); ++i) {
        if (!poly[i].leaf || poly[i].denom_exp != 0)
            throw InputError("unramified defining polynomial must have integer coefficients");
        mpz_class m = poly[i].mantissa % (long)p_;
        if (m < 0)
            m += (long)p_;
        residue[i] = m.get_ui();
    }
    if (residue.back() != 1 || poly.back().mantissa != 1)
        throw InputError("defining polynomial must be monic");
    if (!fp_is_irreducible(residue, p_))
        throw NotIrreducible("polynomial is reducible modulo p");
    Layer layer{LayerKind::unramified, d, {}, {}};
    for (unsigned i = 0; i < d; ++i)
        layer.poly.push_back(from_tree(0, poly[i]));
    layers_.push_back(std::move(layer));
}

void FieldTower::append_eisenstein(const std::vector<CoeffTree>& poly) {
    if (poly.size() < 2)
        throw InputError("layer polynomial needs degree >= 1");
    const unsigned base = levels();
    const TowerElement lead = from_tree(base, poly.back());
    if (!(lead - one(base)).is_zero_to_precision())
        throw InputError("defining polynomial must be monic");
    std::vector<TowerElement> coeffs;
    for (size_t i = 0; i + 1 < poly.size(); ++i)
        coeffs.push_back(from_tree(base, poly[i]));
    append_eisenstein_elems(std::move(coeffs));
}

void FieldTower::append_eisenstein_elems(std::vector<TowerElement> nonleading) {
    const unsigned d = (unsigned)nonleading.size();
    for (unsigned i = 0; i < d; ++i) {
        if (!nonleading[i].is_integral())
            throw NotEisenstein("coefficients must be integral");
        const Val v = nonleading[i].valuation();
        if (i == 0) {
            if (!v.exact || v.value != 1)
                throw NotEisenstein("constant term must have valuation exactly 1");
        } else if (v.value < 1) {
            // exact low valuation fails the criterion; an uncertified bound
            // below 1 cannot confirm it either
            throw NotEisenstein("non-leading coefficients must have positive valuation");
        }
    }
    layers_.push_back(Layer{LayerKind::eisenstein, d, std::move(nonleading), {}});
}

std::shared_ptr<FieldTower> FieldTower::clone() const {
    auto t = std::shared_ptr<FieldTower>(new FieldTower(p_, prec_));
    for (const auto& layer : layers_) {
        Layer copy{layer.kind, layer.degree, {}, {}};
        for (const auto& c : layer.poly)
            copy.poly.push_back(TowerElement(t.get(), c.level(), c.coeffs()));
        for (const auto& c : layer.generator_conjugates)
            copy.generator_conjugates.push_back(TowerElement(t.get(), c.level(), c.coeffs()));
        t->layers_.push_back(std::move(copy));
    }
    return t;
}

void FieldTower::finalize() {
    pi_inverse_.clear();
    for (unsigned level = 0; level <= levels(); ++level)
        pi_inverse_.push_back(uniformizer(level).inv());
}

std::string FieldTower::describe() const {
    std::ostringstream os;
    os << "Q_" << p_;
    for (const auto& layer : layers_)
        os << " -> " << (layer.kind == LayerKind::unramified ? "unramified" : "eisenstein")
           << "(deg " << layer.degree << ")";
    return os.str();
}

TowerPtr make_tower(unsigned long p, const std::vector<LayerDesc>& layers, unsigned precision) {
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
        throw InputError("p must be prime");
    if (precision < 2)
        throw InputError("precision too small");
    auto t = std::shared_ptr<FieldTower>(new FieldTower(p, precision));
    unsigned total = 1;
    for (const auto& l : layers) {
        if (l.poly.size() < 2)
            throw InputError("layer polynomial needs degree >= 1");
        total *= (unsigned)(l.poly.size() - 1);
        if (total > 64)
            throw InputError("tower degree too large");
        if (l.kind == LayerKind::unramified)
            t->append_unramified(l.poly);
        else
            t->append_eisenstein(l.poly);
    }
    t->finalize();
    return t;
}

TowerPtr extend_eisenstein(const TowerPtr& base, const std::vector<CoeffTree>& poly) {
    auto t = base->clone();
    t->append_eisenstein(poly);
    t->finalize();
    return t;
}

TowerPtr kummer_extension(const TowerPtr& base, unsigned long p) {
    if (p != base->prime())
        throw PrimeMismatch("Kummer layer degree must equal the residue characteristic");
    const unsigned k = base->levels();
    // p-th roots of unity in the base field
    std::vector<TowerElement> cyclo(p, base->one(k));
    const std::vector<TowerElement> mu = base->roots_of(k, cyclo);
    if (mu.empty())
        throw NoPthRootsOfUnity("the base field contains no primitive p-th root of unity");
    auto t = base->clone();
    {
        const TowerElement pi_k = t->uniformizer(k);
        std::vector<TowerElement> coeffs;
        coeffs.push_back(-pi_k);
        for (unsigned long i = 1; i < p; ++i)
            coeffs.push_back(t->zero(k));
        t->append_eisenstein_elems(std::move(coeffs));
    }
    t->finalize();
    // record sigma^j(pi_L) = zeta^j pi_L exactly
    const TowerElement zeta =
        TowerElement(t.get(), mu.front().level(), mu.front().coeffs()).embedded(k + 1);
    const TowerElement g = t->generator(k + 1);
    std::vector<TowerElement> conj;
    TowerElement zpow = t->one(k + 1);
    for (unsigned long j = 0; j < p; ++j) {
        conj.push_back(zpow * g);
        zpow = zpow * zeta;
    }
    t->layers_.back().generator_conjugates = std::move(conj);
    return t;
}

std::vector<long> default_unramified_poly(unsigned long p, unsigned degree) {
    if (degree == 0)
        throw InputError("degree must be positive");
    size_t total = 1;
    for (unsigned i = 0; i < degree; ++i)
        total *= p;
    for (size_t code = 0; code < total; ++code) {
        FpPoly f(degree + 1, 0);
        size_t rest = code;
        for (unsigned i = 0; i < degree; ++i) {
            f[i] = rest % p;
            rest /= p;
        }
        f[degree] = 1;
        if (fp_is_irreducible(f, p)) {
            std::vector<long> out(degree + 1);
            for (unsigned i = 0; i <= degree; ++i)
                out[i] = (long)f[i];
            return out;
        }
    }
    throw InvariantViolation("no irreducible polynomial found"); // unreachable
}

} // namespace galindex
