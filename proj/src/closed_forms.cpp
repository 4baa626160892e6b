#include "galindex/closed_forms.hpp"

#include <numeric>
#include <sstream>

namespace galindex {

namespace {

long checked_pow(unsigned long p, unsigned e) {
    long r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (long)1e17 / (long)p)
            throw InputError("exponent too large for exact evaluation");
        r *= (long)p;
    }
    return r;
}

long vp_of(unsigned long p, unsigned long n) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q)
            continue;
        r -= r / q;
        while (n % q == 0)
            n /= q;
    }
    if (n > 1)
        r -= r / n;
    return r;
}

unsigned long multiplicative_order(unsigned long p, unsigned long s) {
    if (s == 1)
        return 1;
    unsigned long r = p % s;
    unsigned long ord = 1;
    while (r != 1) {
        r = (r * p) % s;
        if (++ord > s)
            throw GcdViolation("p is not invertible modulo s");
    }
    return ord;
}

void require_cyclic_p(const RamificationProfile& pr) {
    if (!pr.cyclic_degree_p())
        throw InvalidProfile("formula needs a ramified cyclic extension of degree p");
}

} // namespace

long NuData::nu_sum() const {
    return std::accumulate(nu.begin(), nu.end(), 0L);
}

long NuData::n_sum() const {
    return std::accumulate(n.begin(), n.end(), 0L);
}

NuData nu_data(const RamificationProfile& pr) {
    require_cyclic_p(pr);
    if (pr.a == 0)
        throw InvalidProfile("nu data is only defined for a != 0");
    const long p = (long)pr.p;
    NuData d;
    d.p = pr.p;
    d.nu.resize(p);
    for (long i = 0; i < p; ++i)
        d.nu[i] = ((long)pr.a + i * pr.t) / p;
    d.mu = 0;
    d.i_min = 0;
    for (long i = 0; i < p; ++i) {
        const long g = i * (long)pr.e_K - (p - 1) * d.nu[i];
        if (g < d.mu) {
            d.mu = g;
            d.i_min = (unsigned)i;
        }
    }
    d.n.resize(p);
    for (long i = 0; i < p; ++i) {
        long best = d.nu[i]; // j = 0 term
        for (long j = 1; i + j <= p - 1; ++j)
            best = std::min(best, d.nu[i + j] - d.nu[j]);
        d.n[i] = best;
    }
    return d;
}

long minimal_index_cyclic_p(const RamificationProfile& pr) {
    require_cyclic_p(pr);
    if (pr.a == 0) {
        const long twice = (long)pr.p * (long)pr.e_K * (long)pr.f_K;
        if (twice % 2 != 0)
            throw InvariantViolation("[L:Q_p] must be even in the maximally ramified case");
        return twice / 2;
    }
    const NuData d = nu_data(pr);
    return (long)pr.f_K * (d.nu_sum() + d.mu);
}

FreenessResult freeness_cyclic_p(const RamificationProfile& pr) {
    require_cyclic_p(pr);
    FreenessResult r;
    if (pr.a == 0) {
        r.v_p_assoc_index = (long)pr.p * (long)pr.e_K * (long)pr.f_K / 2;
    } else {
        const NuData d = nu_data(pr);
        r.v_p_assoc_index = (long)pr.f_K * d.n_sum();
    }
    r.free = r.v_p_assoc_index == minimal_index_cyclic_p(pr);
    return r;
}

GeneratorRecipe minimal_generator_recipe(const RamificationProfile& pr) {
    require_cyclic_p(pr);
    GeneratorRecipe g;
    g.a = pr.a;
    std::ostringstream os;
    if (pr.a == 0) {
        g.unit_sum = true;
        os << "1";
        for (unsigned long i = 1; i < pr.p; ++i)
            os << " + pi_L^" << i;
    } else {
        const NuData d = nu_data(pr);
        if (d.mu == 0) {
            os << "pi_L^" << pr.a;
        } else {
            g.two_term = true;
            g.i_min = d.i_min;
            g.nu_i_min = d.nu[d.i_min];
            os << "pi_L^" << pr.a << " + pi_K^-" << d.nu[d.i_min] << " (sigma-1)^" << d.i_min
               << " pi_L^" << pr.a;
        }
    }
    g.text = os.str();
    return g;
}

Rational make_rational(long num, long den) {
    if (den == 0)
        throw InputError("zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    const long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

GeneralBound general_bound(unsigned long p, unsigned e_rel, unsigned f_L,
                           unsigned deg_L_Qp, unsigned deg_L_K) {
    if (e_rel == 0 || f_L == 0 || deg_L_Qp == 0 || deg_L_K == 0)
        throw InputError("degrees must be positive");
    if (deg_L_Qp % deg_L_K != 0 || deg_L_K % e_rel != 0)
        throw InputError("inconsistent degrees");
    const long v = vp_of(p, deg_L_K);
    GeneralBound b;
    b.bound = make_rational(2L * (long)f_L * ((long)e_rel - 1) + (long)deg_L_Qp * v, 2);
    b.easy_bound = make_rational((long)deg_L_Qp * (2 + v), 2);
    return b;
}

long cyclotomic_disc_valuation(unsigned long p, unsigned r, unsigned long s) {
    if (s == 0 || std::gcd(p, s) != 1)
        throw GcdViolation("s must be coprime to p");
    if (r == 0)
        return 0;
    const long fs = (long)multiplicative_order(p, s);
    return checked_pow(p, r - 1) * ((long)p * r - r - 1) * fs;
}

long minimal_index_abs_abelian(unsigned long p, unsigned f_L, unsigned n, unsigned long d) {
    if (p == 2)
        throw InvalidProfile(
            "the absolutely abelian formula assumes p odd; for p = 2 the associated "
            "order need not be maximal and the formula must be modified");
    if (f_L == 0 || d == 0 || std::gcd(p, d) != 1)
        throw InvalidProfile("need f_L >= 1 and d coprime to p");
    const long pn = checked_pow(p, n);
    const long reduced = (long)f_L * (long)d * (pn - 1) / ((long)p - 1);

    // full discriminant sum over the divisors p^r s of p^n d with r >= 1
    long sum = 0;
    for (unsigned r = 1; r <= n; ++r)
        for (unsigned long s = 1; s <= d; ++s) {
            if (d % s != 0)
                continue;
            const long fs = (long)multiplicative_order(p, s);
            const long disc = cyclotomic_disc_valuation(p, r, s);
            sum += (long)euler_phi(s) * disc / fs;
        }
    const long raw = (long)d * pn * (long)n - sum;
    if (raw % 2 != 0 || ((long)f_L * raw) / 2 != reduced)
        throw InvariantViolation("discriminant sum disagrees with the reduced formula");
    return reduced;
}

long maximal_order_index_cyclic(unsigned long p, unsigned f_K, unsigned e_K, unsigned n,
                                unsigned long d, bool zeta_p_in_K) {
    if (f_K == 0 || e_K == 0 || d == 0 || std::gcd(p, d) != 1)
        throw InputError("invalid group or base-field data");
    if (e_K == 1) {
        // K unramified over Q_p: Wedderburn factors are cyclotomic extensions,
        // each divisor p^r s of |G| contributes phi(s) p^{r-1}(pr-r-1)
        const long order = checked_pow(p, n) * (long)d;
        long sum = 0;
        for (unsigned r = 1; r <= n; ++r)
            for (unsigned long s = 1; s <= d; ++s) {
                if (d % s != 0)
                    continue;
                const long fs = (long)multiplicative_order(p, s);
                sum += (long)euler_phi(s) * cyclotomic_disc_valuation(p, r, s) / fs;
            }
        const long raw = order * (long)n - sum;
        if (((long)f_K * raw) % 2 != 0)
            throw InvariantViolation("maximal-order index is not an integer");
        return (long)f_K * raw / 2;
    }
    if (zeta_p_in_K && n == 1 && d == 1) {
        // all characters of C_p take values in K, every Wedderburn factor is K
        const long prod = (long)f_K * (long)p * (long)e_K;
        if (prod % 2 != 0)
            throw InvariantViolation("maximal-order index is not an integer");
        return prod / 2;
    }
    throw UnsupportedBase(
        "no closed form for the maximal-order index over a ramified base without "
        "p-th roots of unity");
}

std::map<unsigned long, long> global_abelian_valuation(
    unsigned long degree,
    const std::map<unsigned long, std::pair<unsigned, unsigned long>>& ram) {
    if (degree == 0)
        throw InvalidData("degree must be positive");
    std::map<unsigned long, long> out;
    for (const auto& [p, nd] : ram) {
        const auto [n, d] = nd;
        if (p == 2)
            throw InvalidData(
                "ramified p = 2 is not supported: the absolutely abelian formula "
                "assumes p odd");
        if (d == 0 || std::gcd(p, d) != 1)
            throw InvalidData("tame part must be coprime to p");
        const long pn = checked_pow(p, n);
        const long e = pn * (long)d;
        if (degree % (unsigned long)e != 0)
            throw InvalidData("ramification index must divide the degree");
        const long num = (long)degree * (pn - 1);
        if (num % (pn * ((long)p - 1)) != 0)
            throw InvalidData("global valuation is not an integer");
        const long v = num / (pn * ((long)p - 1));
        // local-global recombination for every admissible inertia degree
        const unsigned long cofactor = degree / (unsigned long)e;
        for (unsigned long f = 1; f <= cofactor; ++f) {
            if (cofactor % f != 0)
                continue;
            const long local = minimal_index_abs_abelian(p, (unsigned)f, n, d);
            if ((long)(cofactor / f) * local != v)
                throw InvariantViolation("local-global recombination failed");
        }
        out[p] = v;
    }
    return out;
}

IndexReport closed_form_report(const RamificationProfile& pr) {
    IndexReport rep;
    rep.profile = pr;
    const unsigned f_L = pr.f_K * pr.f_rel;
    const unsigned deg_L_Qp = pr.e_K * pr.e_rel * f_L;
    const GeneralBound b = general_bound(pr.p, pr.e_rel, f_L, deg_L_Qp, pr.n);
    rep.bound_general = b.bound;
    rep.bound_easy = b.easy_bound;

    if (pr.tame) {
        // free of rank one over the group ring itself
        rep.v_p_m = 0;
        rep.v_p_assoc_index = 0;
        rep.free_over_assoc = true;
        rep.witness = "any integral normal basis generator of index one";
        return rep;
    }
    if (pr.cyclic_degree_p()) {
        rep.v_p_m = minimal_index_cyclic_p(pr);
        const FreenessResult fr = freeness_cyclic_p(pr);
        rep.v_p_assoc_index = fr.v_p_assoc_index;
        rep.free_over_assoc = fr.free;
        rep.witness = minimal_generator_recipe(pr).text;
        // maximal-order index where the paper's discriminant data applies:
        // unramified base, or zeta_p guaranteed in K (a = 0 forces it, and
        // -1 always lies in K for p = 2)
        if (pr.e_K == 1)
            rep.v_p_maximal_order_index = maximal_order_index_cyclic(pr.p, pr.f_K, 1, 1, 1, false);
        else if (pr.a == 0 || pr.p == 2)
            rep.v_p_maximal_order_index =
                maximal_order_index_cyclic(pr.p, pr.f_K, pr.e_K, 1, 1, true);
    }
    return rep;
}

} // namespace galindex
