#include "galindex/ramification.hpp"

#include <algorithm>
#include <sstream>

namespace galindex {

namespace {

// i_G(g) - 1 in the classical notation: the minimal valuation displacement
// min_j v_L((g - 1) b_j); membership in G_i is displacement >= i + 1
long displacement_of(const GaloisLatticeModel& m, unsigned k, long scan_cap) {
    long best_c = scan_cap + 2; // anything above the cap is treated alike
    long best_b = scan_cap + 2;
    for (unsigned j = 0; j < m.n; ++j) {
        std::vector<TowerElement> col;
        col.reserve(m.n);
        for (unsigned i = 0; i < m.n; ++i) {
            TowerElement e = m.action[k].at(i, j);
            if (i == j)
                e = e - e.one_like();
            col.push_back(e);
        }
        const Val v = m.coordinate_valuation(col);
        if (v.exact)
            best_c = std::min(best_c, v.value);
        else
            best_b = std::min(best_b, v.value);
    }
    if (best_b <= scan_cap && best_b <= best_c)
        throw PrecisionExhausted("ramification displacement not certified below the scan cap");
    return std::min(best_c, scan_cap + 2);
}

long scan_cap_for(const GaloisLatticeModel& m) {
    const long e_L = (long)(m.e_K() * m.e_rel);
    const long p = (long)m.prime();
    // all jumps in scope are bounded by e_L p/(p-1); add slack
    return e_L * p / (p - 1) + 2;
}

} // namespace

Filtration filtration(const GaloisLatticeModel& m) {
    const long cap = scan_cap_for(m);
    Filtration f;
    f.displacement.assign(m.n, 0);
    for (unsigned k = 1; k < m.n; ++k) {
        f.displacement[k] = displacement_of(m, k, cap);
        if (f.displacement[k] > cap + 1)
            throw InvariantViolation("a group element moves no integer: duplicate automorphism");
    }
    for (long i = 0;; ++i) {
        std::vector<unsigned> members{0};
        for (unsigned k = 1; k < m.n; ++k)
            if (f.displacement[k] >= i + 1)
                members.push_back(k);
        const bool trivial = members.size() == 1;
        f.groups.push_back(std::move(members));
        if (trivial)
            break;
        if (i > cap)
            throw InvariantViolation("filtration failed to terminate below the scan cap");
    }
    return f;
}

namespace {

void validate_profile(const RamificationProfile& pr) {
    if (!pr.wild())
        return;
    if (pr.n == pr.p && pr.e_rel == pr.p) {
        const long lhs = pr.t * (long)(pr.p - 1);
        const long rhs = (long)pr.e_K * (long)pr.p;
        if (pr.t < 1 || lhs > rhs)
            throw InvariantViolation("jump outside the admissible range");
        if (pr.a == 0 && lhs != rhs)
            throw InvariantViolation("jump divisible by p must be maximal");
        if ((long)pr.e_K < (long)pr.a + (long)(pr.p - 1) * pr.t0)
            throw InvariantViolation("e_K >= a + (p-1) t0 fails");
        if (!pr.almost_maximal &&
            (long)pr.e_K == (long)pr.a + (long)(pr.p - 1) * pr.t0)
            throw InvariantViolation("equality e_K = a + (p-1) t0 forces almost-maximal");
    }
}

void fill_jump_fields(RamificationProfile& pr) {
    if (pr.t >= 1) {
        pr.a = (unsigned)(pr.t % (long)pr.p);
        pr.t0 = (pr.t - (long)pr.a) / (long)pr.p;
        pr.maximal = pr.a == 0;
        // e_K p/(p-1) - t <= 1
        pr.almost_maximal =
            (long)pr.e_K * (long)pr.p <= (pr.t + 1) * (long)(pr.p - 1);
    } else {
        pr.a = 0;
        pr.t0 = 0;
        pr.maximal = false;
        pr.almost_maximal = false;
    }
}

} // namespace

RamificationProfile profile(const GaloisLatticeModel& m) {
    RamificationProfile pr;
    pr.p = m.prime();
    pr.e_K = m.e_K();
    pr.f_K = m.f_K();
    pr.n = m.n;
    pr.e_rel = m.e_rel;
    pr.f_rel = m.f_rel;

    const Filtration f = filtration(m);
    const auto trivial_at = [&](size_t i) {
        return i >= f.groups.size() || f.groups[i].size() == 1;
    };
    pr.unramified = trivial_at(0);
    pr.tame = trivial_at(1);
    pr.weakly_ramified = trivial_at(2);

    if (pr.unramified) {
        pr.t = -1;
    } else {
        // jump of the inertia subgroup; in scope it is cyclic, so every
        // nontrivial inertia element shares one displacement value
        long disp = -1;
        for (unsigned k = 1; k < m.n; ++k) {
            if (f.displacement[k] < 1)
                continue;
            if (disp == -1)
                disp = f.displacement[k];
            else if (disp != f.displacement[k])
                throw InvalidProfile("inertia subgroup has several jumps: out of scope");
        }
        pr.t = disp - 1;
    }
    fill_jump_fields(pr);
    validate_profile(pr);
    return pr;
}

RamificationProfile profile_from_invariants(unsigned long p, unsigned e_K, unsigned f_K,
                                            long t) {
    if (p < 2 || e_K == 0 || f_K == 0)
        throw InvalidJump("invalid invariants");
    if (t < 1 || t * (long)(p - 1) > (long)e_K * (long)p)
        throw InvalidJump("jump outside 1 <= t <= e_K p/(p-1)");
    if (t % (long)p == 0 && t * (long)(p - 1) != (long)e_K * (long)p)
        throw InvalidJump("a jump divisible by p must equal e_K p/(p-1)");
    RamificationProfile pr;
    pr.p = p;
    pr.e_K = e_K;
    pr.f_K = f_K;
    pr.n = (unsigned)p;
    pr.e_rel = (unsigned)p;
    pr.f_rel = 1;
    pr.t = t;
    pr.unramified = false;
    pr.tame = false;
    pr.weakly_ramified = t <= 1;
    fill_jump_fields(pr);
    validate_profile(pr);
    return pr;
}

} // namespace galindex
