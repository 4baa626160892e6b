#ifndef GALINDEX_CLOSED_FORMS_HPP
#define GALINDEX_CLOSED_FORMS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galindex/ramification.hpp"

namespace galindex {

/* Integer data controlling the minimal index, the associated order and
 * freeness for wild cyclic extensions of degree p:
 *   nu_i = floor((a + i t)/p)
 *   mu   = min_i (i e_K - (p-1) nu_i)        (<= 0, the i = 0 term vanishes)
 *   n_i  = min_{0 <= j <= p-1-i} (nu_{i+j} - nu_j)
 * i_min is the smallest argmin defining mu. */
struct NuData {
    unsigned long p = 0;
    std::vector<long> nu;
    long mu = 0;
    std::vector<long> n;
    unsigned i_min = 0;

    long nu_sum() const;
    long n_sum() const;
};

NuData nu_data(const RamificationProfile& pr); // requires wild cyclic degree p, a != 0

// v_p of the minimal index of a free group-ring submodule of O_L
long minimal_index_cyclic_p(const RamificationProfile& pr);

struct FreenessResult {
    bool free = false;
    long v_p_assoc_index = 0; // v_p of [A_{L/K} : O_K[G]]
};
FreenessResult freeness_cyclic_p(const RamificationProfile& pr);

/* Element achieving the minimal index: pi_L^a when mu = 0, otherwise
 * pi_L^a + pi_K^{-nu_{i_min}} (sigma-1)^{i_min} pi_L^a; in the maximally
 * ramified case any sum of the pi_L^i with unit coefficients. */
struct GeneratorRecipe {
    unsigned a = 0;
    bool unit_sum = false; // maximally ramified branch
    bool two_term = false;
    unsigned i_min = 0;
    long nu_i_min = 0;
    std::string text;
};
GeneratorRecipe minimal_generator_recipe(const RamificationProfile& pr);

struct Rational {
    long num = 0;
    long den = 1;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};
Rational make_rational(long num, long den);

struct GeneralBound {
    Rational bound;      // f_L (e_rel - 1) + [L:Q_p] v_p([L:K]) / 2
    Rational easy_bound; // [L:Q_p] (1 + v_p([L:K]) / 2), strict
};
GeneralBound general_bound(unsigned long p, unsigned e_rel, unsigned f_L,
                           unsigned deg_L_Qp, unsigned deg_L_K);

// v_p(disc(Q_p(zeta_{p^r s})/Q_p)) = p^{r-1} (p r - r - 1) f_s, gcd(s, p) = 1
long cyclotomic_disc_valuation(unsigned long p, unsigned r, unsigned long s);

/* v_p(m(L/K)) for K/Q_p unramified, L/Q_p abelian, p odd, e_{L/K} = p^n d.
 * Evaluates both the reduced form f_L d (p^n - 1)/(p - 1) and the full
 * discriminant sum and insists they agree. */
long minimal_index_abs_abelian(unsigned long p, unsigned f_L, unsigned n, unsigned long d);

/* v_p([M : O_K[G]]) for a maximal order M of K[G], G cyclic of order p^n d.
 * Supported bases: K/Q_p unramified, or the degree-p Kummer situation
 * (zeta_p in K, |G| = p). */
long maximal_order_index_cyclic(unsigned long p, unsigned f_K, unsigned e_K, unsigned n,
                                unsigned long d, bool zeta_p_in_K);

/* Per-prime valuations of the global minimal index of an abelian extension
 * of Q of the given degree; ram maps p to (n, d) with e_p = p^n d. Also runs
 * the local-global recombination against minimal_index_abs_abelian for every
 * admissible inertia degree. */
std::map<unsigned long, long> global_abelian_valuation(
    unsigned long degree, const std::map<unsigned long, std::pair<unsigned, unsigned long>>& ram);

/* Everything the closed forms can say about one profile. Fields are empty
 * when the profile is outside the scope of the corresponding formula. */
struct IndexReport {
    RamificationProfile profile;
    std::optional<long> v_p_m;
    std::optional<long> v_p_assoc_index;
    std::optional<bool> free_over_assoc;
    std::optional<long> v_p_maximal_order_index;
    Rational bound_general;
    Rational bound_easy;
    std::string witness;
    std::string source = "formula";
};

IndexReport closed_form_report(const RamificationProfile& pr);

} // namespace galindex

#endif
