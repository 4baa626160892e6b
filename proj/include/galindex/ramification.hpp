#ifndef GALINDEX_RAMIFICATION_HPP
#define GALINDEX_RAMIFICATION_HPP

#include <vector>

#include "galindex/galois.hpp"

namespace galindex {

/* Ramification data of L/K. For ramified cyclic degree-p extensions t is
 * the unique lower-numbering jump; t = 0 marks tame ramification and
 * t = -1 an unramified extension. */
struct RamificationProfile {
    unsigned long p = 0;
    unsigned e_K = 1, f_K = 1;
    unsigned n = 1; // [L:K]
    unsigned e_rel = 1, f_rel = 1;
    long t = -1;
    unsigned a = 0; // t mod p for wild jumps, else 0
    long t0 = 0;    // (t - a)/p
    bool unramified = true;
    bool tame = true;
    bool weakly_ramified = true;
    bool maximal = false;
    bool almost_maximal = false;

    bool wild() const { return t >= 1; }
    // wild cyclic of degree p, the scope of the closed-form engine
    bool cyclic_degree_p() const {
        return wild() && n == p && e_rel == p && f_rel == 1;
    }
};

/* Lower-numbering filtration: groups[i] lists the member indices of G_i
 * (model enumeration), for i = 0 .. first index with trivial G_i. */
struct Filtration {
    std::vector<std::vector<unsigned>> groups;
    std::vector<long> displacement; // per element g: min_j v_L((g-1) b_j), 0 for the identity
};

Filtration filtration(const GaloisLatticeModel& model);

RamificationProfile profile(const GaloisLatticeModel& model);

/* Profile of an abstract ramified cyclic degree-p extension with the given
 * invariants; lets the closed-form engine run without constructing fields. */
RamificationProfile profile_from_invariants(unsigned long p, unsigned e_K, unsigned f_K, long t);

} // namespace galindex

#endif
