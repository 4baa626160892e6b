#ifndef GALINDEX_GALOIS_HPP
#define GALINDEX_GALOIS_HPP

#include <string>
#include <vector>

#include "galindex/matrix.hpp"
#include "galindex/tower.hpp"

namespace galindex {

/* Integral basis of O_L over O_K together with the matrix of every Galois
 * group element on it. This is the only thing the oracle ever sees.
 *
 * Supported shapes for L/K: a single Eisenstein layer of prime degree, a
 * single unramified layer, or an unramified layer followed by an Eisenstein
 * layer whose polynomial has coefficients in K. */
struct GaloisLatticeModel {
    TowerPtr tower;      // keeps the tower alive
    unsigned base_level; // K = first base_level layers
    unsigned n;          // [L:K]
    unsigned e_rel, f_rel;

    std::vector<std::string> basis_labels;
    std::vector<long> basis_pi_pow; // v_L of each basis element
    // action[k] expresses g_k on the basis over O_K; action[0] is the identity
    std::vector<Matrix<TowerElement>> action;
    std::vector<std::vector<unsigned>> mult_table; // g_i g_j = g_{table[i][j]}
    std::vector<TowerElement> pi_coords;           // coordinates of pi_L

    unsigned long prime() const { return tower->prime(); }
    unsigned e_K() const { return tower->e_abs(base_level); }
    unsigned f_K() const { return tower->f_abs(base_level); }

    // v_L of the element with the given coordinates over the integral basis
    Val coordinate_valuation(const std::vector<TowerElement>& coords) const;
};

/* All automorphism images of pi_L (or of the unramified generator) for the
 * top extension step above K; identity image first, the rest in stable
 * order. Throws NotGalois when fewer roots than the degree are found. */
std::vector<TowerElement> find_conjugates(const TowerPtr& tower, unsigned base_level);

GaloisLatticeModel build_lattice_model(const TowerPtr& tower, unsigned base_level);

} // namespace galindex

#endif
