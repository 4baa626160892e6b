#ifndef GALINDEX_ORACLE_HPP
#define GALINDEX_ORACLE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "galindex/closed_forms.hpp"
#include "galindex/galois.hpp"

namespace galindex {

/* The associated order as a lattice in the group algebra: basis element i is
 * pi_K^{-pivots[i]} times the integral combination of group elements given
 * by column i of basis_coords. */
struct AssociatedOrder {
    std::vector<long> pivots; // ascending
    long v_K_index = 0;       // sum of the pivots
    Matrix<TowerElement> basis_coords;
};

struct OracleResult {
    long v_K_min = 0; // m(L/K) = N(pi_K)^{v_K_min}
    long v_p_m = 0;   // f_K * v_K_min
    std::vector<TowerElement> witness;
    // witness coordinate i equals sum_l rep[digits[i][l]] pi_K^l, a
    // precision-independent description used for reporting
    std::vector<std::vector<unsigned long>> witness_digits;
    std::string witness_text;
    long R0 = 0; // pilot index valuation
    unsigned long classes_enumerated = 0;
    AssociatedOrder assoc;
    long v_p_assoc_index = 0;
    bool free_over_assoc = false;
};

struct OracleOptions {
    unsigned long budget = 10000000; // determinant evaluations
    unsigned threads = 0;            // 0: hardware concurrency, 1: serial
    std::optional<GeneratorRecipe> seed;
};

/* v_K of [O_L : O_K[G] omega] via the determinant of (omega | M_2 omega |
 * ... | M_n omega). Throws PrecisionExhausted when the determinant vanishes
 * to precision; an omega that is genuinely not a normal basis generator
 * stays exhausted at every precision, which the retry driver converts to
 * NotGenerator. The default route blows entries up to their multiplication
 * matrices over Z_p; use_blowup = false keeps the elimination over O_K. */
long index_of_generated_module(const GaloisLatticeModel& model,
                               const std::vector<TowerElement>& omega,
                               bool use_blowup = true);

// realised coordinates of a closed-form generator recipe (power-basis models)
std::vector<TowerElement> realize_recipe(const GaloisLatticeModel& model,
                                         const GeneratorRecipe& recipe);

/* Some integral omega_0 with certified nonzero determinant, plus its index
 * valuation. Search order: the closed-form witness when provided, then all
 * 0/1 coordinate vectors by increasing support, then deterministic random
 * unit coordinates. */
std::pair<std::vector<TowerElement>, long> find_normal_basis_generator(
    const GaloisLatticeModel& model, const std::optional<GeneratorRecipe>& seed);

AssociatedOrder associated_order_lattice(const GaloisLatticeModel& model);

/* Freeness of O_L over the associated order: the two index valuations agree
 * exactly when they do, and in that case the minimal-index witness is a
 * generator over the associated order. */
struct FreenessCheck {
    bool free = false;
    std::optional<std::vector<TowerElement>> generator;
};
FreenessCheck check_freeness(const OracleResult& search, const AssociatedOrder& assoc);

/* Retry driver around index_of_generated_module: rebuild the model at
 * doubled precision while the determinant stays zero to precision; an omega
 * that is still exhausted at the cap is not a normal basis generator. */
long index_of_generated_module_certified(
    const std::function<GaloisLatticeModel(unsigned)>& model_at,
    const std::function<std::vector<TowerElement>(const GaloisLatticeModel&)>& omega_at,
    unsigned base_precision, unsigned precision_cap);

/* Exhaustive minimum over the residue classes of O_K^n mod pi_K^{R0+1},
 * with the witness class included; the index of any class that cannot beat
 * the running minimum is irrelevant, so determinants that vanish to
 * precision are skipped. Deterministic for any thread count. */
OracleResult minimal_index_search(const GaloisLatticeModel& model, const OracleOptions& opts);

// full oracle run: minimal index, associated order, freeness verdict
OracleResult run_oracle(const GaloisLatticeModel& model, const OracleOptions& opts);

} // namespace galindex

#endif
