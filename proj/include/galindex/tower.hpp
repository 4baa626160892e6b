#ifndef GALINDEX_TOWER_HPP
#define GALINDEX_TOWER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galindex/matrix.hpp"
#include "galindex/scalar.hpp"

namespace galindex {

class FieldTower;

enum class LayerKind { unramified, eisenstein };

/* Element of a layered p-adic field, stored as the flat coefficient vector
 * over the power-product basis of the first `level` layers (the top layer
 * index varies slowest). level 0 is Q_p itself. Elements are immutable;
 * the owning tower must outlive them. */
class TowerElement {
public:
    TowerElement(const FieldTower* tower, unsigned level, std::vector<PadicScalar> flat);

    const FieldTower* tower() const { return tower_; }
    unsigned level() const { return level_; }
    const std::vector<PadicScalar>& coeffs() const { return flat_; }

    // valuation normalised to the uniformizer of this level's field
    Val valuation() const;
    // the element is known modulo pi^effective_precision(), same normalisation
    long effective_precision() const;
    bool is_zero_to_precision() const;
    bool is_integral() const; // all coefficients have denominator exponent 0

    TowerElement operator-() const;
    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator*(const TowerElement& o) const;
    TowerElement inv() const;
    TowerElement shift(long s) const; // multiply by pi^s
    TowerElement pow(unsigned long k) const;

    TowerElement zero_like() const;
    TowerElement one_like() const;

    // view in a larger field of the same tower (constant in the new generators)
    TowerElement embedded(unsigned higher_level) const;
    // coordinate blocks over the subfield at sub_level; block index runs over
    // the power products of the layers in [sub_level, level)
    std::vector<TowerElement> blocks(unsigned sub_level) const;

    bool eq_to_min_precision(const TowerElement& o) const;

    // precision-independent ordering key: coefficient mantissas truncated to
    // min(16, N) digits (requires the digits to be settled there, which holds
    // for the roots and witnesses this is applied to)
    std::vector<mpz_class> stable_key() const;

    std::string to_string() const;

private:
    const FieldTower* tower_;
    unsigned level_;
    std::vector<PadicScalar> flat_;

    void check_compatible(const TowerElement& o) const;
};

bool stable_key_less(const TowerElement& a, const TowerElement& b);

/* Coefficient tree for describing defining polynomials layer by layer:
 * a leaf is a base scalar mantissa/denominator pair, an inner node lists
 * the coefficients over the layer below. */
struct CoeffTree {
    bool leaf = true;
    mpz_class mantissa = 0;
    unsigned denom_exp = 0;
    std::vector<CoeffTree> children;

    static CoeffTree integer(long v) {
        CoeffTree t;
        t.mantissa = v;
        return t;
    }
    static CoeffTree node(std::vector<CoeffTree> ch) {
        CoeffTree t;
        t.leaf = false;
        t.children = std::move(ch);
        return t;
    }
};

struct LayerDesc {
    LayerKind kind;
    std::vector<CoeffTree> poly; // all coefficients c_0..c_d, little-endian, c_d = 1
};

/* A tower Q_p -> (unramified) -> (Eisenstein)* with validated defining
 * polynomials. Immutable once built; construction happens through the
 * factory functions below, extension returns a fresh tower. */
class FieldTower {
public:
    struct Layer {
        LayerKind kind;
        unsigned degree;
        // non-leading coefficients c_0..c_{d-1} of the monic defining
        // polynomial, as elements of the field below this layer
        std::vector<TowerElement> poly;
        // exact generator conjugates when known at construction time
        // (Kummer layers); elements of the full field up to this layer
        std::vector<TowerElement> generator_conjugates;
    };

    unsigned long prime() const { return p_; }
    unsigned precision() const { return prec_; }
    unsigned levels() const { return (unsigned)layers_.size(); }
    const Layer& layer(unsigned i) const { return layers_[i]; }

    unsigned dim(unsigned level) const;      // [F_level : Q_p]
    unsigned e_abs(unsigned level) const;    // absolute ramification index
    unsigned f_abs(unsigned level) const;    // absolute inertia degree

    TowerElement zero(unsigned level) const;
    TowerElement one(unsigned level) const;
    TowerElement constant(unsigned level, long v) const;
    TowerElement from_scalar(unsigned level, const PadicScalar& s) const;
    TowerElement from_tree(unsigned level, const CoeffTree& t) const;
    // generator of layer `level-1`, as an element of level `level`
    TowerElement generator(unsigned level) const;
    // uniformizer of the level field: generator of its top Eisenstein layer,
    // or p when the field is unramified
    TowerElement uniformizer(unsigned level) const;
    TowerElement uniformizer_inverse(unsigned level) const;

    // representatives of the residue field of the level field: all
    // {0..p-1}-combinations of the unramified basis monomials (p^f elements)
    std::vector<TowerElement> residue_representatives(unsigned level) const;

    // all roots in the level field of the monic polynomial with the given
    // coefficients c_0..c_d (c_d must be 1): digit search plus Newton for one
    // root, then deflation until no roots remain
    std::vector<TowerElement> roots_of(unsigned level,
                                       const std::vector<TowerElement>& poly) const;
    std::optional<TowerElement> find_one_root(unsigned level,
                                              const std::vector<TowerElement>& poly) const;

    std::string describe() const;

private:
    friend std::shared_ptr<const FieldTower> make_tower(unsigned long,
                                                        const std::vector<LayerDesc>&,
                                                        unsigned);
    friend std::shared_ptr<const FieldTower> extend_eisenstein(
        const std::shared_ptr<const FieldTower>&, const std::vector<CoeffTree>&);
    friend std::shared_ptr<const FieldTower> kummer_extension(
        const std::shared_ptr<const FieldTower>&, unsigned long);

    FieldTower(unsigned long p, unsigned prec) : p_(p), prec_(prec) {}
    void append_unramified(const std::vector<CoeffTree>& poly);
    void append_eisenstein(const std::vector<CoeffTree>& poly);
    void append_eisenstein_elems(std::vector<TowerElement> nonleading);
    void finalize();
    std::shared_ptr<FieldTower> clone() const;

    unsigned long p_;
    unsigned prec_;
    std::vector<Layer> layers_;
    std::vector<TowerElement> pi_inverse_; // cached inverse of each level's uniformizer
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/* Build and validate a tower. Unramified layers are only accepted at the
 * bottom; their polynomials must be irreducible modulo p. Eisenstein layers
 * are checked for the Eisenstein criterion over the field below. */
TowerPtr make_tower(unsigned long p, const std::vector<LayerDesc>& layers, unsigned precision);

// append one Eisenstein layer described over the current top field
TowerPtr extend_eisenstein(const TowerPtr& base, const std::vector<CoeffTree>& poly);

/* K(pi_K^{1/p}) for K the top field of `base`; requires the p-th roots of
 * unity in K (verified by root search on the cyclotomic polynomial) and
 * records the exact Galois action zeta^j * pi_L on the new generator. */
TowerPtr kummer_extension(const TowerPtr& base, unsigned long p);

// lexicographically smallest monic polynomial of the given degree that is
// irreducible modulo p (coefficients enumerated as little-endian base-p digits)
std::vector<long> default_unramified_poly(unsigned long p, unsigned degree);

} // namespace galindex

#endif
