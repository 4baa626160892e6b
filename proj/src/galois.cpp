#include "galindex/galois.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace galindex {

namespace {

bool is_prime_ul(unsigned long n) {
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// identity image first, the remaining roots in stable order
std::vector<TowerElement> order_conjugates(const TowerElement& gen,
                                           std::vector<TowerElement> roots) {
    std::vector<TowerElement> rest;
    std::vector<TowerElement> out;
    for (const auto& r : roots) {
        if ((r - gen).is_zero_to_precision() && out.empty())
            out.push_back(r);
        else
            rest.push_back(r);
    }
    if (out.empty())
        throw NotGalois("the generator itself was not found among the roots");
    std::sort(rest.begin(), rest.end(), stable_key_less);
    for (auto& r : rest)
        out.push_back(std::move(r));
    return out;
}

// embed polynomial coefficients (non-leading stored in the layer) to `level`
// and append the leading 1
std::vector<TowerElement> layer_poly_at(const FieldTower& tw, unsigned layer_idx,
                                        unsigned level) {
    std::vector<TowerElement> poly;
    for (const auto& c : tw.layer(layer_idx).poly)
        poly.push_back(c.embedded(level));
    poly.push_back(tw.one(level));
    return poly;
}

// x as sum over the omega^i pi^j monomials of the two layers above `base`,
// with the generators replaced by the given images (compositum case)
TowerElement substitute_generators(const FieldTower& tw, unsigned base,
                                   const TowerElement& x, const TowerElement& img_omega,
                                   const TowerElement& img_pi) {
    const unsigned top = x.level();
    const unsigned f = tw.layer(base).degree;
    const unsigned q = tw.layer(base + 1).degree;
    const std::vector<TowerElement> c = x.blocks(base);
    TowerElement acc = tw.zero(top);
    TowerElement pi_pow = tw.one(top);
    for (unsigned j = 0; j < q; ++j) {
        TowerElement om_pow = tw.one(top);
        for (unsigned i = 0; i < f; ++i) {
            const TowerElement& coeff = c[(size_t)j * f + i];
            acc = acc + coeff.embedded(top) * om_pow * pi_pow;
            if (i + 1 < f)
                om_pow = om_pow * img_omega;
        }
        if (j + 1 < q)
            pi_pow = pi_pow * img_pi;
    }
    return acc;
}

Matrix<TowerElement> matrix_of_images(const FieldTower& tw, unsigned base, unsigned n,
                                      const std::vector<TowerElement>& basis_images) {
    Matrix<TowerElement> m(n, n, tw.zero(base));
    for (unsigned j = 0; j < n; ++j) {
        const std::vector<TowerElement> col = basis_images[j].blocks(base);
        for (unsigned i = 0; i < n; ++i)
            m.at(i, j) = col[i];
    }
    return m;
}

void verify_model(const GaloisLatticeModel& m) {
    for (const auto& mat : m.action)
        for (size_t i = 0; i < mat.rows(); ++i)
            for (size_t j = 0; j < mat.cols(); ++j)
                if (!mat.at(i, j).is_integral())
                    throw InvariantViolation("Galois action matrix has a non-integral entry");
    for (unsigned a = 0; a < m.n; ++a)
        for (unsigned b = 0; b < m.n; ++b) {
            const Matrix<TowerElement> prod = m.action[a] * m.action[b];
            const Matrix<TowerElement>& expect = m.action[m.mult_table[a][b]];
            for (size_t i = 0; i < prod.rows(); ++i)
                for (size_t j = 0; j < prod.cols(); ++j)
                    if (!prod.at(i, j).eq_to_min_precision(expect.at(i, j)))
                        throw InvariantViolation(
                            "Galois matrices do not satisfy the multiplication table");
        }
}

// canonical Frobenius: the root congruent to gen^(p^fK) modulo the maximal ideal
size_t frobenius_index(const FieldTower& tw, const TowerElement& gen,
                       const std::vector<TowerElement>& roots, unsigned base_level) {
    unsigned long q = 1;
    for (unsigned i = 0; i < tw.f_abs(base_level); ++i)
        q *= tw.prime();
    const TowerElement target = gen.pow(q);
    for (size_t i = 0; i < roots.size(); ++i) {
        const Val v = (roots[i] - target).valuation();
        if (!v.exact || v.value >= 1)
            return i;
    }
    throw NotGalois("no root lifts the residue Frobenius");
}

} // namespace

Val GaloisLatticeModel::coordinate_valuation(const std::vector<TowerElement>& coords) const {
    if (coords.size() != n)
        throw InputError("coordinate vector length mismatch");
    long best_c = LONG_MAX, best_b = LONG_MAX;
    for (unsigned i = 0; i < n; ++i) {
        const Val v = coords[i].valuation();
        const long cand = (long)e_rel * v.value + basis_pi_pow[i];
        if (v.exact)
            best_c = std::min(best_c, cand);
        else
            best_b = std::min(best_b, cand);
    }
    if (best_c < best_b)
        return Val::certain(best_c);
    return Val::at_least(std::min(best_c, best_b));
}

std::vector<TowerElement> find_conjugates(const TowerPtr& tower, unsigned base_level) {
    const unsigned steps = tower->levels() - base_level;
    if (steps == 0 || steps > 2)
        throw InputError("find_conjugates supports one or two extension steps");
    const unsigned top = tower->levels();
    const unsigned gen_layer = top - 1; // conjugates of the top generator
    const auto& layer = tower->layer(gen_layer);
    const TowerElement gen = tower->generator(top);

    if (!layer.generator_conjugates.empty())
        return order_conjugates(gen, layer.generator_conjugates);

    if (layer.kind == LayerKind::eisenstein && !is_prime_ul(layer.degree))
        throw InputError("totally ramified steps must have prime degree");

    std::vector<TowerElement> roots = tower->roots_of(top, layer_poly_at(*tower, gen_layer, top));
    if (roots.size() != layer.degree) {
        std::ostringstream os;
        os << "found " << roots.size() << " of " << layer.degree
           << " roots: the step is not Galois";
        throw NotGalois(os.str());
    }
    return order_conjugates(gen, roots);
}

GaloisLatticeModel build_lattice_model(const TowerPtr& tower, unsigned base_level) {
    const unsigned top = tower->levels();
    if (base_level >= top)
        throw InputError("base field must be a proper subfield");
    const unsigned steps = top - base_level;
    if (steps > 2)
        throw InputError("unsupported tower shape: more than two steps above the base");

    GaloisLatticeModel m;
    m.tower = tower;
    m.base_level = base_level;
    m.n = tower->dim(top) / tower->dim(base_level);
    m.e_rel = tower->e_abs(top) / tower->e_abs(base_level);
    m.f_rel = tower->f_abs(top) / tower->f_abs(base_level);

    const auto label = [&](unsigned om, unsigned pi) {
        std::ostringstream os;
        if (om == 0 && pi == 0)
            return std::string("1");
        if (om > 0)
            os << "w" << (om > 1 ? "^" + std::to_string(om) : "");
        if (pi > 0) {
            if (om > 0)
                os << "*";
            os << "pi" << (pi > 1 ? "^" + std::to_string(pi) : "");
        }
        return os.str();
    };

    if (steps == 1) {
        const auto& layer = tower->layer(base_level);
        const std::vector<TowerElement> conj = find_conjugates(tower, base_level);
        const unsigned d = layer.degree;
        if (layer.kind == LayerKind::eisenstein) {
            for (unsigned j = 0; j < d; ++j) {
                m.basis_labels.push_back(label(0, j));
                m.basis_pi_pow.push_back(j);
            }
            // powers of the smallest non-identity conjugate give sigma
            std::vector<TowerElement> images;
            TowerElement pw = tower->one(top);
            for (unsigned j = 0; j < d; ++j) {
                images.push_back(pw);
                if (j + 1 < d)
                    pw = pw * conj[1];
            }
            const Matrix<TowerElement> msigma = matrix_of_images(*tower, base_level, d, images);
            m.action.push_back(Matrix<TowerElement>::identity(d, tower->zero(base_level)));
            for (unsigned k = 1; k < d; ++k)
                m.action.push_back(m.action[k - 1] * msigma);
        } else {
            for (unsigned j = 0; j < d; ++j) {
                m.basis_labels.push_back(label(j, 0));
                m.basis_pi_pow.push_back(0);
            }
            const TowerElement gen = tower->generator(top);
            const size_t fi = frobenius_index(*tower, gen, conj, base_level);
            std::vector<TowerElement> images;
            TowerElement pw = tower->one(top);
            for (unsigned j = 0; j < d; ++j) {
                images.push_back(pw);
                if (j + 1 < d)
                    pw = pw * conj[fi];
            }
            const Matrix<TowerElement> mfrob = matrix_of_images(*tower, base_level, d, images);
            m.action.push_back(Matrix<TowerElement>::identity(d, tower->zero(base_level)));
            for (unsigned k = 1; k < d; ++k)
                m.action.push_back(m.action[k - 1] * mfrob);
        }
        m.mult_table.assign(m.n, std::vector<unsigned>(m.n));
        for (unsigned i = 0; i < m.n; ++i)
            for (unsigned j = 0; j < m.n; ++j)
                m.mult_table[i][j] = (i + j) % m.n;
    } else {
        // compositum: unramified layer at the bottom, Eisenstein step whose
        // polynomial is defined over the base field
        if (tower->layer(base_level).kind != LayerKind::unramified ||
            tower->layer(base_level + 1).kind != LayerKind::eisenstein)
            throw InputError("two-step models need an unramified step below an Eisenstein step");
        const unsigned f = tower->layer(base_level).degree;
        const unsigned q = tower->layer(base_level + 1).degree;
        if (!is_prime_ul(q))
            throw InputError("totally ramified steps must have prime degree");
        for (const auto& c : tower->layer(base_level + 1).poly) {
            const std::vector<TowerElement> blk = c.blocks(base_level);
            for (size_t i = 1; i < blk.size(); ++i)
                if (!blk[i].is_zero_to_precision())
                    throw InputError(
                        "the Eisenstein polynomial of a two-step model must have "
                        "coefficients in the base field");
        }
        for (unsigned j = 0; j < q; ++j)
            for (unsigned i = 0; i < f; ++i) {
                m.basis_labels.push_back(label(i, j));
                m.basis_pi_pow.push_back(j);
            }

        // sigma: fixes omega, permutes the Eisenstein roots
        std::vector<TowerElement> sig_roots =
            tower->roots_of(top, layer_poly_at(*tower, base_level + 1, top));
        const TowerElement pi_gen = tower->generator(top);
        if (sig_roots.size() != q)
            throw NotGalois("Eisenstein step of the compositum is not Galois");
        sig_roots = order_conjugates(pi_gen, sig_roots);
        // the product group structure needs the ramified step to be Galois
        // over the base on its own, i.e. roots free of the unramified generator
        for (const auto& r : sig_roots) {
            const std::vector<TowerElement> blk = r.blocks(base_level);
            for (unsigned j = 0; j < q; ++j)
                for (unsigned i = 1; i < f; ++i)
                    if (!blk[(size_t)j * f + i].is_zero_to_precision())
                        throw NotGalois(
                            "the ramified step of the compositum is not Galois over the base");
        }

        // frobenius: acts on the unramified layer, fixes pi
        const TowerElement om_gen = tower->generator(base_level + 1).embedded(top);
        std::vector<TowerElement> frob_roots_low = tower->roots_of(
            base_level + 1, layer_poly_at(*tower, base_level, base_level + 1));
        if (frob_roots_low.size() != f)
            throw NotGalois("unramified step of the compositum is not Galois");
        std::vector<TowerElement> frob_roots;
        for (const auto& r : frob_roots_low)
            frob_roots.push_back(r.embedded(top));
        const size_t fi = frobenius_index(
            *tower, tower->generator(base_level + 1), frob_roots_low, base_level);

        // images of omega under frobenius powers, of pi under sigma powers
        std::vector<TowerElement> om_images{om_gen};
        for (unsigned a = 1; a < f; ++a)
            om_images.push_back(substitute_generators(*tower, base_level, om_images[a - 1],
                                                      frob_roots[fi], pi_gen));
        std::vector<TowerElement> pi_images{pi_gen};
        for (unsigned b = 1; b < q; ++b)
            pi_images.push_back(substitute_generators(*tower, base_level, pi_images[b - 1],
                                                      om_gen, sig_roots[1]));

        for (unsigned a = 0; a < f; ++a)
            for (unsigned b = 0; b < q; ++b) {
                // basis order has omega fastest within each pi-power block
                std::vector<TowerElement> images;
                for (unsigned j = 0; j < q; ++j)
                    for (unsigned i = 0; i < f; ++i)
                        images.push_back(om_images[a].pow(i) * pi_images[b].pow(j));
                m.action.push_back(matrix_of_images(*tower, base_level, m.n, images));
            }
        m.mult_table.assign(m.n, std::vector<unsigned>(m.n));
        for (unsigned a = 0; a < f; ++a)
            for (unsigned b = 0; b < q; ++b)
                for (unsigned a2 = 0; a2 < f; ++a2)
                    for (unsigned b2 = 0; b2 < q; ++b2)
                        m.mult_table[a * q + b][a2 * q + b2] =
                            ((a + a2) % f) * q + (b + b2) % q;
    }

    m.pi_coords = tower->uniformizer(top).blocks(base_level);
    verify_model(m);
    return m;
}

} // namespace galindex
