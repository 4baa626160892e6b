#include "galindex/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace galindex {

namespace {

// power-product monomials forming the Z_p-basis of O_K
std::vector<TowerElement> base_monomials(const GaloisLatticeModel& m) {
    const FieldTower& tw = *m.tower;
    const unsigned d = tw.dim(m.base_level);
    std::vector<TowerElement> mono;
    mono.reserve(d);
    for (unsigned j = 0; j < d; ++j) {
        std::vector<PadicScalar> flat(d, PadicScalar::zero(tw.prime(), tw.precision()));
        flat[j] = PadicScalar::one(tw.prime(), tw.precision());
        mono.push_back(TowerElement(&tw, m.base_level, std::move(flat)));
    }
    return mono;
}

// regular representation of x on the Z_p-basis of O_K
void fill_regular_block(ScalarMatrix& out, size_t row0, size_t col0, const TowerElement& x,
                        const std::vector<TowerElement>& mono) {
    const size_t d = mono.size();
    for (size_t j = 0; j < d; ++j) {
        const TowerElement prod = x * mono[j];
        const auto& flat = prod.coeffs();
        for (size_t i = 0; i < d; ++i)
            out.at(row0 + i, col0 + j) = flat[i];
    }
}

Matrix<TowerElement> index_matrix(const GaloisLatticeModel& m,
                                  const std::vector<TowerElement>& omega) {
    Matrix<TowerElement> a(m.n, m.n, m.tower->zero(m.base_level));
    for (unsigned k = 0; k < m.n; ++k) {
        const std::vector<TowerElement> col =
            k == 0 ? omega : m.action[k].apply(omega);
        for (unsigned i = 0; i < m.n; ++i)
            a.at(i, k) = col[i];
    }
    return a;
}

long det_valuation_blowup(const GaloisLatticeModel& m, const Matrix<TowerElement>& a,
                          const std::vector<TowerElement>& mono) {
    const size_t d = mono.size();
    const size_t nd = (size_t)m.n * d;
    ScalarMatrix big(nd, nd, PadicScalar::zero(m.prime(), m.tower->precision()));
    for (unsigned i = 0; i < m.n; ++i)
        for (unsigned k = 0; k < m.n; ++k)
            fill_regular_block(big, (size_t)i * d, (size_t)k * d, a.at(i, k), mono);
    const long vp = det_valuation(big); // = v_p(N_{K/Q_p}(det)) = f_K v_K(det)
    const long f = (long)m.f_K();
    if (vp % f != 0)
        throw InvariantViolation("blown-up determinant valuation not divisible by f_K");
    return vp / f;
}

} // namespace

long index_of_generated_module(const GaloisLatticeModel& m,
                               const std::vector<TowerElement>& omega, bool use_blowup) {
    if (omega.size() != m.n)
        throw InputError("omega needs one coordinate per basis element");
    for (const auto& c : omega)
        if (!c.is_integral())
            throw InputError("omega must be integral");
    const Matrix<TowerElement> a = index_matrix(m, omega);
    if (use_blowup) {
        const std::vector<TowerElement> mono = base_monomials(m);
        return det_valuation_blowup(m, a, mono);
    }
    return det_valuation(a);
}

std::vector<TowerElement> realize_recipe(const GaloisLatticeModel& m,
                                         const GeneratorRecipe& recipe) {
    // the recipes live in the power basis of a totally ramified prime step
    for (unsigned j = 0; j < m.n; ++j)
        if (m.basis_pi_pow[j] != (long)j)
            throw InputError("generator recipe needs the pi-power basis");
    const TowerElement zero = m.tower->zero(m.base_level);
    const TowerElement one = m.tower->one(m.base_level);
    std::vector<TowerElement> coords(m.n, zero);
    if (recipe.unit_sum) {
        for (unsigned j = 0; j < m.n; ++j)
            coords[j] = one;
        return coords;
    }
    coords[recipe.a] = one;
    if (!recipe.two_term)
        return coords;
    // add pi_K^{-nu} (sigma - 1)^{i_min} applied to pi_L^a
    std::vector<TowerElement> v(m.n, zero);
    v[recipe.a] = one;
    const Matrix<TowerElement>& msigma = m.action[1];
    for (unsigned step = 0; step < recipe.i_min; ++step) {
        const std::vector<TowerElement> w = msigma.apply(v);
        for (unsigned i = 0; i < m.n; ++i)
            v[i] = w[i] - v[i];
    }
    for (unsigned i = 0; i < m.n; ++i) {
        const TowerElement shifted = v[i].shift(-recipe.nu_i_min);
        if (!shifted.is_integral())
            throw InvariantViolation("recipe coordinates failed to be integral");
        coords[i] = coords[i] + shifted;
    }
    return coords;
}

std::pair<std::vector<TowerElement>, long> find_normal_basis_generator(
    const GaloisLatticeModel& m, const std::optional<GeneratorRecipe>& seed) {
    const TowerElement zero = m.tower->zero(m.base_level);
    const TowerElement one = m.tower->one(m.base_level);

    const auto try_candidate =
        [&](const std::vector<TowerElement>& omega) -> std::optional<long> {
        try {
            return index_of_generated_module(m, omega);
        } catch (const PrecisionExhausted&) {
            return std::nullopt;
        }
    };

    if (seed) {
        try {
            const std::vector<TowerElement> omega = realize_recipe(m, *seed);
            if (const auto r = try_candidate(omega))
                return {omega, *r};
        } catch (const InputError&) {
            // recipe does not fit this basis; fall through to the search
        }
    }

    // 0/1 vectors by increasing support, positions lexicographic
    for (unsigned support = 1; support <= m.n; ++support) {
        std::vector<unsigned> pick(support);
        for (unsigned i = 0; i < support; ++i)
            pick[i] = i;
        while (true) {
            std::vector<TowerElement> omega(m.n, zero);
            for (const unsigned i : pick)
                omega[i] = one;
            if (const auto r = try_candidate(omega))
                return {omega, *r};
            // next combination
            int pos = (int)support - 1;
            while (pos >= 0 && pick[pos] == m.n - support + pos)
                --pos;
            if (pos < 0)
                break;
            ++pick[pos];
            for (unsigned i = (unsigned)pos + 1; i < support; ++i)
                pick[i] = pick[i - 1] + 1;
        }
    }

    // deterministic random unit coordinates
    std::mt19937 rng(0x67616C69u);
    const std::vector<TowerElement> reps = m.tower->residue_representatives(m.base_level);
    const TowerElement pi = m.tower->uniformizer(m.base_level);
    for (unsigned attempt = 0; attempt < 128; ++attempt) {
        std::vector<TowerElement> omega;
        omega.reserve(m.n);
        for (unsigned i = 0; i < m.n; ++i) {
            const unsigned long u = 1 + rng() % (reps.size() - 1); // nonzero residue
            const unsigned long h = rng() % reps.size();
            omega.push_back(reps[u] + reps[h] * pi);
        }
        if (const auto r = try_candidate(omega))
            return {omega, *r};
    }
    throw SearchExhausted("no normal basis generator found within the attempt budget");
}

AssociatedOrder associated_order_lattice(const GaloisLatticeModel& m) {
    // lambda = sum_k c_k g_k lies in the associated order iff T c is integral,
    // where T stacks the coordinate columns of g_k(b_j) for every j
    Matrix<TowerElement> t((size_t)m.n * m.n, m.n, m.tower->zero(m.base_level));
    for (unsigned j = 0; j < m.n; ++j)
        for (unsigned i = 0; i < m.n; ++i)
            for (unsigned k = 0; k < m.n; ++k)
                t.at((size_t)j * m.n + i, k) = m.action[k].at(i, j);
    const SmithResult<TowerElement> s = smith_form(t);
    if (!s.full_rank_certified || s.rank != m.n)
        throw PrecisionExhausted("associated-order lattice rank not certified");
    AssociatedOrder a{
        s.pivots, 0, Matrix<TowerElement>::identity(m.n, m.tower->zero(m.base_level))};
    for (const long piv : s.pivots) {
        if (piv < 0)
            throw InvariantViolation("group ring not contained in the associated order");
        a.v_K_index += piv;
    }
    // basis element i: pi_K^{-s_i} sum_k (V^{-1})_{k i} g_k
    for (unsigned i = 0; i < m.n; ++i)
        for (unsigned k = 0; k < m.n; ++k) {
            const TowerElement& e = s.V_inv.at(k, i);
            if (!e.is_integral())
                throw InvariantViolation("associated-order coordinates must be integral");
            a.basis_coords.at(k, i) = e;
        }
    return a;
}

namespace {

// rep codes are written as base-p digit tuples so the text never depends on
// the working precision
std::string witness_to_text(const GaloisLatticeModel& m,
                            const std::vector<std::vector<unsigned long>>& digits,
                            unsigned long q) {
    const unsigned long p = m.prime();
    std::ostringstream os;
    bool any = false;
    for (unsigned i = 0; i < m.n; ++i) {
        std::ostringstream coord;
        bool coord_any = false;
        for (size_t l = 0; l < digits[i].size(); ++l) {
            unsigned long code = digits[i][l];
            if (code == 0)
                continue;
            if (coord_any)
                coord << " + ";
            coord_any = true;
            if (q == p) {
                coord << code;
            } else {
                coord << "r" << code; // residue representative index
            }
            if (l > 0)
                coord << "*pi_K" << (l > 1 ? "^" + std::to_string(l) : "");
        }
        if (!coord_any)
            continue;
        if (any)
            os << " + ";
        any = true;
        os << "(" << coord.str() << ")*" << m.basis_labels[i];
    }
    if (!any)
        os << "0";
    return os.str();
}

} // namespace

OracleResult minimal_index_search(const GaloisLatticeModel& m, const OracleOptions& opts) {
    OracleResult res;
    auto [omega0, r0] = find_normal_basis_generator(m, opts.seed);
    res.R0 = r0;

    const std::vector<TowerElement> reps = m.tower->residue_representatives(m.base_level);
    const unsigned long q = (unsigned long)reps.size();
    const unsigned digits_per_coord = (unsigned)(r0 + 1);
    const unsigned total_digits = m.n * digits_per_coord;

    // class count q^(n (R0+1)) against the budget
    unsigned long total = 1;
    bool overflow = false;
    for (unsigned i = 0; i < total_digits; ++i) {
        if (total > opts.budget / q + 1) {
            overflow = true;
            break;
        }
        total *= q;
    }
    if (overflow || total > opts.budget) {
        std::ostringstream os;
        os << "enumeration needs ";
        if (overflow)
            os << "more than " << opts.budget;
        else
            os << total;
        os << " classes (budget " << opts.budget << "); q=" << q << " n=" << m.n
           << " R0=" << r0;
        throw BudgetExceeded(os.str());
    }

    // digit tables: contribution of digit value v at pi-power l
    const TowerElement pi = m.tower->uniformizer(m.base_level);
    std::vector<std::vector<TowerElement>> digit_value(digits_per_coord);
    {
        TowerElement pipow = m.tower->one(m.base_level);
        for (unsigned l = 0; l < digits_per_coord; ++l) {
            for (unsigned long v = 0; v < q; ++v)
                digit_value[l].push_back(reps[v] * pipow);
            pipow = pipow * pi;
        }
    }
    const std::vector<TowerElement> mono = base_monomials(m);

    const auto decode = [&](unsigned long idx) {
        std::vector<TowerElement> omega;
        omega.reserve(m.n);
        for (unsigned i = 0; i < m.n; ++i) {
            TowerElement c = m.tower->zero(m.base_level);
            for (unsigned l = 0; l < digits_per_coord; ++l) {
                c = c + digit_value[l][idx % q];
                idx /= q;
            }
            omega.push_back(c);
        }
        return omega;
    };

    struct Best {
        long v = 0;
        unsigned long idx = 0;
        bool set = false;
    };
    const auto scan = [&](unsigned long lo, unsigned long hi) {
        Best best;
        for (unsigned long idx = lo; idx < hi; ++idx) {
            const std::vector<TowerElement> omega = decode(idx);
            const Matrix<TowerElement> a = index_matrix(m, omega);
            long v;
            try {
                v = det_valuation_blowup(m, a, mono);
            } catch (const PrecisionExhausted&) {
                continue; // cannot beat the pilot index, so irrelevant
            }
            if (!best.set || v < best.v || (v == best.v && idx < best.idx))
                best = Best{v, idx, true};
        }
        return best;
    };

    unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    if (threads == 0)
        threads = 1;
    threads = (unsigned)std::min<unsigned long>(threads, std::max<unsigned long>(1, total / 64));

    Best best;
    if (threads <= 1) {
        best = scan(0, total);
    } else {
        std::vector<Best> partial(threads);
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::atomic<bool> failed{false};
        const unsigned long chunk = (total + threads - 1) / threads;
        for (unsigned tdx = 0; tdx < threads; ++tdx) {
            const unsigned long lo = (unsigned long)tdx * chunk;
            const unsigned long hi = std::min(total, lo + chunk);
            pool.emplace_back([&, tdx, lo, hi] {
                try {
                    partial[tdx] = scan(lo, hi);
                } catch (...) {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        if (failed)
            std::rethrow_exception(error);
        for (const Best& b : partial)
            if (b.set && (!best.set || b.v < best.v || (b.v == best.v && b.idx < best.idx)))
                best = b;
    }
    if (!best.set)
        throw PrecisionExhausted("no class produced a certified determinant");

    res.v_K_min = best.v;
    res.v_p_m = (long)m.f_K() * best.v;
    res.witness = decode(best.idx);
    res.witness_digits.assign(m.n, std::vector<unsigned long>(digits_per_coord, 0));
    {
        unsigned long idx = best.idx;
        for (unsigned i = 0; i < m.n; ++i)
            for (unsigned l = 0; l < digits_per_coord; ++l) {
                res.witness_digits[i][l] = idx % q;
                idx /= q;
            }
    }
    res.witness_text = witness_to_text(m, res.witness_digits, q);
    res.classes_enumerated = total;

    // the witness must reproduce its own index
    if (index_of_generated_module(m, res.witness) != best.v)
        throw InvariantViolation("witness failed to reproduce the minimal index");
    if (best.v > r0)
        throw InvariantViolation("enumeration exceeded the pilot index");
    return res;
}

FreenessCheck check_freeness(const OracleResult& search, const AssociatedOrder& assoc) {
    FreenessCheck fc;
    fc.free = search.v_K_min == assoc.v_K_index;
    if (fc.free)
        fc.generator = search.witness;
    return fc;
}

long index_of_generated_module_certified(
    const std::function<GaloisLatticeModel(unsigned)>& model_at,
    const std::function<std::vector<TowerElement>(const GaloisLatticeModel&)>& omega_at,
    unsigned base_precision, unsigned precision_cap) {
    for (unsigned prec = base_precision; prec <= precision_cap; prec *= 2) {
        const GaloisLatticeModel m = model_at(prec);
        try {
            return index_of_generated_module(m, omega_at(m));
        } catch (const PrecisionExhausted&) {
            // determinant zero to this precision; try harder
        }
    }
    throw NotGenerator("determinant vanished at every precision up to the cap: "
                       "omega generates no full lattice");
}

OracleResult run_oracle(const GaloisLatticeModel& m, const OracleOptions& opts) {
    OracleResult res = minimal_index_search(m, opts);
    res.assoc = associated_order_lattice(m);
    res.v_p_assoc_index = (long)m.f_K() * res.assoc.v_K_index;
    res.free_over_assoc = check_freeness(res, res.assoc).free;
    return res;
}

} // namespace galindex
