#ifndef GALINDEX_MATRIX_HPP
#define GALINDEX_MATRIX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "galindex/errors.hpp"
#include "galindex/scalar.hpp"

namespace galindex {

/* Dense matrix over a local-ring scalar. The scalar type must provide
 * valuation() -> Val, shift(long), inv(), effective_precision(),
 * is_zero_to_precision(), zero_like()/one_like(), and the ring operators.
 * Instantiated with PadicScalar and with TowerElement. */
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(size_t n, const T& model) {
        Matrix m(n, n, model.zero_like());
        const T one = model.one_like();
        for (size_t i = 0; i < n; ++i)
            m.at(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw InputError("matrix dimension mismatch");
        Matrix r(rows_, o.cols_, data_[0].zero_like());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < o.cols_; ++j) {
                T acc = at(i, 0) * o.at(0, j);
                for (size_t k = 1; k < cols_; ++k)
                    acc = acc + at(i, k) * o.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (cols_ != v.size())
            throw InputError("matrix/vector dimension mismatch");
        std::vector<T> r;
        r.reserve(rows_);
        for (size_t i = 0; i < rows_; ++i) {
            T acc = at(i, 0) * v[0];
            for (size_t k = 1; k < cols_; ++k)
                acc = acc + at(i, k) * v[k];
            r.push_back(acc);
        }
        return r;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b)
            return;
        for (size_t j = 0; j < cols_; ++j)
            std::swap(at(a, j), at(b, j));
    }

    void swap_cols(size_t a, size_t b) {
        if (a == b)
            return;
        for (size_t i = 0; i < rows_; ++i)
            std::swap(at(i, a), at(i, b));
    }

private:
    size_t rows_, cols_;
    std::vector<T> data_;
};

using ScalarMatrix = Matrix<PadicScalar>;

namespace detail {

/* Pick the pivot of minimal certified valuation among entries (i,j) with
 * i >= k, j >= k (ties: lowest row, then column). Returns false when every
 * remaining entry is zero to precision. Throws when an uncertified entry
 * could undercut the certified minimum, since the pivot order would then
 * depend on unknown digits. */
template <typename T>
bool pick_pivot(const Matrix<T>& m, size_t k, size_t& pi, size_t& pj, long& pval) {
    bool have_certain = false;
    long best = 0;
    size_t bi = 0, bj = 0;
    bool have_bound = false;
    long bound = 0;
    for (size_t i = k; i < m.rows(); ++i)
        for (size_t j = k; j < m.cols(); ++j) {
            const Val v = m.at(i, j).valuation();
            if (v.exact) {
                if (!have_certain || v.value < best) {
                    have_certain = true;
                    best = v.value;
                    bi = i;
                    bj = j;
                }
            } else if (!have_bound || v.value < bound) {
                have_bound = true;
                bound = v.value;
            }
        }
    if (!have_certain)
        return false;
    if (have_bound && bound < best)
        throw PrecisionExhausted("pivot order not determined at this precision");
    pi = bi;
    pj = bj;
    pval = best;
    return true;
}

template <typename T>
long min_effective_precision(const Matrix<T>& m) {
    long f = m.at(0, 0).effective_precision();
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            f = std::min(f, m.at(i, j).effective_precision());
    return f;
}

} // namespace detail

/* Valuation of the determinant, certified. Elimination with minimal-valuation
 * pivoting; the result r is accepted only when r plus the worst-case loss
 * accumulated by the eliminating pivots stays strictly below the effective
 * precision of the input. Throws PrecisionExhausted otherwise (the caller
 * retries at doubled precision). */
template <typename T>
long det_valuation(Matrix<T> m) {
    const size_t n = m.rows();
    if (n != m.cols() || n == 0)
        throw InputError("det_valuation needs a nonempty square matrix");
    const long floor0 = detail::min_effective_precision(m);
    long r = 0, loss = 0;
    for (size_t k = 0; k < n; ++k) {
        size_t pi, pj;
        long s;
        if (!detail::pick_pivot(m, k, pi, pj, s))
            throw PrecisionExhausted("determinant zero to precision");
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);
        r += s;
        if (k + 1 < n) {
            loss += s;
            const T pinv = m.at(k, k).inv();
            for (size_t i = k + 1; i < n; ++i) {
                // entries that are zero to precision still propagate their
                // uncertainty through q, so no row is skipped
                const T q = m.at(i, k) * pinv;
                for (size_t j = k; j < n; ++j)
                    m.at(i, j) = m.at(i, j) - q * m.at(k, j);
            }
        }
    }
    if (r + loss >= floor0)
        throw PrecisionExhausted("determinant certification margin violated");
    return r;
}

template <typename T>
struct SmithResult {
    std::vector<long> pivots; // ascending uniformizer exponents
    size_t rank = 0;
    bool full_rank_certified = false;
    Matrix<T> U, V, V_inv; // input = U * diag(pi^pivots) * V, over the ring
};

/* Diagonalisation over the valuation ring: input = U * S * V with U, V
 * invertible over the ring to precision and S diagonal with entries
 * pi^{s_1} | pi^{s_2} | ... Entries must be integral. When all remaining
 * entries are zero to precision the result is returned with
 * full_rank_certified = false and the pivots found so far. */
template <typename T>
SmithResult<T> smith_form(Matrix<T> m) {
    const size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0)
        throw InputError("smith_form needs a nonempty matrix");
    const T model = m.at(0, 0);
    SmithResult<T> res{{},
                       0,
                       false,
                       Matrix<T>::identity(rows, model),
                       Matrix<T>::identity(cols, model),
                       Matrix<T>::identity(cols, model)};
    const size_t steps = std::min(rows, cols);
    for (size_t k = 0; k < steps; ++k) {
        size_t pi, pj;
        long s;
        if (!detail::pick_pivot(m, k, pi, pj, s)) {
            res.rank = k;
            return res;
        }
        if (s < 0)
            throw InputError("smith_form requires integral entries");
        m.swap_rows(k, pi);
        res.U.swap_cols(k, pi);
        m.swap_cols(k, pj);
        res.V.swap_rows(k, pj);
        res.V_inv.swap_cols(k, pj);

        const T pinv = m.at(k, k).inv();
        // clear the column below the pivot
        for (size_t i = k + 1; i < rows; ++i) {
            const T q = m.at(i, k) * pinv;
            for (size_t j = k; j < cols; ++j)
                m.at(i, j) = m.at(i, j) - q * m.at(k, j);
            for (size_t a = 0; a < rows; ++a)
                res.U.at(a, k) = res.U.at(a, k) + q * res.U.at(a, i);
        }
        // clear the row right of the pivot
        for (size_t j = k + 1; j < cols; ++j) {
            const T q = m.at(k, j) * pinv;
            for (size_t i = k; i < rows; ++i)
                m.at(i, j) = m.at(i, j) - q * m.at(i, k);
            for (size_t b = 0; b < cols; ++b) {
                res.V.at(k, b) = res.V.at(k, b) + q * res.V.at(j, b);
                res.V_inv.at(b, j) = res.V_inv.at(b, j) - q * res.V_inv.at(b, k);
            }
        }
        // normalise the pivot to a plain uniformizer power
        const T unit = m.at(k, k).shift(-s);
        const T uinv = unit.inv();
        m.at(k, k) = m.at(k, k) * uinv;
        for (size_t a = 0; a < rows; ++a)
            res.U.at(a, k) = res.U.at(a, k) * unit;
        res.pivots.push_back(s);
    }
    res.rank = steps;
    res.full_rank_certified = true;
    return res;
}

/* Solve A x = b over the fraction field (x may carry denominators).
 * Full pivoting on certified minimal valuation; throws PrecisionExhausted
 * when A is singular to precision. */
template <typename T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b) {
    const size_t n = a.rows();
    if (n != a.cols() || b.size() != n)
        throw InputError("solve_linear needs a square system");
    std::vector<size_t> colperm(n);
    for (size_t i = 0; i < n; ++i)
        colperm[i] = i;
    for (size_t k = 0; k < n; ++k) {
        size_t pi, pj;
        long s;
        if (!detail::pick_pivot(a, k, pi, pj, s))
            throw PrecisionExhausted("system singular to precision");
        a.swap_rows(k, pi);
        std::swap(b[k], b[pi]);
        a.swap_cols(k, pj);
        std::swap(colperm[k], colperm[pj]);
        const T pinv = a.at(k, k).inv();
        for (size_t i = k + 1; i < n; ++i) {
            const T q = a.at(i, k) * pinv;
            for (size_t j = k; j < n; ++j)
                a.at(i, j) = a.at(i, j) - q * a.at(k, j);
            b[i] = b[i] - q * b[k];
        }
    }
    std::vector<T> x(n, b[0].zero_like());
    for (size_t k = n; k-- > 0;) {
        T acc = b[k];
        for (size_t j = k + 1; j < n; ++j)
            acc = acc - a.at(k, j) * x[j];
        x[k] = acc * a.at(k, k).inv();
    }
    std::vector<T> out(n, x[0]);
    for (size_t k = 0; k < n; ++k)
        out[colperm[k]] = x[k];
    return out;
}

} // namespace galindex

#endif
