#pragma once

#include <utility>
#include <vector>

#include "dfc/errors.hpp"
#include "dfc/rational.hpp"

namespace dfc {

/// Dense matrix over Q.  Row-major; rectangular by construction.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    explicit ExactMatrix(const std::vector<std::vector<Rational>>& rows) {
        rows_ = rows.size();
        cols_ = rows.empty() ? 0 : rows[0].size();
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw error("ragged matrix rows");
            for (const auto& x : r) e_.push_back(x);
        }
    }

    size_t row_count() const { return rows_; }
    size_t col_count() const { return cols_; }

    Rational& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    /// In-place reduced row echelon form with deterministic pivoting
    /// (first nonzero row in column order).  Returns the pivot columns.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t p = row;
            while (p < rows_ && at(p, col).is_zero()) ++p;
            if (p == rows_) continue;
            if (p != row)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
            Rational inv = at(row, col).inverse();
            for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                Rational f = at(i, col);
                for (size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::vector<Rational> mul_vec(const std::vector<Rational>& v) const {
        if (v.size() != cols_) throw error("matrix-vector size mismatch");
        std::vector<Rational> out(rows_);
        for (size_t i = 0; i < rows_; ++i) {
            Rational acc;
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.  Zero vectors pass through.
inline std::vector<Rational> primitive_vector(const std::vector<Rational>& v) {
    Integer num = 0, den = 1;
    int lead = 0;
    for (const auto& r : v) {
        if (r.is_zero()) continue;
        if (lead == 0) lead = r.sign();
        Integer g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), r.num().get_mpz_t());
        num = g;
        Integer l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
        den = l;
    }
    if (lead == 0) return v;
    Rational scale = Rational(den, num);
    if (lead < 0) scale = -scale;
    std::vector<Rational> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = scale * v[i];
    return out;
}

/// Canonical right-kernel basis from the RREF: one vector per free column f
/// (in increasing column order), normalized to a primitive integer vector
/// with positive first nonzero entry.
inline std::vector<std::vector<Rational>> nullspace(ExactMatrix m) {
    size_t n = m.col_count();
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(n, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n);
        v[f] = Rational(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            if (pivots[i] < f) v[pivots[i]] = -m.at(i, f);
        basis.push_back(primitive_vector(v));
    }
    return basis;
}

} // namespace dfc
