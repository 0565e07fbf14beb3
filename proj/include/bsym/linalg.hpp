#pragma once

#include <optional>
#include <vector>

#include "bsym/errors.hpp"
#include "bsym/expr.hpp"

namespace bsym {

inline bool field_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool field_is_zero(const Expr& e) { return e.is_zero(); }

// Dense matrix over an exact field (Rational or Expr). Row reduction is
// fully pivoted-by-first-nonzero and deterministic.
template <class F>
class DenseMat {
public:
    DenseMat() = default;
    DenseMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMat identity(std::size_t n) {
        DenseMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseMat operator*(const DenseMat& o) const {
        if (cols_ != o.rows_) throw InvariantViolationError("matrix shape mismatch");
        DenseMat out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (field_is_zero(at(i, k))) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out.at(i, j) = out.at(i, j) + at(i, k) * o.at(k, j);
            }
        return out;
    }

    DenseMat transpose() const {
        DenseMat out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    bool operator==(const DenseMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!field_is_zero(data_[i] - o.data_[i])) return false;
        return true;
    }

    // In-place reduced row echelon form. When transform is given it is
    // set to T with (result) = T * (original); pivots records the pivot
    // column of each of the first `rank` rows.
    std::size_t rref(DenseMat* transform = nullptr, std::vector<std::size_t>* pivots = nullptr) {
        if (transform) *transform = identity(rows_);
        if (pivots) pivots->clear();
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t sel = rows_;
            for (std::size_t r = rank; r < rows_; ++r)
                if (!field_is_zero(at(r, col))) {
                    sel = r;
                    break;
                }
            if (sel == rows_) continue;
            swap_rows(sel, rank, transform);
            F inv_pivot = F(1) / at(rank, col);
            scale_row(rank, inv_pivot, transform);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank || field_is_zero(at(r, col))) continue;
                F factor = at(r, col);
                axpy_row(r, rank, factor, transform);
            }
            if (pivots) pivots->push_back(col);
            ++rank;
        }
        return rank;
    }

    std::size_t rank() const {
        DenseMat copy = *this;
        return copy.rref();
    }

    // Basis of the right nullspace, one column per basis vector.
    DenseMat nullspace() const {
        DenseMat red = *this;
        std::vector<std::size_t> pivots;
        std::size_t rank = red.rref(nullptr, &pivots);
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t p : pivots) is_pivot[p] = true;
        std::size_t nfree = cols_ - rank;
        DenseMat out(cols_, nfree);
        std::size_t k = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (is_pivot[j]) continue;
            out.at(j, k) = F(1);
            for (std::size_t r = 0; r < rank; ++r)
                out.at(pivots[r], k) = -red.at(r, j);
            ++k;
        }
        return out;
    }

    std::optional<DenseMat> inverse() const {
        if (rows_ != cols_) throw InvariantViolationError("inverse of non-square matrix");
        DenseMat red = *this;
        DenseMat t;
        std::size_t rank = red.rref(&t);
        if (rank != rows_) return std::nullopt;
        return t;
    }

    // One exact solution of A x = b, if any.
    std::optional<std::vector<F>> solve(const std::vector<F>& b) const {
        if (b.size() != rows_) throw InvariantViolationError("rhs size mismatch");
        DenseMat aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<std::size_t> pivots;
        std::size_t rank = aug.rref(nullptr, &pivots);
        if (rank > 0 && pivots.back() == cols_) return std::nullopt;  // inconsistent
        std::vector<F> x(cols_, F(0));
        for (std::size_t r = 0; r < rank; ++r) x[pivots[r]] = aug.at(r, cols_);
        return x;
    }

private:
    void swap_rows(std::size_t a, std::size_t b, DenseMat* t) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
        if (t)
            for (std::size_t j = 0; j < t->cols_; ++j) std::swap(t->at(a, j), t->at(b, j));
    }

    void scale_row(std::size_t r, const F& c, DenseMat* t) {
        for (std::size_t j = 0; j < cols_; ++j) at(r, j) = at(r, j) * c;
        if (t)
            for (std::size_t j = 0; j < t->cols_; ++j) t->at(r, j) = t->at(r, j) * c;
    }

    // row r -= factor * row src
    void axpy_row(std::size_t r, std::size_t src, const F& factor, DenseMat* t) {
        for (std::size_t j = 0; j < cols_; ++j) at(r, j) = at(r, j) - factor * at(src, j);
        if (t)
            for (std::size_t j = 0; j < t->cols_; ++j)
                t->at(r, j) = t->at(r, j) - factor * t->at(src, j);
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> data_;
};

using RatMat = DenseMat<Rational>;
using ExprMat = DenseMat<Expr>;

}  // namespace bsym
