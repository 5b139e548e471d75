#pragma once

#include <vector>

#include "pstark/numutil.hpp"

namespace pstark {

// Dense exact matrices, row-major.  Sizes here are tiny (<= ~30 rows), so the
// classic cubic algorithms are used throughout.
template <class T>
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
    T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    Mat transposed() const {
        Mat m(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using ZMat = Mat<Int>;
using QMat = Mat<Rat>;

ZMat mul(const ZMat& x, const ZMat& y);
QMat mul(const QMat& x, const QMat& y);

// Column-style Hermite normal form: H = A*U for unimodular U.  Zero columns
// are dropped; the remaining columns have strictly increasing pivot rows,
// positive pivots, zeros above each pivot, and entries to the left of a pivot
// reduced into [0, pivot).  This makes H canonical for the column lattice.
ZMat hnf_cols(const ZMat& A);

// det of a square ZMat (fraction-free Gaussian elimination)
Int det(const ZMat& A);
Rat det(const QMat& A);

struct SmithResult {
    ZMat d;       // diagonal, d(i,i) | d(i+1,i+1)
    ZMat u, v;    // u*A*v = d, both unimodular
    ZMat u_inv;
};
SmithResult smith(const ZMat& A);

// Solve A x = b over Q.  Returns false when inconsistent.  A need not be
// square; when the solution space is positive-dimensional an arbitrary
// solution is produced.
bool solve(const QMat& A, const std::vector<Rat>& b, std::vector<Rat>& x);

QMat inverse(const QMat& A); // throws rank_mismatch if singular

} // namespace pstark
