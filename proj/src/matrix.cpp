#include "pstark/matrix.hpp"

namespace pstark {

ZMat mul(const ZMat& x, const ZMat& y) {
    require(x.cols == y.rows, errc::inconsistent_dimensions, "matrix product shape");
    ZMat r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

QMat mul(const QMat& x, const QMat& y) {
    require(x.cols == y.rows, errc::inconsistent_dimensions, "matrix product shape");
    QMat r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

// Row HNF of A (row ops only): pivot columns strictly increase, pivots
// positive, entries below a pivot zero, entries above reduced mod the pivot.
static ZMat hnf_rows(ZMat A) {
    size_t r = 0;
    for (size_t c = 0; c < A.cols && r < A.rows; ++c) {
        // clear column c below row r with Euclidean row ops
        for (;;) {
            size_t piv = r;
            bool any = false;
            for (size_t i = r; i < A.rows; ++i)
                if (A(i, c) != 0 && (!any || abs(A(i, c)) < abs(A(piv, c)))) { piv = i; any = true; }
            if (!any) break;
            for (size_t j = 0; j < A.cols; ++j) std::swap(A(piv, j), A(r, j));
            bool done = true;
            for (size_t i = r + 1; i < A.rows; ++i) {
                if (A(i, c) == 0) continue;
                Int q = fdiv(A(i, c), A(r, c));
                for (size_t j = c; j < A.cols; ++j) A(i, j) -= q * A(r, j);
                if (A(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (A(r, c) == 0) continue;
        if (A(r, c) < 0)
            for (size_t j = 0; j < A.cols; ++j) A(r, j) = -A(r, j);
        for (size_t i = 0; i < r; ++i) {
            Int q = fdiv(A(i, c), A(r, c));
            if (q == 0) continue;
            for (size_t j = 0; j < A.cols; ++j) A(i, j) -= q * A(r, j);
        }
        ++r;
    }
    A.rows = r;
    A.a.resize(r * A.cols);
    return A;
}

ZMat hnf_cols(const ZMat& A) { return hnf_rows(A.transposed()).transposed(); }

Int det(const ZMat& A) {
    require(A.rows == A.cols, errc::rank_mismatch, "det of non-square");
    // Bareiss
    ZMat m = A;
    size_t n = m.rows;
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(s, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

Rat det(const QMat& A) {
    require(A.rows == A.cols, errc::rank_mismatch, "det of non-square");
    QMat m = A;
    size_t n = m.rows;
    Rat d(1);
    for (size_t k = 0; k < n; ++k) {
        size_t s = k;
        while (s < n && m(s, k) == 0) ++s;
        if (s == n) return Rat(0);
        if (s != k) {
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(s, j));
            d = -d;
        }
        d *= m(k, k);
        Rat inv = 1 / m(k, k);
        for (size_t i = k + 1; i < n; ++i) {
            Rat f = m(i, k) * inv;
            if (f == 0) continue;
            for (size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

SmithResult smith(const ZMat& A) {
    SmithResult s;
    s.d = A;
    size_t n = A.rows, m = A.cols;
    s.u = ZMat::identity(n);
    s.u_inv = ZMat::identity(n);
    s.v = ZMat::identity(m);
    ZMat& d = s.d;

    auto row_op = [&](size_t i, size_t k, const Int& q) { // row_i -= q*row_k
        for (size_t j = 0; j < m; ++j) d(i, j) -= q * d(k, j);
        for (size_t j = 0; j < n; ++j) s.u(i, j) -= q * s.u(k, j);
        for (size_t j = 0; j < n; ++j) s.u_inv(j, k) += q * s.u_inv(j, i);
    };
    auto col_op = [&](size_t j, size_t k, const Int& q) { // col_j -= q*col_k
        for (size_t i = 0; i < n; ++i) d(i, j) -= q * d(i, k);
        for (size_t i = 0; i < m; ++i) s.v(i, j) -= q * s.v(i, k);
    };
    auto row_swap = [&](size_t i, size_t k) {
        for (size_t j = 0; j < m; ++j) std::swap(d(i, j), d(k, j));
        for (size_t j = 0; j < n; ++j) std::swap(s.u(i, j), s.u(k, j));
        for (size_t j = 0; j < n; ++j) std::swap(s.u_inv(j, i), s.u_inv(j, k));
    };
    auto col_swap = [&](size_t j, size_t k) {
        for (size_t i = 0; i < n; ++i) std::swap(d(i, j), d(i, k));
        for (size_t i = 0; i < m; ++i) std::swap(s.v(i, j), s.v(i, k));
    };

    size_t t = 0;
    while (t < n && t < m) {
        // find nonzero pivot of least absolute value
        size_t pi = t, pj = t;
        bool any = false;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < m; ++j)
                if (d(i, j) != 0 && (!any || abs(d(i, j)) < abs(d(pi, pj)))) { pi = i; pj = j; any = true; }
        if (!any) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = true;
        for (size_t i = t + 1; i < n; ++i)
            if (d(i, t) != 0) {
                row_op(i, t, fdiv(d(i, t), d(t, t)));
                if (d(i, t) != 0) clean = false;
            }
        for (size_t j = t + 1; j < m; ++j)
            if (d(t, j) != 0) {
                col_op(j, t, fdiv(d(t, j), d(t, t)));
                if (d(t, j) != 0) clean = false;
            }
        if (!clean) continue;
        // divisibility fixup: d(t,t) must divide everything below-right
        bool redo = false;
        for (size_t i = t + 1; i < n && !redo; ++i)
            for (size_t j = t + 1; j < m && !redo; ++j)
                if (fmod(d(i, j), d(t, t)) != 0) {
                    row_op(t, i, Int(-1)); // add row i into row t
                    redo = true;
                }
        if (redo) continue;
        if (d(t, t) < 0) {
            for (size_t j = 0; j < m; ++j) d(t, j) = -d(t, j);
            for (size_t j = 0; j < n; ++j) s.u(t, j) = -s.u(t, j);
            for (size_t j = 0; j < n; ++j) s.u_inv(j, t) = -s.u_inv(j, t);
        }
        ++t;
    }
    return s;
}

bool solve(const QMat& A, const std::vector<Rat>& b, std::vector<Rat>& x) {
    require(b.size() == A.rows, errc::inconsistent_dimensions, "solve shape");
    size_t n = A.rows, m = A.cols;
    QMat w(n, m + 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) w(i, j) = A(i, j);
        w(i, m) = b[i];
    }
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < m && r < n; ++c) {
        size_t s = r;
        while (s < n && w(s, c) == 0) ++s;
        if (s == n) continue;
        for (size_t j = 0; j <= m; ++j) std::swap(w(r, j), w(s, j));
        Rat inv = 1 / w(r, c);
        for (size_t j = c; j <= m; ++j) w(r, j) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == r || w(i, c) == 0) continue;
            Rat f = w(i, c);
            for (size_t j = c; j <= m; ++j) w(i, j) -= f * w(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < n; ++i)
        if (w(i, m) != 0) return false;
    x.assign(m, Rat(0));
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = w(i, m);
    return true;
}

QMat inverse(const QMat& A) {
    require(A.rows == A.cols, errc::rank_mismatch, "inverse of non-square");
    size_t n = A.rows;
    QMat w(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) w(i, j) = A(i, j);
        w(i, n + i) = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t s = c;
        while (s < n && w(s, c) == 0) ++s;
        require(s < n, errc::rank_mismatch, "singular matrix");
        if (s != c)
            for (size_t j = 0; j < 2 * n; ++j) std::swap(w(c, j), w(s, j));
        Rat inv = 1 / w(c, c);
        for (size_t j = 0; j < 2 * n; ++j) w(c, j) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            Rat f = w(i, c);
            for (size_t j = 0; j < 2 * n; ++j) w(i, j) -= f * w(c, j);
        }
    }
    QMat out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out(i, j) = w(i, n + j);
    return out;
}

} // namespace pstark
