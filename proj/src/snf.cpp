#include "spinlsm/snf.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinlsm {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat matmul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
    IMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const bint& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y.at(k, j) != 0) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

std::vector<bint> matvec(const IMat& x, const std::vector<bint>& v) {
    if ((int)v.size() != x.cols) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<bint> out(x.rows);
    for (int i = 0; i < x.rows; ++i) {
        bint s = 0;
        for (int j = 0; j < x.cols; ++j)
            if (x.at(i, j) != 0 && v[j] != 0) s += x.at(i, j) * v[j];
        out[i] = std::move(s);
    }
    return out;
}

void RowEchelon::insert(std::vector<bint> row) {
    if ((int)row.size() != cols_) throw std::invalid_argument("RowEchelon: bad row size");
    int start = 0;
    for (std::size_t r = 0; r < rows_.size();) {
        // locate the first nonzero of the incoming row
        int p = start;
        while (p < cols_ && row[p] == 0) ++p;
        if (p == cols_) return;
        start = p;
        // skip stored rows with pivots left of p
        if (pivot_[r] < p) { ++r; continue; }
        if (pivot_[r] > p) break;
        // same pivot: Euclid between row and rows_[r]
        while (row[p] != 0) {
            bint q = rows_[r][p] / row[p];
            if (q != 0)
                for (int j = p; j < cols_; ++j) rows_[r][j] -= q * row[j];
            std::swap(rows_[r], row);
        }
    }
    int p = start;
    while (p < cols_ && row[p] == 0) ++p;
    if (p == cols_) return;
    if (row[p] < 0)
        for (int j = p; j < cols_; ++j) row[j] = -row[j];
    // insert keeping pivot order
    auto it = std::lower_bound(pivot_.begin(), pivot_.end(), p);
    std::size_t idx = it - pivot_.begin();
    pivot_.insert(it, p);
    rows_.insert(rows_.begin() + idx, std::move(row));
}

IMat RowEchelon::to_matrix() const {
    IMat m((int)rows_.size(), cols_);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = rows_[i][j];
    return m;
}

namespace {

struct Worker {
    IMat A;
    bool tu, tui, tv, tvi;
    IMat U, Uinv, V, Vinv;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
        if (tu) for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
        if (tui) for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
        if (tv) for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
        if (tvi) for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    // row_i -= q * row_j
    void row_sub(int i, int j, const bint& q) {
        if (q == 0) return;
        for (int c = 0; c < A.cols; ++c) A.at(i, c) -= q * A.at(j, c);
        if (tu) for (int c = 0; c < U.cols; ++c) U.at(i, c) -= q * U.at(j, c);
        if (tui) for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, j) += q * Uinv.at(r, i);
    }
    // col_i -= q * col_j
    void col_sub(int i, int j, const bint& q) {
        if (q == 0) return;
        for (int r = 0; r < A.rows; ++r) A.at(r, i) -= q * A.at(r, j);
        if (tv) for (int r = 0; r < V.rows; ++r) V.at(r, i) -= q * V.at(r, j);
        if (tvi) for (int c = 0; c < Vinv.cols; ++c) Vinv.at(j, c) += q * Vinv.at(i, c);
    }
    void row_negate(int i) {
        for (int c = 0; c < A.cols; ++c) A.at(i, c) = -A.at(i, c);
        if (tu) for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
        if (tui) for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
    }
};

}  // namespace

SnfResult smith(IMat A, unsigned track) {
    Worker w;
    w.A = std::move(A);
    w.tu = track & TRACK_U;
    w.tui = track & TRACK_UINV;
    w.tv = track & TRACK_V;
    w.tvi = track & TRACK_VINV;
    if (w.tu) w.U = IMat::identity(w.A.rows);
    if (w.tui) w.Uinv = IMat::identity(w.A.rows);
    if (w.tv) w.V = IMat::identity(w.A.cols);
    if (w.tvi) w.Vinv = IMat::identity(w.A.cols);

    const int n = std::min(w.A.rows, w.A.cols);
    int k = 0;
    while (k < n) {
        // find smallest nonzero entry in the trailing submatrix
        int pi = -1, pj = -1;
        for (int i = k; i < w.A.rows; ++i)
            for (int j = k; j < w.A.cols; ++j) {
                const bint& v = w.A.at(i, j);
                if (v == 0) continue;
                if (pi < 0 || abs(v) < abs(w.A.at(pi, pj))) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        w.row_swap(k, pi);
        w.col_swap(k, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = k + 1; i < w.A.rows; ++i) {
                if (w.A.at(i, k) == 0) continue;
                bint q = w.A.at(i, k) / w.A.at(k, k);
                w.row_sub(i, k, q);
                if (w.A.at(i, k) != 0) { w.row_swap(k, i); clean = false; }
            }
            for (int j = k + 1; j < w.A.cols; ++j) {
                if (w.A.at(k, j) == 0) continue;
                bint q = w.A.at(k, j) / w.A.at(k, k);
                w.col_sub(j, k, q);
                if (w.A.at(k, j) != 0) { w.col_swap(k, j); clean = false; }
            }
        }
        if (w.A.at(k, k) < 0) w.row_negate(k);
        // divisibility: pivot must divide every later entry
        bool redo = false;
        for (int i = k + 1; i < w.A.rows && !redo; ++i)
            for (int j = k + 1; j < w.A.cols && !redo; ++j)
                if (w.A.at(i, j) % w.A.at(k, k) != 0) {
                    w.row_sub(k, i, bint(-1));  // add row i to row k
                    redo = true;
                }
        if (!redo) ++k;
    }

    SnfResult res;
    res.rank = k;
    for (int i = 0; i < k; ++i) res.diag.push_back(w.A.at(i, i));
    res.U = std::move(w.U);
    res.Uinv = std::move(w.Uinv);
    res.V = std::move(w.V);
    res.Vinv = std::move(w.Vinv);
    return res;
}

}  // namespace spinlsm
