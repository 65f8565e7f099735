#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace spinlsm {

using bint = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries.
struct IMat {
    int rows = 0, cols = 0;
    std::vector<bint> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

    bint& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const bint& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static IMat identity(int n);
};

IMat matmul(const IMat& x, const IMat& y);
std::vector<bint> matvec(const IMat& x, const std::vector<bint>& v);

/// Incremental row-echelon reduction of an integer row space. Rows are kept
/// with a strictly increasing pivot-column profile; inserting a row preserves
/// the generated row lattice. Used to shrink the tall cocycle-condition matrix
/// before running Smith reduction.
class RowEchelon {
  public:
    explicit RowEchelon(int cols) : cols_(cols) {}
    void insert(std::vector<bint> row);
    IMat to_matrix() const;
    int cols() const { return cols_; }

  private:
    int cols_;
    std::vector<std::vector<bint>> rows_;  // sorted by pivot column
    std::vector<int> pivot_;               // pivot column per stored row
};

enum SnfTrack : unsigned {
    TRACK_U = 1u,     // S = U * A * V
    TRACK_UINV = 2u,
    TRACK_V = 4u,
    TRACK_VINV = 8u,
};

struct SnfResult {
    std::vector<bint> diag;  // nonzero invariant entries, d1 | d2 | ...
    int rank = 0;
    IMat U, Uinv, V, Vinv;   // only the tracked ones are populated
};

/// Smith normal form U*A*V = diag(d1..dr, 0...) with d1 | d2 | ... | dr > 0.
SnfResult smith(IMat A, unsigned track);

}  // namespace spinlsm
