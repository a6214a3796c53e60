#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qball::sparse {

using Complex = std::complex<double>;

struct Triplet {
  int row = 0;
  int col = 0;
  Complex value;
};

/// Compressed sparse column matrix. Row indices are sorted within each
/// column and unique.
struct CscMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_ptr{0};
  std::vector<int> row_idx;
  std::vector<Complex> values;

  static CscMatrix zero(int rows, int cols);
  static CscMatrix identity(int n);
  static CscMatrix diagonal(std::span<const Complex> diag);
  /// Duplicates are summed; exact zeros are dropped.
  static CscMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  std::size_t nnz() const { return values.size(); }
  Complex at(int row, int col) const;
  std::vector<Triplet> triplets() const;
  bool is_diagonal() const;
  double max_abs() const;

  friend bool operator==(const CscMatrix&, const CscMatrix&) = default;
};

CscMatrix adjoint(const CscMatrix& a);
/// alpha * a + beta * b. Entries that cancel exactly are dropped.
CscMatrix add(const CscMatrix& a, const CscMatrix& b, Complex alpha = 1.0, Complex beta = 1.0);
CscMatrix scale(const CscMatrix& a, Complex s);
/// Drops entries with magnitude below `threshold`.
CscMatrix prune(const CscMatrix& a, double threshold);

// Serial reference kernels. Straightforward and kept for testing the
// parallel ones; summation order matches so results agree bitwise.
namespace serial {
CscMatrix multiply(const CscMatrix& a, const CscMatrix& b);
std::vector<double> column_norms(const CscMatrix& a, std::span<const int> cols);
}  // namespace serial

// OpenMP kernels, parallel over output columns.
namespace parallel {
CscMatrix multiply(const CscMatrix& a, const CscMatrix& b);
std::vector<double> column_norms(const CscMatrix& a, std::span<const int> cols);
}  // namespace parallel

inline CscMatrix multiply(const CscMatrix& a, const CscMatrix& b) { return parallel::multiply(a, b); }

/// max_j ||a e_j||_2 over the listed columns (0 for an empty list).
double max_column_norm(const CscMatrix& a, std::span<const int> cols);

}  // namespace qball::sparse
