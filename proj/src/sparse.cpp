#include "qball/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <omp.h>

#include "qball/error.hpp"

namespace qball::sparse {

CscMatrix CscMatrix::zero(int rows, int cols) {
  CscMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.col_ptr.assign(static_cast<std::size_t>(cols) + 1, 0);
  return m;
}

CscMatrix CscMatrix::identity(int n) {
  std::vector<Complex> d(static_cast<std::size_t>(n), 1.0);
  return diagonal(d);
}

CscMatrix CscMatrix::diagonal(std::span<const Complex> diag) {
  const int n = static_cast<int>(diag.size());
  CscMatrix m = zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (diag[j] != Complex{}) {
      m.row_idx.push_back(j);
      m.values.push_back(diag[j]);
    }
    m.col_ptr[j + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

CscMatrix CscMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw PreconditionError("triplet outside matrix bounds");
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  CscMatrix m = zero(rows, cols);
  std::size_t i = 0;
  for (int j = 0; j < cols; ++j) {
    while (i < triplets.size() && triplets[i].col == j) {
      const int r = triplets[i].row;
      Complex v{};
      while (i < triplets.size() && triplets[i].col == j && triplets[i].row == r) v += triplets[i++].value;
      if (v != Complex{}) {
        m.row_idx.push_back(r);
        m.values.push_back(v);
      }
    }
    m.col_ptr[j + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

Complex CscMatrix::at(int row, int col) const {
  auto first = row_idx.begin() + col_ptr[col];
  auto last = row_idx.begin() + col_ptr[col + 1];
  auto it = std::lower_bound(first, last, row);
  if (it == last || *it != row) return {};
  return values[static_cast<std::size_t>(it - row_idx.begin())];
}

std::vector<Triplet> CscMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (int j = 0; j < cols; ++j)
    for (int p = col_ptr[j]; p < col_ptr[j + 1]; ++p) out.push_back({row_idx[p], j, values[p]});
  return out;
}

bool CscMatrix::is_diagonal() const {
  for (int j = 0; j < cols; ++j)
    for (int p = col_ptr[j]; p < col_ptr[j + 1]; ++p)
      if (row_idx[p] != j) return false;
  return true;
}

double CscMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

CscMatrix adjoint(const CscMatrix& a) {
  CscMatrix t = CscMatrix::zero(a.cols, a.rows);
  std::vector<int> count(static_cast<std::size_t>(a.rows) + 1, 0);
  for (int r : a.row_idx) ++count[r + 1];
  for (int r = 0; r < a.rows; ++r) count[r + 1] += count[r];
  t.col_ptr = count;
  t.row_idx.resize(a.nnz());
  t.values.resize(a.nnz());
  std::vector<int> next(count.begin(), count.end() - 1);
  for (int j = 0; j < a.cols; ++j)
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      const int dst = next[a.row_idx[p]]++;
      t.row_idx[dst] = j;
      t.values[dst] = std::conj(a.values[p]);
    }
  return t;
}

CscMatrix add(const CscMatrix& a, const CscMatrix& b, Complex alpha, Complex beta) {
  if (a.rows != b.rows || a.cols != b.cols) throw PreconditionError("add: shape mismatch");
  CscMatrix m = CscMatrix::zero(a.rows, a.cols);
  m.row_idx.reserve(a.nnz() + b.nnz());
  m.values.reserve(a.nnz() + b.nnz());
  auto emit = [&](int r, Complex v) {
    if (v != Complex{}) {
      m.row_idx.push_back(r);
      m.values.push_back(v);
    }
  };
  for (int j = 0; j < a.cols; ++j) {
    int p = a.col_ptr[j], pe = a.col_ptr[j + 1];
    int q = b.col_ptr[j], qe = b.col_ptr[j + 1];
    while (p < pe || q < qe) {
      if (q >= qe || (p < pe && a.row_idx[p] < b.row_idx[q])) {
        emit(a.row_idx[p], alpha * a.values[p]);
        ++p;
      } else if (p >= pe || b.row_idx[q] < a.row_idx[p]) {
        emit(b.row_idx[q], beta * b.values[q]);
        ++q;
      } else {
        emit(a.row_idx[p], alpha * a.values[p] + beta * b.values[q]);
        ++p;
        ++q;
      }
    }
    m.col_ptr[j + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

CscMatrix scale(const CscMatrix& a, Complex s) {
  return add(a, CscMatrix::zero(a.rows, a.cols), s, 0.0);
}

CscMatrix prune(const CscMatrix& a, double threshold) {
  CscMatrix m = CscMatrix::zero(a.rows, a.cols);
  for (int j = 0; j < a.cols; ++j) {
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p)
      if (std::abs(a.values[p]) >= threshold && a.values[p] != Complex{}) {
        m.row_idx.push_back(a.row_idx[p]);
        m.values.push_back(a.values[p]);
      }
    m.col_ptr[j + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

namespace {

void check_product_shape(const CscMatrix& a, const CscMatrix& b) {
  if (a.cols != b.rows) throw PreconditionError("multiply: inner dimensions differ");
}

}  // namespace

namespace serial {

CscMatrix multiply(const CscMatrix& a, const CscMatrix& b) {
  check_product_shape(a, b);
  CscMatrix m = CscMatrix::zero(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    std::map<int, Complex> acc;
    for (int q = b.col_ptr[j]; q < b.col_ptr[j + 1]; ++q) {
      const int k = b.row_idx[q];
      for (int p = a.col_ptr[k]; p < a.col_ptr[k + 1]; ++p) acc[a.row_idx[p]] += a.values[p] * b.values[q];
    }
    for (const auto& [r, v] : acc)
      if (v != Complex{}) {
        m.row_idx.push_back(r);
        m.values.push_back(v);
      }
    m.col_ptr[j + 1] = static_cast<int>(m.values.size());
  }
  return m;
}

std::vector<double> column_norms(const CscMatrix& a, std::span<const int> cols) {
  std::vector<double> out(cols.size(), 0.0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int j = cols[c];
    double s = 0.0;
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) s += std::norm(a.values[p]);
    out[c] = std::sqrt(s);
  }
  return out;
}

}  // namespace serial

namespace parallel {

CscMatrix multiply(const CscMatrix& a, const CscMatrix& b) {
  check_product_shape(a, b);
  const int ncols = b.cols;
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(ncols));
  std::vector<std::vector<Complex>> col_vals(static_cast<std::size_t>(ncols));

#pragma omp parallel
  {
    // Dense accumulator with a touched-row list, one per thread.
    std::vector<Complex> acc(static_cast<std::size_t>(a.rows));
    std::vector<char> seen(static_cast<std::size_t>(a.rows), 0);
    std::vector<int> touched;
#pragma omp for schedule(dynamic, 64)
    for (int j = 0; j < ncols; ++j) {
      touched.clear();
      for (int q = b.col_ptr[j]; q < b.col_ptr[j + 1]; ++q) {
        const int k = b.row_idx[q];
        const Complex bv = b.values[q];
        for (int p = a.col_ptr[k]; p < a.col_ptr[k + 1]; ++p) {
          const int r = a.row_idx[p];
          if (!seen[r]) {
            seen[r] = 1;
            acc[r] = Complex{};
            touched.push_back(r);
          }
          acc[r] += a.values[p] * bv;
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& rows = col_rows[j];
      auto& vals = col_vals[j];
      for (int r : touched) {
        if (acc[r] != Complex{}) {
          rows.push_back(r);
          vals.push_back(acc[r]);
        }
        seen[r] = 0;
      }
    }
  }

  CscMatrix m = CscMatrix::zero(a.rows, ncols);
  for (int j = 0; j < ncols; ++j) m.col_ptr[j + 1] = m.col_ptr[j] + static_cast<int>(col_rows[j].size());
  m.row_idx.resize(static_cast<std::size_t>(m.col_ptr[ncols]));
  m.values.resize(m.row_idx.size());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ncols; ++j) {
    std::copy(col_rows[j].begin(), col_rows[j].end(), m.row_idx.begin() + m.col_ptr[j]);
    std::copy(col_vals[j].begin(), col_vals[j].end(), m.values.begin() + m.col_ptr[j]);
  }
  return m;
}

std::vector<double> column_norms(const CscMatrix& a, std::span<const int> cols) {
  std::vector<double> out(cols.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(cols.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const int j = cols[static_cast<std::size_t>(c)];
    double s = 0.0;
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) s += std::norm(a.values[p]);
    out[static_cast<std::size_t>(c)] = std::sqrt(s);
  }
  return out;
}

}  // namespace parallel

double max_column_norm(const CscMatrix& a, std::span<const int> cols) {
  for (int j : cols)
    if (j < 0 || j >= a.cols) throw PreconditionError("column index out of range");
  auto norms = parallel::column_norms(a, cols);
  double m = 0.0;
  for (double v : norms) m = std::max(m, v);
  return m;
}

}  // namespace qball::sparse
