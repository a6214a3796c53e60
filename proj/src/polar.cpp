#include "qball/polar.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "qball/error.hpp"

namespace qball {

namespace {

using DenseMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kCrossCheckTol = 1e-10;
constexpr double kCornerTol = 1e-10;

// Connected components of the undirected graph whose edges are the stored
// entries of `m` (restricted to `keep`, if given).
std::vector<std::vector<int>> components(const sparse::CscMatrix& m, const std::vector<bool>* keep = nullptr) {
  std::vector<int> parent(static_cast<std::size_t>(m.cols));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int c = 0; c < m.cols; ++c)
    for (int p = m.col_ptr[c]; p < m.col_ptr[c + 1]; ++p) {
      const int r = m.row_idx[p];
      if (keep && (!(*keep)[r] || !(*keep)[c])) continue;
      parent[find(r)] = find(c);
    }
  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(m.cols));
  for (int i = 0; i < m.cols; ++i)
    if (!keep || (*keep)[i]) by_root[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& b : by_root)
    if (!b.empty()) out.push_back(std::move(b));
  return out;
}

DenseMatrix gather(const sparse::CscMatrix& m, const std::vector<int>& idx) {
  std::vector<int> local(static_cast<std::size_t>(m.rows), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) local[idx[i]] = static_cast<int>(i);
  const auto k = static_cast<Eigen::Index>(idx.size());
  DenseMatrix out = DenseMatrix::Zero(k, k);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const int c = idx[j];
    for (int p = m.col_ptr[c]; p < m.col_ptr[c + 1]; ++p)
      if (local[m.row_idx[p]] >= 0) out(local[m.row_idx[p]], static_cast<Eigen::Index>(j)) = m.values[p];
  }
  return out;
}

void scatter(const DenseMatrix& block, const std::vector<int>& idx, std::vector<sparse::Triplet>& out) {
  for (Eigen::Index j = 0; j < block.cols(); ++j)
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      if (block(i, j) != Complex(0.0)) out.push_back({idx[i], idx[j], block(i, j)});
}

sparse::CscMatrix gram(const SparseOperator& t) { return sparse::multiply(sparse::adjoint(t.matrix()), t.matrix()); }

}  // namespace

// ---- corner ---------------------------------------------------------------

CornerContext::CornerContext(SparseOperator projection) : projection_(std::move(projection)) {
  const auto& m = projection_.matrix();
  if (!m.is_diagonal()) throw PreconditionError("corner projection must be diagonal in the path basis");
  mask_.assign(static_cast<std::size_t>(m.cols), false);
  for (int c = 0; c < m.cols; ++c) {
    const Complex v = m.at(c, c);
    if (v == Complex(1.0)) {
      mask_[c] = true;
      selected_.push_back(c);
    } else if (v != Complex(0.0)) {
      throw PreconditionError("corner projection must have 0/1 diagonal entries");
    }
  }
}

// ---- modulus --------------------------------------------------------------

SparseOperator modulus_diagonal(const SparseOperator& t) {
  const auto g = gram(t);
  if (!g.is_diagonal()) throw PreconditionError("T^*T is not diagonal in the path basis");
  std::vector<Complex> diag(static_cast<std::size_t>(g.cols));
  for (int c = 0; c < g.cols; ++c) diag[c] = std::sqrt(std::max(0.0, g.at(c, c).real()));
  return SparseOperator(t.space(), sparse::CscMatrix::diagonal(diag));
}

SparseOperator modulus_eigen(const SparseOperator& t) {
  const auto g = gram(t);
  std::vector<sparse::Triplet> trips;
  for (const auto& comp : components(g)) {
    const DenseMatrix block = gather(g, comp);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(block);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const DenseMatrix root = es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    scatter(root, comp, trips);
  }
  auto m = sparse::CscMatrix::from_triplets(g.rows, g.cols, std::move(trips));
  return SparseOperator(t.space(), sparse::prune(m, 1e-15));
}

SparseOperator modulus(const SparseOperator& t) {
  const auto g = gram(t);
  SparseOperator general = modulus_eigen(t);
  if (!g.is_diagonal()) return general;
  SparseOperator fast = modulus_diagonal(t);
  const double gap = sparse::add(fast.matrix(), general.matrix(), 1.0, -1.0).max_abs();
  if (gap > kCrossCheckTol)
    throw std::logic_error("modulus routes disagree by " + std::to_string(gap));
  return fast;
}

// ---- corner inverse and phase ---------------------------------------------

namespace {

void require_in_corner(const SparseOperator& a, const CornerContext& ctx, const char* what) {
  const auto& m = a.matrix();
  for (int c = 0; c < m.cols; ++c)
    for (int p = m.col_ptr[c]; p < m.col_ptr[c + 1]; ++p)
      if (!ctx.contains(c) || !ctx.contains(m.row_idx[p]))
        throw PreconditionError(std::string(what) + " is not supported on the corner");
}

}  // namespace

SparseOperator corner_inverse(const SparseOperator& a, const CornerContext& ctx) {
  if (a.space() != ctx.projection().space()) throw PreconditionError("corner and operator use different spaces");
  require_in_corner(a, ctx, "operator");

  std::vector<bool> keep(static_cast<std::size_t>(a.dimension()), false);
  for (int i : ctx.selected()) keep[i] = true;

  std::vector<sparse::Triplet> trips;
  for (const auto& comp : components(a.matrix(), &keep)) {
    const DenseMatrix block = gather(a.matrix(), comp);
    Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod(block);
    cod.setThreshold(1e-12);
    scatter(cod.pseudoInverse(), comp, trips);
  }
  SparseOperator b(a.space(), sparse::prune(sparse::CscMatrix::from_triplets(a.dimension(), a.dimension(),
                                                                               std::move(trips)),
                                             1e-15));

  std::vector<int> cols;
  for (int i : a.space()->interior(std::min(1, a.space()->cutoff())))
    if (ctx.contains(i)) cols.push_back(i);
  const SparseOperator& p = ctx.projection();
  const auto ab = sparse::add(sparse::multiply(a.matrix(), b.matrix()), p.matrix(), 1.0, -1.0);
  const auto ba = sparse::add(sparse::multiply(b.matrix(), a.matrix()), p.matrix(), 1.0, -1.0);
  const auto n_ab = sparse::serial::column_norms(ab, cols);
  const auto n_ba = sparse::serial::column_norms(ba, cols);
  for (std::size_t t = 0; t < cols.size(); ++t)
    if (n_ab[t] > kCornerTol || n_ba[t] > kCornerTol)
      throw NotPolarDecomposable("not polar decomposable in corner: modulus singular at basis vector " +
                                 a.space()->label(cols[t]));
  return b;
}

SparseOperator phase_in_corner(const SparseOperator& t, const CornerContext& ctx) {
  require_in_corner(t, ctx, "operator");
  if (ctx.selected().empty()) return SparseOperator::zero(t.space());
  return t * corner_inverse(modulus(t), ctx);
}

}  // namespace qball
