#pragma once

#include <vector>

#include "qball/representation.hpp"

namespace qball {

/// A corner pAp for a projection p that is diagonal (0/1) in the path basis.
class CornerContext {
 public:
  /// Throws PreconditionError unless `projection` is a diagonal 0/1 matrix.
  explicit CornerContext(SparseOperator projection);

  const SparseOperator& projection() const { return projection_; }
  bool contains(int index) const { return mask_.at(static_cast<std::size_t>(index)); }
  /// Basis indices selected by the projection, ascending.
  const std::vector<int>& selected() const { return selected_; }

 private:
  SparseOperator projection_;
  std::vector<bool> mask_;
  std::vector<int> selected_;
};

/// (T^*T)^{1/2}. Uses the entrywise square root when T^*T is diagonal and
/// cross-checks it against the eigendecomposition route (1e-10).
SparseOperator modulus(const SparseOperator& t);
/// Hermitian eigendecomposition of T^*T, block by block over the connected
/// components of its sparsity pattern.
SparseOperator modulus_eigen(const SparseOperator& t);
/// Entrywise square root; throws PreconditionError if T^*T is not diagonal.
SparseOperator modulus_diagonal(const SparseOperator& t);

/// B = PBP with AB = BA = P on the interior(1) part of the corner. Computed as
/// a blockwise pseudo-inverse. Throws NotPolarDecomposable naming the first
/// interior basis vector where either identity fails.
SparseOperator corner_inverse(const SparseOperator& a, const CornerContext& ctx);

/// U = T * corner_inverse(|T|). Requires T = PTP.
SparseOperator phase_in_corner(const SparseOperator& t, const CornerContext& ctx);

}  // namespace qball
