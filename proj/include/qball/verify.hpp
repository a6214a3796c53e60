#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qball/polar.hpp"
#include "qball/representation.hpp"
#include "qball/word.hpp"

namespace qball {

/// Where a check was run.
struct CheckContext {
  int n = 0;
  double q = 0.0;  // 0 when the check does not depend on q
  int cutoff = 0;
  std::string rep;  // empty when the check is not tied to a representation
};

/// Residual record of one identity LHS = RHS, measured as the largest column
/// 2-norm of LHS - RHS over the interior basis vectors for `headroom`.
struct RelationReport {
  std::string id;
  int headroom = 0;
  double residual = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  CheckContext context;
};

/// Ordered reports with unique ids.
class CheckSuite {
 public:
  explicit CheckSuite(double tolerance) : tolerance_(tolerance) {}

  double tolerance() const { return tolerance_; }
  const std::vector<RelationReport>& reports() const { return reports_; }
  bool all_pass() const;

  /// Throws PreconditionError on a duplicate id.
  void add(RelationReport r);
  /// Adds every report, prefixing ids with `prefix` when it is non-empty.
  void add_all(std::vector<RelationReport> rs, const std::string& prefix = "");

 private:
  double tolerance_;
  std::vector<RelationReport> reports_;
};

/// max over interior(headroom) columns of ||D zeta||_2.
double interior_residual(const SparseOperator& d, int headroom);
/// Residual for "D is a projection with nonzero interior trace": the largest
/// of the idempotence and self-adjointness residuals and max(0, 1 - trace).
double strict_projection_residual(const SparseOperator& d, int headroom);

RelationReport make_report(std::string id, int headroom, double residual, double tol, CheckContext ctx = {});
RelationReport check_identity(std::string id, int headroom, const SparseOperator& lhs, const SparseOperator& rhs,
                              double tol, CheckContext ctx = {});

CheckContext context_of(const Irrep& rep, int cutoff);

/// Phases alpha_i of x_i in the corners P_0 + ... + P_i (alpha[i-1] = alpha_i).
std::vector<SparseOperator> phases(const Irrep& rep);

// ---- suites ---------------------------------------------------------------

/// (G1) with headroom 0, (G2) and (G3) with headroom 1.
std::vector<RelationReport> check_cuntz_krieger(const GeneratorFamily& gens, double tol, CheckContext ctx = {});
/// Closed-form action of z_i on path vectors against the series.
std::vector<RelationReport> check_shift_formulas(const Irrep& rep, double tol);
/// x_i x_j = 0 (i<j), x_i^* x_j = 0 (i != j), x_i^* x_i - q x_i x_i^* = (1-q) Q_i.
std::vector<RelationReport> check_ball_relations(const Irrep& rep, double tol);
/// Reconstruction U|T| = T, U^*U = corner, and agreement of the modulus routes.
std::vector<RelationReport> check_polar(const Irrep& rep, const std::vector<SparseOperator>& alpha, double tol);
/// Items of the R_i / Q_i lemma with Q_i := alpha_i^* alpha_i. Strict
/// inequalities are certified only when `strict` (the faithful rep).
std::vector<RelationReport> check_projection_lemma(const Irrep& rep, const std::vector<SparseOperator>& alpha,
                                                   double tol, bool strict);
/// The universal T-relations for T_i := S_i.
std::vector<RelationReport> check_universal_relations(const Irrep& rep, double tol, bool strict);
/// P_i and S_ij from S_1..S_n, phase(x_i) = S_i, and the phi-images rebuilt
/// from alpha_i.
std::vector<RelationReport> check_generator_recovery(const Irrep& rep, const std::vector<SparseOperator>& alpha,
                                                     double tol);

/// Largest singular value of sum_{k=m+1}^{n} lambda_k S^{k+1} (S^*)^k on
/// the disc path space at the given cutoff.
double partial_sum_norm(QParam q, int m, int n, int cutoff);
/// sqrt(1 - q^{n+1}) - sqrt(1 - q^{m+1}).
double partial_sum_bound(QParam q, int m, int n);
/// Residual max(0, norm - bound). Requires 0 <= m <= n.
RelationReport check_partial_sum_bound(QParam q, int m, int n, int cutoff, double tol);

/// u_{ab} u_{cd} = delta_{bc} u_{ad} and u_{ab}^* = u_{ba} for the matrix
/// units of paths ending at the sink. Exhaustive when the basis has at most
/// `exhaustive_limit` paths, else `samples` seeded quadruples.
std::vector<RelationReport> check_matrix_units(int n, int cutoff, double tol, std::uint64_t seed,
                                               int exhaustive_limit = 16, int samples = 4000);

/// Evaluates a and b under the generators and compares them on interior(headroom).
/// Throws HeadroomError if headroom exceeds the cutoff.
RelationReport symbolic_numeric_crosscheck(std::string id, const WordExpr& a, const WordExpr& b,
                                           const GeneratorFamily& gens, int headroom, double tol);
/// `count` seeded random words of length <= 8: reduce against the numeric
/// product of the letters, and multiply of the two halves against the same.
std::vector<RelationReport> check_random_words(int n, int cutoff, int count, std::uint64_t seed, double tol);
/// The defining relations evaluated on gauge-transformed generators.
std::vector<RelationReport> check_gauge_invariance(int n, int cutoff, std::uint64_t seed, double tol);

// ---- driver ---------------------------------------------------------------

struct VerifyConfig {
  int n = 2;
  std::vector<double> qs{0.5};
  int cutoff = 6;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  std::vector<std::string> suites;  // empty = all
  std::vector<double> angles{0.0, 2.0, -1.0};
};

/// Suite names accepted by VerifyConfig::suites.
const std::vector<std::string>& suite_names();

/// Runs the selected suites. Throws PreconditionError on an invalid config.
CheckSuite run_verification(const VerifyConfig& config);

/// {"context": {...}, "checks": [{"id","headroom","residual","pass"}...], "pass": bool}
std::string to_json(const VerifyConfig& config, const CheckSuite& suite);
/// One JSON record per line, each carrying its context.
std::string to_ndjson(const CheckSuite& suite);

}  // namespace qball
