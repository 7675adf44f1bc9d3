#ifndef PGMIX_ERGODICITY_HPP
#define PGMIX_ERGODICITY_HPP

#include <string>
#include <utility>

#include "pgmix/model.hpp"

namespace pgmix {

// Outcome of the positive-left-null-vector feasibility problem
// { e : Mstar' e = 0, e_i >= 1 }. The e_i >= 1 normalization is equivalent
// to e > 0 by cone scaling.
enum class Feasibility { Feasible, Infeasible, Indeterminate };

struct FeasibilityResult {
  Feasibility status;
  Vector witness;          // e with min(e) = 1 when feasible, empty otherwise
  double phase1_objective;  // infeasibility certificate (0 when feasible)
};

// Report on the sufficient conditions for geometric ergodicity of the block
// Gibbs chain under the flat beta prior (and hence posterior propriety).
// The conditions are sufficient, not necessary: a failed report does not
// prove the absence of geometric ergodicity.
struct GEReport {
  bool applicable = false;  // the theorem addresses the flat prior (Q = 0)
  std::string note;

  std::vector<bool> cond1_priors;  // per j: a_j < b_j = 0, or b_j > 0
  std::vector<bool> cond2_shape;   // per j: a_j + q_j / 2 > 0
  bool cond1_pass = false;
  bool cond2_pass = false;

  int rank_m = 0;
  bool cond3_rank = false;

  Feasibility cond4_status = Feasibility::Indeterminate;
  Vector witness;
  double phase1_objective = 0.0;
  bool cond4_pass = false;

  bool overall = false;  // conjunction of the four
};

// Row i of the output is (1 - 2 y_i) m_i'; the sign c_i = 1 - 2 y_i flips
// exactly the rows with y_i = 1.
Matrix build_mstar(const Matrix& m, const IntVector& y);

// Numerical rank: the count of singular values above tol * sigma_max.
// Passes iff the rank equals the column count.
std::pair<int, bool> check_rank(const Matrix& m, double tol = 1e-9);

// Solves { e : Mstar' e = 0, e_i >= 1 } by a Phase-I simplex with Bland's
// rule on the substitution e = 1 + s, s >= 0. When feasible, the witness is
// canonicalized as the (unique) minimum-norm feasible point, which makes it
// equivariant under row permutations of Mstar.
FeasibilityResult check_positive_null_vector(const Matrix& mstar,
                                             double tol = 1e-9);

// Evaluates all four sufficient conditions. Applies to the flat beta prior;
// for a proper (nonzero Q) prior the note reads
// "not applicable (proper beta prior)" and the conditions are reported for
// information only.
GEReport check_ge(const ModelSpec& spec, double tol = 1e-9);

}  // namespace pgmix

#endif
