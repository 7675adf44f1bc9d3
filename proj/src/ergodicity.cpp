#include "pgmix/ergodicity.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numeric>

#include "pgmix/errors.hpp"

namespace pgmix {

Matrix build_mstar(const Matrix& m, const IntVector& y) {
  if (y.size() != m.rows())
    throw dimension_error("build_mstar: length(y) != rows(M)");
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    if (y[i] == 1) out.row(i) = -out.row(i);
  return out;
}

std::pair<int, bool> check_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return {0, false};
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * smax) ++rank;
  return {rank, rank == m.cols()};
}

namespace {

// Dense Phase-I simplex with Bland's rule for { s >= 0 : A s = d }.
// Returns the optimal artificial mass (0 within tolerance iff feasible)
// and the structural solution.
struct PhaseOneResult {
  double objective;
  Vector s;
};

PhaseOneResult phase_one_simplex(Matrix a, Vector d) {
  const int k = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  for (int i = 0; i < k; ++i)
    if (d[i] < 0.0) {
      d[i] = -d[i];
      a.row(i) = -a.row(i);
    }

  // Tableau [A | I | d] with the artificial basis; the canonical Phase-I
  // reduced-cost row is the negated column sum over constraint rows.
  Matrix t(k, n + k + 1);
  t.leftCols(n) = a;
  t.middleCols(n, k) = Matrix::Identity(k, k);
  t.col(n + k) = d;
  std::vector<int> basis(k);
  std::iota(basis.begin(), basis.end(), n);

  // Reduced costs priced out against the artificial basis: structural
  // columns get -colsum, artificial columns 1 - 1 = 0, and the RHS cell
  // holds the negated objective sum(d).
  Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(n + k + 1);
  for (int i = 0; i < k; ++i) cost -= t.row(i);
  for (int i = 0; i < k; ++i) cost[n + i] += 1.0;

  const double scale = 1.0 + a.cwiseAbs().maxCoeff() + d.cwiseAbs().maxCoeff();
  const double eps = 1e-12 * scale;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < n + k; ++j)
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < k; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, n + k) / t(i, enter);
        if (leave < 0 || ratio < best - eps ||
            (ratio < best + eps && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0)
      // Unbounded Phase-I cannot happen (objective bounded below by 0);
      // reaching here means numerical breakdown.
      throw numeric_error("phase_one_simplex: unbounded pivot column");
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i < k; ++i)
      if (i != leave && std::fabs(t(i, enter)) > 0.0)
        t.row(i) -= t(i, enter) * t.row(leave);
    cost -= cost[enter] * t.row(leave);
    basis[leave] = enter;
  }

  PhaseOneResult res;
  res.objective = -cost[n + k];
  res.s = Vector::Zero(n);
  for (int i = 0; i < k; ++i)
    if (basis[i] < n) res.s[basis[i]] = t(i, n + k);
  return res;
}

// Orthonormal basis of the null space of c (columns of the returned matrix).
Matrix null_space(const Matrix& c, double tol) {
  Eigen::BDCSVD<Matrix> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * smax) ++rank;
  return svd.matrixV().rightCols(c.cols() - rank);
}

// Minimum-norm point of { e : c e = 0, e >= 1 }, started from a feasible
// point. Primal active-set QP in null-space coordinates; the strictly convex
// objective makes the minimizer unique, hence equivariant under permutations
// of the coordinates of e.
Vector min_norm_polish(const Matrix& c, const Vector& start, double tol) {
  const int n = static_cast<int>(c.cols());
  const Matrix nullb = null_space(c, tol);
  if (nullb.cols() == 0) return start;
  const double feastol = 1e-9 * (1.0 + start.cwiseAbs().maxCoeff());

  Vector v = nullb.transpose() * start;
  std::vector<bool> active(n, false);
  Vector e = nullb * v;
  for (int i = 0; i < n; ++i) active[i] = e[i] <= 1.0 + feastol;

  const int max_iter = 100 * (n + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<int> w;
    for (int i = 0; i < n; ++i)
      if (active[i]) w.push_back(i);

    Matrix gw(static_cast<int>(w.size()), nullb.cols());
    for (std::size_t i = 0; i < w.size(); ++i) gw.row(i) = nullb.row(w[i]);
    Vector target;
    if (w.empty()) {
      target = Vector::Zero(nullb.cols());
    } else {
      target = gw.completeOrthogonalDecomposition().solve(
          Vector::Ones(static_cast<int>(w.size())));
    }

    const Vector e_hat = nullb * target;
    bool feasible = true;
    for (int i = 0; i < n; ++i)
      if (!active[i] && e_hat[i] < 1.0 - feastol) feasible = false;

    if (feasible) {
      if (w.empty()) return e_hat;  // unconstrained minimum already feasible
      // Multipliers: v = gw' mu with mu >= 0 certifies optimality.
      const Vector mu =
          gw.transpose().completeOrthogonalDecomposition().solve(target);
      int drop = -1;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (mu[static_cast<int>(i)] < -feastol) {
          drop = w[i];
          break;
        }
      if (drop < 0) return e_hat;
      active[drop] = false;
      v = target;
      continue;
    }

    // Step toward the subproblem solution until a bound blocks.
    const Vector dir = e_hat - nullb * v;
    double alpha = 1.0;
    int block = -1;
    const Vector e_cur = nullb * v;
    for (int i = 0; i < n; ++i) {
      if (!active[i] && dir[i] < -feastol) {
        const double ai = (1.0 - e_cur[i]) / dir[i];
        if (ai < alpha) {
          alpha = ai;
          block = i;
        }
      }
    }
    v += alpha * (target - v);
    if (block >= 0) active[block] = true;
  }
  // Canonicalization is best-effort; the feasible start is still a witness.
  return start;
}

}  // namespace

FeasibilityResult check_positive_null_vector(const Matrix& mstar, double tol) {
  const int n = static_cast<int>(mstar.rows());
  // Substituting e = 1 + s turns { Mstar' e = 0, e >= 1 } into the standard
  // form { A s = d, s >= 0 } with A = Mstar', d = -Mstar' 1.
  const Matrix a = mstar.transpose();
  const Vector d = -a * Vector::Ones(n);
  PhaseOneResult p1 = phase_one_simplex(a, d);

  FeasibilityResult out;
  out.phase1_objective = p1.objective;
  const double feas_scale = 1.0 + d.cwiseAbs().sum();
  if (p1.objective > tol * feas_scale) {
    out.status = Feasibility::Infeasible;
    return out;
  }

  Vector e = Vector::Ones(n) + p1.s;
  e = min_norm_polish(a, e, tol);
  if (e.minCoeff() > 0.0) e /= e.minCoeff();

  const double resid = (a * e).cwiseAbs().maxCoeff();
  const double resid_bound = tol * (1.0 + mstar.cwiseAbs().maxCoeff());
  if (e.minCoeff() < 1.0 - 1e-9 || resid > resid_bound) {
    out.status = Feasibility::Indeterminate;
    out.witness = e;
    return out;
  }
  out.status = Feasibility::Feasible;
  out.witness = e;
  return out;
}

GEReport check_ge(const ModelSpec& spec, double tol) {
  GEReport rep;
  const PriorSpec& pr = spec.prior;
  rep.applicable = pr.is_flat();

  const int r = spec.r();
  rep.cond1_priors.resize(r);
  rep.cond2_shape.resize(r);
  rep.cond1_pass = rep.cond2_pass = true;
  for (int j = 0; j < r; ++j) {
    rep.cond1_priors[j] =
        pr.b_rate[j] > 0.0 || (pr.b_rate[j] == 0.0 && pr.a[j] < 0.0);
    rep.cond2_shape[j] = pr.a[j] + 0.5 * spec.blocks[j] > 0.0;
    rep.cond1_pass = rep.cond1_pass && rep.cond1_priors[j];
    rep.cond2_pass = rep.cond2_pass && rep.cond2_shape[j];
  }

  const Matrix m = spec.design();
  const auto rank = check_rank(m, tol);
  rep.rank_m = rank.first;
  rep.cond3_rank = rank.second;

  const FeasibilityResult feas =
      check_positive_null_vector(build_mstar(m, spec.y), tol);
  rep.cond4_status = feas.status;
  rep.witness = feas.witness;
  rep.phase1_objective = feas.phase1_objective;
  rep.cond4_pass = feas.status == Feasibility::Feasible;

  rep.overall =
      rep.cond1_pass && rep.cond2_pass && rep.cond3_rank && rep.cond4_pass;

  if (!rep.applicable) {
    rep.note = "not applicable (proper beta prior); conditions reported for "
               "information only";
  } else if (rep.overall) {
    rep.note = "all four sufficient conditions hold: the block Gibbs chain is "
               "geometrically ergodic and the posterior is proper under the "
               "flat beta prior (conditions are sufficient, not necessary)";
  } else {
    rep.note = "one or more sufficient conditions fail; geometric ergodicity "
               "is not established by this check (conditions are sufficient, "
               "not necessary)";
  }
  return rep;
}

}  // namespace pgmix
