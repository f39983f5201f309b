#include "cgdoi/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace cgdoi {

namespace {

constexpr long kSlackBase = 1L << 40;    // slack/surplus of row r
constexpr long kUbSlackBase = 2L << 40;  // slack of the bound row of var j
constexpr long kArtBase = 3L << 40;      // artificial of row r

// Internal standard form: structural columns, then slack/surplus columns,
// then artificials, over the user rows followed by one <= row per finite
// upper bound. Rows are normalized to a nonnegative right-hand side.
struct Standard {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd cost;        // phase-2 costs
  std::vector<long> ids;       // stable id per internal column
  std::vector<int> art_cols;   // internal indices of artificials
  std::vector<double> row_flip;  // +-1 per ext row
  int n_struct = 0;
  int m = 0;
  std::unordered_map<long, int> id_to_col;
  // Sparse view of A, column-major; pricing touches every column each pivot
  // and the columns here are very sparse.
  std::vector<std::vector<std::pair<int, double>>> sparse_cols;

  void build_sparse() {
    const int ncols = static_cast<int>(A.cols());
    sparse_cols.assign(ncols, {});
    for (int j = 0; j < ncols; ++j) {
      for (int r = 0; r < m; ++r) {
        if (A(r, j) != 0.0) sparse_cols[j].push_back({r, A(r, j)});
      }
    }
  }
};

Standard standardize(const LpProblem& p) {
  const int n = p.num_vars();
  std::vector<int> ub_vars;
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(p.vars[j].upper)) ub_vars.push_back(j);
    if (!std::isfinite(p.vars[j].cost)) {
      throw std::invalid_argument("non-finite objective coefficient");
    }
  }
  const int m = p.num_rows() + static_cast<int>(ub_vars.size());

  struct ExtRow {
    RowSense sense;
    double rhs;
    long slack_id;
    long art_id;
  };
  std::vector<ExtRow> ext;
  ext.reserve(m);
  for (int r = 0; r < p.num_rows(); ++r) {
    ext.push_back({p.rows[r].sense, p.rows[r].rhs, kSlackBase + r, kArtBase + r});
  }
  for (std::size_t k = 0; k < ub_vars.size(); ++k) {
    ext.push_back({RowSense::le, p.vars[ub_vars[k]].upper,
                   kUbSlackBase + ub_vars[k], kArtBase + p.num_rows() + (long)k});
  }

  Standard s;
  s.n_struct = n;
  s.m = m;
  s.row_flip.assign(m, 1.0);
  // Flip rows with a negative right-hand side.
  for (int r = 0; r < m; ++r) {
    if (ext[r].rhs < 0) {
      s.row_flip[r] = -1.0;
      ext[r].rhs = -ext[r].rhs;
      if (ext[r].sense == RowSense::le) ext[r].sense = RowSense::ge;
      else if (ext[r].sense == RowSense::ge) ext[r].sense = RowSense::le;
    }
  }

  int n_slack = 0, n_art = 0;
  for (const auto& e : ext) {
    if (e.sense != RowSense::eq) ++n_slack;
    if (e.sense != RowSense::le) ++n_art;
  }
  const int ncols = n + n_slack + n_art;
  s.A = Eigen::MatrixXd::Zero(m, ncols);
  s.b = Eigen::VectorXd::Zero(m);
  s.cost = Eigen::VectorXd::Zero(ncols);
  s.ids.resize(ncols);

  for (int j = 0; j < n; ++j) {
    s.cost(j) = p.vars[j].cost;
    s.ids[j] = j;
  }
  for (int r = 0; r < p.num_rows(); ++r) {
    for (const auto& [j, v] : p.rows[r].coeffs) {
      if (j < 0 || j >= n) throw std::invalid_argument("row references unknown variable");
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite row coefficient");
      s.A(r, j) += s.row_flip[r] * v;
    }
    if (!std::isfinite(p.rows[r].rhs)) throw std::invalid_argument("non-finite rhs");
  }
  for (std::size_t k = 0; k < ub_vars.size(); ++k) {
    const int r = p.num_rows() + static_cast<int>(k);
    s.A(r, ub_vars[k]) = s.row_flip[r] * 1.0;
  }
  for (int r = 0; r < m; ++r) s.b(r) = ext[r].rhs;

  int col = n;
  for (int r = 0; r < m; ++r) {
    if (ext[r].sense == RowSense::le) {
      s.A(r, col) = 1.0;
      s.ids[col] = ext[r].slack_id;
      ++col;
    } else if (ext[r].sense == RowSense::ge) {
      s.A(r, col) = -1.0;
      s.ids[col] = ext[r].slack_id;
      ++col;
    }
  }
  for (int r = 0; r < m; ++r) {
    if (ext[r].sense != RowSense::le) {
      s.A(r, col) = 1.0;
      s.ids[col] = ext[r].art_id;
      s.art_cols.push_back(col);
      ++col;
    }
  }
  for (int j = 0; j < ncols; ++j) s.id_to_col[s.ids[j]] = j;
  s.build_sparse();
  return s;
}

double sparse_dot(const Eigen::VectorXd& y,
                  const std::vector<std::pair<int, double>>& col) {
  double acc = 0.0;
  for (const auto& [r, v] : col) acc += y(r) * v;
  return acc;
}

struct SimplexState {
  std::vector<int> basis;   // internal column per row
  Eigen::MatrixXd binv;
  Eigen::VectorXd xb;
  int pivots = 0;
};

// Inverse of the basis matrix through partial-pivoting LU; returns false on
// a (near-)singular basis.
bool invert_basis(const Standard& s, const std::vector<int>& basis,
                  Eigen::MatrixXd& binv) {
  const int m = s.m;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  for (int r = 0; r < m; ++r) {
    for (const auto& [row, v] : s.sparse_cols[basis[r]]) B(row, r) = v;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  const auto diag = lu.matrixLU().diagonal();
  double scale = B.cwiseAbs().maxCoeff();
  if (scale == 0.0) return false;
  for (int r = 0; r < m; ++r) {
    if (std::abs(diag(r)) < 1e-12 * scale) return false;
  }
  binv = lu.inverse();
  return binv.allFinite();
}

void refactorize(const Standard& s, SimplexState& st) {
  if (!invert_basis(s, st.basis, st.binv)) {
    throw LpNumericalError("singular basis during refactorization");
  }
  st.xb = st.binv * s.b;
}

// Runs primal simplex on the given phase costs until optimality, pivot
// exhaustion, or unboundedness. Returns false iff unbounded.
bool simplex_loop(const Standard& s, SimplexState& st, const Eigen::VectorXd& cost,
                  const std::vector<char>& may_enter, const LpTolerances& tol) {
  const int m = s.m;
  const int ncols = static_cast<int>(s.A.cols());
  std::vector<char> in_basis(ncols, 0);
  for (int idx : st.basis) in_basis[idx] = 1;

  int degenerate_streak = 0;
  const int bland_after = 3 * (m + ncols);
  const long pivot_cap = 2000L * (m + ncols) + 100000L;
  // Refactorization is O(m^3); stretch the period on large bases so it does
  // not dominate, and rely on the final refactorization for clean output.
  const int refactor_period = std::max(100, m);
  int since_refactor = 0;
  Eigen::VectorXd cb(m);

  for (long iter = 0;; ++iter) {
    if (iter > pivot_cap) throw LpNumericalError("simplex pivot limit exceeded");
    for (int r = 0; r < m; ++r) cb(r) = cost(st.basis[r]);
    Eigen::VectorXd y = st.binv.transpose() * cb;
    // Pricing.
    const bool bland = degenerate_streak > bland_after;
    int entering = -1;
    double best = -tol.opt;
    for (int j = 0; j < ncols; ++j) {
      if (in_basis[j] || !may_enter[j]) continue;
      const double dj = cost(j) - sparse_dot(y, s.sparse_cols[j]);
      if (dj < best - 1e-15) {
        entering = j;
        best = dj;
        if (bland) break;  // first improving index
      }
    }
    if (entering < 0) return true;  // optimal for this phase

    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (const auto& [r, v] : s.sparse_cols[entering]) w += v * st.binv.col(r);
    int leave = -1;
    double t = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      if (w(r) > tol.pivot) {
        const double ratio = std::max(st.xb(r), 0.0) / w(r);
        if (ratio < t - 1e-12) {
          t = ratio;
          leave = r;
        } else if (ratio < t + 1e-12 && leave >= 0) {
          // Tie: prefer kicking out artificials, then Bland order.
          const bool cand_art = s.ids[st.basis[r]] >= kArtBase;
          const bool cur_art = s.ids[st.basis[leave]] >= kArtBase;
          if ((cand_art && !cur_art) ||
              (cand_art == cur_art && s.ids[st.basis[r]] < s.ids[st.basis[leave]])) {
            leave = r;
          }
        }
      }
    }
    if (leave < 0) return false;  // unbounded direction

    // A tiny pivot element after many updates usually means inverse drift,
    // not a genuine choice: refactorize and re-price from clean numbers.
    if (std::abs(w(leave)) < 1e-7 && since_refactor > 0) {
      refactorize(s, st);
      since_refactor = 0;
      continue;
    }

    degenerate_streak = (t < tol.feas) ? degenerate_streak + 1 : 0;

    // Pivot: update basis, inverse and basic values.
    const double piv = w(leave);
    st.binv.row(leave) /= piv;
    for (int r = 0; r < m; ++r) {
      if (r != leave && std::abs(w(r)) > 1e-300) {
        st.binv.row(r) -= w(r) * st.binv.row(leave);
      }
    }
    st.xb -= t * w;
    st.xb(leave) = t;
    in_basis[st.basis[leave]] = 0;
    in_basis[entering] = 1;
    st.basis[leave] = entering;
    ++st.pivots;
    ++since_refactor;
    if (since_refactor >= refactor_period) {
      refactorize(s, st);
      since_refactor = 0;
    }
  }
}

LpSolution extract(const LpProblem& p, const Standard& s, const SimplexState& st) {
  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.primal.assign(p.num_vars(), 0.0);
  for (int r = 0; r < s.m; ++r) {
    if (st.basis[r] < s.n_struct) {
      sol.primal[st.basis[r]] = st.xb(r);
    }
  }
  sol.objective = 0.0;
  for (int j = 0; j < p.num_vars(); ++j) sol.objective += p.vars[j].cost * sol.primal[j];

  Eigen::VectorXd cb(s.m);
  for (int r = 0; r < s.m; ++r) cb(r) = s.cost(st.basis[r]);
  Eigen::VectorXd y = st.binv.transpose() * cb;
  sol.dual.assign(p.num_rows(), 0.0);
  for (int r = 0; r < p.num_rows(); ++r) sol.dual[r] = s.row_flip[r] * y(r);

  sol.basis.n_rows = s.m;
  sol.basis.basic_ids.resize(s.m);
  for (int r = 0; r < s.m; ++r) sol.basis.basic_ids[r] = s.ids[st.basis[r]];
  sol.pivots = st.pivots;
  return sol;
}

}  // namespace

LpSolution LpSolver::solve(const LpProblem& problem) const {
  Standard s = standardize(problem);
  const int m = s.m;
  const int ncols = static_cast<int>(s.A.cols());

  SimplexState st;
  st.basis.resize(m);
  // Initial basis: slack where available (le rows), artificial otherwise.
  {
    std::vector<int> art_for_row(m, -1);
    std::vector<int> slack_for_row(m, -1);
    for (int j = s.n_struct; j < ncols; ++j) {
      for (int r = 0; r < m; ++r) {
        if (s.A(r, j) != 0.0) {
          if (s.ids[j] >= kArtBase) art_for_row[r] = j;
          else if (s.A(r, j) > 0) slack_for_row[r] = j;
          break;
        }
      }
    }
    for (int r = 0; r < m; ++r) {
      st.basis[r] = art_for_row[r] >= 0 ? art_for_row[r] : slack_for_row[r];
      if (st.basis[r] < 0) throw LpNumericalError("no starting basis column for row");
    }
  }
  st.binv = Eigen::MatrixXd::Identity(m, m);
  st.xb = s.b;

  std::vector<char> is_art(ncols, 0);
  for (int j : s.art_cols) is_art[j] = 1;

  // Phase 1: minimize the artificial mass.
  if (!s.art_cols.empty()) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ncols);
    for (int j : s.art_cols) phase1(j) = 1.0;
    std::vector<char> enter_all(ncols, 1);
    for (int j : s.art_cols) enter_all[j] = 0;  // artificials never re-enter
    if (!simplex_loop(s, st, phase1, enter_all, tol)) {
      throw LpNumericalError("phase 1 reported unbounded");
    }
    double infeas = 0.0;
    for (int r = 0; r < m; ++r) {
      if (is_art[st.basis[r]]) infeas += std::max(st.xb(r), 0.0);
    }
    if (infeas > tol.feas * (1.0 + s.b.lpNorm<1>())) {
      LpSolution sol;
      sol.status = LpStatus::infeasible;
      sol.objective = std::numeric_limits<double>::quiet_NaN();
      return sol;
    }
    // Drive remaining artificials out with degenerate pivots where possible.
    for (int r = 0; r < m; ++r) {
      if (!is_art[st.basis[r]]) continue;
      Eigen::RowVectorXd row = st.binv.row(r) * s.A;
      for (int j = 0; j < ncols; ++j) {
        if (is_art[j] || j == st.basis[r]) continue;
        bool basic = false;
        for (int rr = 0; rr < m; ++rr) {
          if (st.basis[rr] == j) { basic = true; break; }
        }
        if (basic || std::abs(row(j)) <= tol.pivot) continue;
        Eigen::VectorXd w = st.binv * s.A.col(j);
        const double piv = w(r);
        st.binv.row(r) /= piv;
        for (int rr = 0; rr < m; ++rr) {
          if (rr != r) st.binv.row(rr) -= w(rr) * st.binv.row(r);
        }
        st.basis[r] = j;
        break;
      }
      // If no pivot exists the row is linearly dependent; the artificial
      // stays basic at zero and is verified after phase 2.
    }
    st.xb = st.binv * s.b;
  }

  // Phase 2.
  std::vector<char> enter(ncols, 1);
  for (int j : s.art_cols) enter[j] = 0;
  if (!simplex_loop(s, st, s.cost, enter, tol)) {
    LpSolution sol;
    sol.status = LpStatus::unbounded;
    sol.objective = -std::numeric_limits<double>::infinity();
    return sol;
  }
  refactorize(s, st);  // clean inverse for the reported primal/duals
  for (int r = 0; r < m; ++r) {
    if (is_art[st.basis[r]] && st.xb(r) > tol.feas * (1.0 + s.b.lpNorm<1>())) {
      throw LpNumericalError("artificial variable stuck at a positive level");
    }
  }
  return extract(problem, s, st);
}

LpSolution LpSolver::resolve(const LpProblem& problem, const LpBasis& basis) const {
  Standard s = standardize(problem);
  if (!basis.valid() || basis.n_rows != s.m) return solve(problem);

  SimplexState st;
  st.basis.resize(s.m);
  for (int r = 0; r < s.m; ++r) {
    auto it = s.id_to_col.find(basis.basic_ids[r]);
    if (it == s.id_to_col.end()) return solve(problem);
    st.basis[r] = it->second;
  }
  if (!invert_basis(s, st.basis, st.binv)) return solve(problem);
  st.xb = st.binv * s.b;
  if (st.xb.minCoeff() < -tol.feas * (1.0 + s.b.lpNorm<1>())) {
    return solve(problem);  // basis no longer primal feasible
  }

  const int ncols = static_cast<int>(s.A.cols());
  std::vector<char> enter(ncols, 1);
  for (int j : s.art_cols) enter[j] = 0;
  if (!simplex_loop(s, st, s.cost, enter, tol)) {
    LpSolution sol;
    sol.status = LpStatus::unbounded;
    sol.objective = -std::numeric_limits<double>::infinity();
    return sol;
  }
  refactorize(s, st);
  LpSolution sol = extract(problem, s, st);
  sol.warm_started = true;
  return sol;
}

std::string write_lp_format(const LpProblem& p) {
  std::ostringstream out;
  out.precision(17);
  auto var_name = [&](int j) {
    return p.vars[j].tag.empty() ? "x" + std::to_string(j) : p.vars[j].tag;
  };
  out << "Minimize\n obj:";
  for (int j = 0; j < p.num_vars(); ++j) {
    if (p.vars[j].cost == 0.0) continue;
    out << (p.vars[j].cost >= 0 ? " + " : " - ") << std::abs(p.vars[j].cost)
        << " " << var_name(j);
  }
  out << "\nSubject To\n";
  for (int r = 0; r < p.num_rows(); ++r) {
    const auto& row = p.rows[r];
    out << " " << (row.tag.empty() ? "c" + std::to_string(r) : row.tag) << ":";
    for (const auto& [j, v] : row.coeffs) {
      out << (v >= 0 ? " + " : " - ") << std::abs(v) << " " << var_name(j);
    }
    out << (row.sense == RowSense::le ? " <= " : row.sense == RowSense::ge ? " >= " : " = ")
        << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    if (std::isfinite(p.vars[j].upper)) {
      out << " 0 <= " << var_name(j) << " <= " << p.vars[j].upper << "\n";
    } else {
      out << " " << var_name(j) << " >= 0\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace cgdoi
