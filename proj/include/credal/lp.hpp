#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "credal/errors.hpp"

namespace credal::lp {

inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasTol = 1e-9;

enum class Relation { le, eq, ge };
enum class Direction { minimize, maximize };

struct Constraint {
  std::vector<double> coeffs;
  Relation rel = Relation::le;
  double rhs = 0.0;
};

inline Constraint make_le(std::vector<double> coeffs, double rhs) {
  return {std::move(coeffs), Relation::le, rhs};
}
inline Constraint make_ge(std::vector<double> coeffs, double rhs) {
  return {std::move(coeffs), Relation::ge, rhs};
}
inline Constraint make_eq(std::vector<double> coeffs, double rhs) {
  return {std::move(coeffs), Relation::eq, rhs};
}

struct LinearProgram {
  std::size_t var_count = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  bool nonnegative = true;
};

struct LpOutcome {
  enum class Status { optimal, infeasible, unbounded };

  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> point;

  bool optimal() const { return status == Status::optimal; }

  static LpOutcome make_optimal(double value, std::vector<double> point) {
    LpOutcome out;
    out.status = Status::optimal;
    out.value = value;
    out.point = std::move(point);
    return out;
  }
  static LpOutcome make_infeasible() { return LpOutcome{}; }
  static LpOutcome make_unbounded() {
    LpOutcome out;
    out.status = Status::unbounded;
    return out;
  }
};

namespace detail {

inline void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInputError(std::string(what) + " must be finite");
  }
}

inline void validate(const LinearProgram& lp) {
  if (lp.var_count == 0) throw InvalidInputError("linear program needs at least one variable");
  if (lp.objective.size() != lp.var_count) {
    throw InvalidInputError("objective length does not match variable count");
  }
  check_finite(lp.objective, "objective coefficients");
  for (const Constraint& c : lp.constraints) {
    if (c.coeffs.size() != lp.var_count) {
      throw InvalidInputError("constraint length does not match variable count");
    }
    check_finite(c.coeffs, "constraint coefficients");
    if (!std::isfinite(c.rhs)) throw InvalidInputError("constraint rhs must be finite");
  }
}

/// Dense simplex tableau in standard form (min c.x, Ax = b, x >= 0, b >= 0).
/// Bland's rule on both the entering and leaving choice, which makes the
/// pivot sequence deterministic and cycle-free.
class Simplex {
 public:
  Simplex(std::size_t cols) : cols_(cols) {}

  void add_row(std::vector<double> row, double rhs, std::size_t basic) {
    rows_.push_back(std::move(row));
    rhs_.push_back(rhs);
    basis_.push_back(basic);
  }

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::size_t>& basis() const { return basis_; }
  double rhs(std::size_t i) const { return rhs_[i]; }

  /// Runs phase iterations for cost vector c (length cols). Returns false if
  /// unbounded. `blocked` columns never enter the basis.
  bool iterate(const std::vector<double>& cost, const std::vector<bool>& blocked) {
    std::vector<double> z = reduced_costs(cost);
    std::vector<bool> is_basic(cols_, false);
    for (std::size_t b : basis_) is_basic[b] = true;

    std::size_t guard = 0;
    const std::size_t guard_limit = 50000 + 100 * (rows_.size() + cols_);
    while (true) {
      if (++guard > guard_limit) throw InternalError("simplex failed to terminate");

      // Entering: lowest-index improving column (Bland).
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (blocked[j] || is_basic[j]) continue;
        if (z[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;  // optimal

      // Leaving: min-ratio row, ties broken by lowest basis index (Bland).
      std::size_t leave = rows_.size();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][enter];
        if (a > kPivotTol) {
          const double ratio = rhs_[i] / a;
          if (ratio < best_ratio - kPivotTol ||
              (std::abs(ratio - best_ratio) <= kPivotTol &&
               (leave == rows_.size() || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == rows_.size()) return false;  // unbounded direction

      is_basic[basis_[leave]] = false;
      is_basic[enter] = true;
      pivot(leave, enter, z);
    }
  }

  /// Pivot row r so that column c becomes basic there, updating cost row z.
  void pivot(std::size_t r, std::size_t c, std::vector<double>& z) {
    const double p = rows_[r][c];
    for (double& v : rows_[r]) v /= p;
    rhs_[r] /= p;
    rows_[r][c] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const double f = rows_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] -= f * rows_[r][j];
      rows_[i][c] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double fz = z[c];
    if (fz != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) z[j] -= fz * rows_[r][j];
      z[c] = 0.0;
    }
    basis_[r] = c;
  }

  std::vector<double> reduced_costs(const std::vector<double>& cost) const {
    std::vector<double> z = cost;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) z[j] -= cb * rows_[i][j];
    }
    return z;
  }

  /// Drives artificial columns (>= art_start) out of the basis; rows that
  /// cannot be repaired are redundant and get dropped.
  void eliminate_artificials(std::size_t art_start) {
    std::vector<double> dummy(cols_, 0.0);
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < art_start) {
        ++i;
        continue;
      }
      std::size_t pivot_col = cols_;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (std::abs(rows_[i][j]) > kPivotTol) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col == cols_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        pivot(i, pivot_col, dummy);
        ++i;
      }
    }
  }

  std::vector<double> solution(std::size_t n) const {
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Two-phase dense simplex.  Optimal values land within 1e-9 of the exact
/// optimum on the small well-scaled programs this library produces.
inline LpOutcome solve(const LinearProgram& lp, Direction direction) {
  detail::validate(lp);

  const std::size_t n0 = lp.var_count;
  const std::size_t n = lp.nonnegative ? n0 : 2 * n0;

  // Free variables are split as x = x+ - x-.
  auto expand = [&](const std::vector<double>& c) {
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < n0; ++j) {
      if (lp.nonnegative) {
        out[j] = c[j];
      } else {
        out[2 * j] = c[j];
        out[2 * j + 1] = -c[j];
      }
    }
    return out;
  };

  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(lp.constraints.size());
  for (const Constraint& c : lp.constraints) {
    Row r{expand(c.coeffs), c.rel, c.rhs};
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      r.rel = r.rel == Relation::le ? Relation::ge : (r.rel == Relation::ge ? Relation::le : Relation::eq);
    }
    rows.push_back(std::move(r));
  }

  std::size_t slack_count = 0, artificial_count = 0;
  for (const Row& r : rows) {
    if (r.rel != Relation::eq) ++slack_count;  // slack or surplus column
    if (r.rel != Relation::le) ++artificial_count;
  }
  const std::size_t art_start = n + slack_count;
  const std::size_t cols = art_start + artificial_count;

  detail::Simplex tab(cols);
  std::size_t next_slack = n, next_art = art_start;
  for (const Row& r : rows) {
    std::vector<double> row(cols, 0.0);
    std::copy(r.a.begin(), r.a.end(), row.begin());
    std::size_t basic;
    if (r.rel == Relation::le) {
      row[next_slack] = 1.0;
      basic = next_slack++;
    } else if (r.rel == Relation::ge) {
      row[next_slack++] = -1.0;
      row[next_art] = 1.0;
      basic = next_art++;
    } else {
      row[next_art] = 1.0;
      basic = next_art++;
    }
    tab.add_row(std::move(row), r.b, basic);
  }

  std::vector<bool> allow_all(cols, false);

  // Phase 1: minimize the artificial mass.
  if (artificial_count > 0) {
    std::vector<double> cost1(cols, 0.0);
    for (std::size_t j = art_start; j < cols; ++j) cost1[j] = 1.0;
    if (!tab.iterate(cost1, allow_all)) {
      throw InternalError("phase-1 objective cannot be unbounded");
    }
    double infeas = 0.0;
    for (std::size_t i = 0; i < tab.row_count(); ++i) {
      if (tab.basis()[i] >= art_start) infeas += tab.rhs(i);
    }
    if (infeas > 1e-7) return LpOutcome::make_infeasible();
    tab.eliminate_artificials(art_start);
  }

  // Phase 2 over structural + slack columns only.
  std::vector<bool> blocked(cols, false);
  for (std::size_t j = art_start; j < cols; ++j) blocked[j] = true;

  std::vector<double> cost2(cols, 0.0);
  {
    std::vector<double> c = expand(lp.objective);
    const double sign = direction == Direction::minimize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) cost2[j] = sign * c[j];
  }
  if (!tab.iterate(cost2, blocked)) return LpOutcome::make_unbounded();

  std::vector<double> y = tab.solution(n);
  std::vector<double> x(n0, 0.0);
  for (std::size_t j = 0; j < n0; ++j) {
    x[j] = lp.nonnegative ? y[j] : y[2 * j] - y[2 * j + 1];
  }
  double value = 0.0;
  for (std::size_t j = 0; j < n0; ++j) value += lp.objective[j] * x[j];
  return LpOutcome::make_optimal(value, std::move(x));
}

inline constexpr std::size_t kMaxVertexVars = 12;
inline constexpr std::size_t kMaxVertexConstraints = 30;

namespace detail {

/// Solve an n-by-n system by Gaussian elimination with partial pivoting.
/// Returns false if (numerically) singular.
inline bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[best][k])) best = i;
    }
    if (std::abs(a[best][k]) < kPivotTol) return false;
    std::swap(a[k], a[best]);
    std::swap(b[k], b[best]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return true;
}

}  // namespace detail

/// Exact vertex set of the feasible polytope by exhaustive basis
/// enumeration: every choice of var_count constraint hyperplanes is solved
/// and kept when the intersection point is feasible.  Intended as the test
/// oracle for `solve`; the caps keep the combinatorics at desk scale.
inline std::vector<std::vector<double>> enumerate_vertices(
    std::size_t var_count, const std::vector<Constraint>& constraints,
    bool nonnegative = true) {
  if (var_count == 0) throw InvalidInputError("vertex enumeration needs at least one variable");
  if (var_count > kMaxVertexVars) {
    throw CapacityError("vertex enumeration capped at " + std::to_string(kMaxVertexVars) +
                        " variables");
  }
  if (constraints.size() > kMaxVertexConstraints) {
    throw CapacityError("vertex enumeration capped at " +
                        std::to_string(kMaxVertexConstraints) + " constraints");
  }
  for (const Constraint& c : constraints) {
    if (c.coeffs.size() != var_count) {
      throw InvalidInputError("constraint length does not match variable count");
    }
    detail::check_finite(c.coeffs, "constraint coefficients");
    if (!std::isfinite(c.rhs)) throw InvalidInputError("constraint rhs must be finite");
  }

  struct Hyperplane {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Hyperplane> rows;
  for (const Constraint& c : constraints) rows.push_back({c.coeffs, c.rel, c.rhs});
  if (nonnegative) {
    for (std::size_t j = 0; j < var_count; ++j) {
      std::vector<double> a(var_count, 0.0);
      a[j] = 1.0;
      rows.push_back({std::move(a), Relation::ge, 0.0});
    }
  }

  const std::size_t r = rows.size();
  const std::size_t n = var_count;
  std::vector<std::vector<double>> vertices;
  if (r < n) return vertices;

  auto feasible = [&](const std::vector<double>& x) {
    for (const Hyperplane& h : rows) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += h.a[j] * x[j];
      switch (h.rel) {
        case Relation::le:
          if (lhs > h.b + kFeasTol) return false;
          break;
        case Relation::ge:
          if (lhs < h.b - kFeasTol) return false;
          break;
        case Relation::eq:
          if (std::abs(lhs - h.b) > kFeasTol) return false;
          break;
      }
    }
    return true;
  };

  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  std::vector<double> x;
  while (true) {
    std::vector<std::vector<double>> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rows[pick[i]].a;
      b[i] = rows[pick[i]].b;
    }
    if (detail::solve_square(std::move(a), std::move(b), x) && feasible(x)) {
      bool fresh = true;
      for (const auto& v : vertices) {
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(v[j] - x[j]));
        if (d <= kFeasTol) {
          fresh = false;
          break;
        }
      }
      if (fresh) vertices.push_back(x);
    }
    // next combination
    std::size_t i = n;
    while (i-- > 0) {
      if (pick[i] + (n - i) < r) {
        ++pick[i];
        for (std::size_t k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
        break;
      }
      if (i == 0) return vertices;
    }
  }
}

}  // namespace credal::lp
