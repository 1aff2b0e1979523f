#include "hilbertlab/lp.hpp"

#include "hilbertlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace hilbertlab::lp {
namespace {

// Tolerances: pivot and ratio-test slack, artificial drop threshold, relative phase-one residual.
template <class T>
struct Tolerance;

template <>
struct Tolerance<double> {
  static double pivot() { return 1e-11; }
  static double drop() { return 1e-9; }
  static double residual() { return 1e-9; }
};

template <>
struct Tolerance<Rational> {
  static Rational pivot() { return 0; }
  static Rational drop() { return 0; }
  static Rational residual() { return 0; }
};

double magnitude(double v) { return std::fabs(v); }
Rational magnitude(const Rational& v) { return boost::multiprecision::abs(v); }

template <class T>
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excluding rhs
  std::vector<T> a;      // (rows + 1) x (cols + 1), last row is the objective
  std::vector<std::size_t> basis;

  T& at(std::size_t r, std::size_t c) { return a[r * (cols + 1) + c]; }
  const T& at(std::size_t r, std::size_t c) const { return a[r * (cols + 1) + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const T inv = T(1) / at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const T f = at(r, pc);
      if (f == 0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0;
    }
    basis[pr] = pc;
  }

  // Objective row holds reduced costs of the minimization form.
  Status run(std::size_t usable_cols, std::size_t max_iterations) {
    const T eps = Tolerance<T>::pivot();
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
      std::size_t pc = usable_cols;
      for (std::size_t c = 0; c < usable_cols; ++c) {
        if (at(rows, c) < -eps) {
          pc = c;
          break;
        }
      }
      if (pc == usable_cols) return Status::Optimal;
      std::size_t pr = rows;
      std::optional<T> best;
      for (std::size_t r = 0; r < rows; ++r) {
        const T& v = at(r, pc);
        if (v > eps) {
          const T ratio = at(r, cols) / v;
          if (!best || ratio < *best - eps || (ratio <= *best + eps && basis[r] < basis[pr])) {
            best = ratio;
            pr = r;
          }
        }
      }
      if (pr == rows) return Status::Unbounded;
      pivot(pr, pc);
    }
    return Status::IterationLimit;
  }
};

template <class T>
BasicSolution<T> solve(const BasicProblem<T>& problem, std::size_t max_iterations) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  if (problem.objective.size() != n) fail(ErrorKind::InvalidInput, "lp: objective length mismatch");

  std::size_t slack_count = 0;
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n) fail(ErrorKind::InvalidInput, "lp: constraint length mismatch");
    if (c.relation != Relation::Equal) ++slack_count;
  }
  // Columns: originals, slacks, artificials (one per row).
  Tableau<T> t;
  t.rows = m;
  t.cols = n + slack_count + m;
  t.a.assign((m + 1) * (t.cols + 1), T(0));
  t.basis.assign(m, 0);

  std::size_t slack = n;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = problem.constraints[r];
    const T flip = c.rhs < 0 ? T(-1) : T(1);
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = flip * c.coeffs[j];
    if (c.relation == Relation::LessEq) t.at(r, slack++) = flip;
    if (c.relation == Relation::GreaterEq) t.at(r, slack++) = -flip;
    t.at(r, t.cols) = flip * c.rhs;
    const std::size_t art = n + slack_count + r;
    t.at(r, art) = 1;
    t.basis[r] = art;
  }

  // Phase one: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c <= t.cols; ++c) t.at(m, c) -= t.at(r, c);
  for (std::size_t r = 0; r < m; ++r) t.at(m, n + slack_count + r) = 0;

  BasicSolution<T> out;
  Status s = t.run(t.cols, max_iterations);
  if (s == Status::IterationLimit) {
    out.status = s;
    return out;
  }
  T scale = 1;
  for (const auto& c : problem.constraints)
    if (magnitude(c.rhs) > scale) scale = magnitude(c.rhs);
  if (-t.at(m, t.cols) > Tolerance<T>::residual() * scale) {
    out.status = Status::Infeasible;
    return out;
  }
  // Drive remaining artificials out of the basis where possible.
  const std::size_t real_cols = n + slack_count;
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] < real_cols) continue;
    for (std::size_t c = 0; c < real_cols; ++c) {
      if (magnitude(t.at(r, c)) > Tolerance<T>::drop()) {
        t.pivot(r, c);
        break;
      }
    }
  }

  // Phase two: reduced costs for -objective.
  for (std::size_t c = 0; c <= t.cols; ++c) t.at(m, c) = 0;
  for (std::size_t j = 0; j < n; ++j) t.at(m, j) = -problem.objective[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis[r];
    const T f = t.at(m, b);
    if (f == 0) continue;
    for (std::size_t c = 0; c <= t.cols; ++c) t.at(m, c) -= f * t.at(r, c);
  }
  s = t.run(real_cols, max_iterations);
  out.status = s;
  if (s != Status::Optimal) return out;
  out.x.assign(n, T(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] < n) out.x[t.basis[r]] = t.at(r, t.cols);
  }
  out.value = 0;
  for (std::size_t j = 0; j < n; ++j) out.value += problem.objective[j] * out.x[j];
  return out;
}

constexpr double kVerifyTolerance = 1e-7;

// Largest constraint or sign violation of x, relative to the row magnitude.
double violation(const Problem& problem, const std::vector<double>& x) {
  double worst = 0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& c : problem.constraints) {
    double lhs = 0, size = std::fabs(c.rhs);
    for (std::size_t j = 0; j < x.size(); ++j) {
      lhs += c.coeffs[j] * x[j];
      size = std::max(size, std::fabs(c.coeffs[j] * x[j]));
    }
    double excess = 0;
    if (c.relation != Relation::GreaterEq) excess = std::max(excess, lhs - c.rhs);
    if (c.relation != Relation::LessEq) excess = std::max(excess, c.rhs - lhs);
    worst = std::max(worst, excess / std::max(size, 1e-300));
  }
  return worst;
}

}  // namespace

Solution maximize(const Problem& problem, std::size_t max_iterations) {
  Solution out = solve(problem, max_iterations);
  if (out.status != Status::Optimal || violation(problem, out.x) <= kVerifyTolerance) return out;
  // Tiny pivots can leave the double tableau at an infeasible vertex; redo the program exactly.
  ExactProblem exact;
  exact.num_vars = problem.num_vars;
  for (double c : problem.objective) exact.objective.push_back(from_double(c));
  for (const auto& c : problem.constraints) {
    ExactConstraint e;
    for (double v : c.coeffs) e.coeffs.push_back(from_double(v));
    e.relation = c.relation;
    e.rhs = from_double(c.rhs);
    exact.constraints.push_back(std::move(e));
  }
  const ExactSolution sol = solve(exact, max_iterations);
  out = Solution{};
  out.status = sol.status;
  if (sol.status != Status::Optimal) return out;
  for (const auto& v : sol.x) out.x.push_back(to_double(v));
  out.value = to_double(sol.value);
  return out;
}

ExactSolution maximize(const ExactProblem& problem, std::size_t max_iterations) { return solve(problem, max_iterations); }

}  // namespace hilbertlab::lp
