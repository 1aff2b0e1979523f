#pragma once

#include "hilbertlab/rational.hpp"

#include <cstddef>
#include <vector>

// Small dense linear programs: maximize c.x subject to row constraints and x >= 0.
// Two-phase tableau simplex with Bland's rule, in double precision or exactly over the rationals.
namespace hilbertlab::lp {

enum class Relation { LessEq, GreaterEq, Equal };

template <class T>
struct BasicConstraint {
  std::vector<T> coeffs;
  Relation relation = Relation::LessEq;
  T rhs = T(0);
};

template <class T>
struct BasicProblem {
  std::size_t num_vars = 0;
  std::vector<BasicConstraint<T>> constraints;
  std::vector<T> objective;  // maximized
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct BasicSolution {
  Status status = Status::Infeasible;
  std::vector<T> x;
  T value = T(0);
};

using Constraint = BasicConstraint<double>;
using Problem = BasicProblem<double>;
using Solution = BasicSolution<double>;

using ExactConstraint = BasicConstraint<Rational>;
using ExactProblem = BasicProblem<Rational>;
using ExactSolution = BasicSolution<Rational>;

Solution maximize(const Problem& problem, std::size_t max_iterations = 20000);
/// Exact arithmetic; Bland's rule without tolerances always terminates.
ExactSolution maximize(const ExactProblem& problem, std::size_t max_iterations = 20000);

}  // namespace hilbertlab::lp
