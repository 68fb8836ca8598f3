#pragma once

#include <hofsearch/numeric.hpp>

#include <optional>
#include <vector>

namespace hofsearch::lp {

enum class Sense { Eq, Ge, Le };

/// coeffs . x  (sense)  rhs, dense over the problem's variables.
struct Row {
  std::vector<Rational> coeffs;
  Sense sense = Sense::Eq;
  Rational rhs;
};

/// Minimize objective . x subject to rows and optional per-variable bounds.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Row> rows;
  std::vector<std::optional<Rational>> lower;  // empty or num_vars entries
  std::vector<std::optional<Rational>> upper;
  std::vector<Rational> objective;             // empty means pure feasibility
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Two-phase primal simplex over exact rationals with Bland's rule.
Solution solve(const Problem& p);

}  // namespace hofsearch::lp
