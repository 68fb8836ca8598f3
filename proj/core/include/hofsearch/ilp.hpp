#pragma once

#include <hofsearch/lp.hpp>
#include <hofsearch/numeric.hpp>

#include <cstddef>
#include <functional>
#include <vector>

namespace hofsearch::ilp {

/// Integer row: coeffs . x (sense) rhs.
struct Row {
  std::vector<BigInt> coeffs;
  lp::Sense sense = lp::Sense::Eq;
  BigInt rhs;
};

/// Pure integer linear program over a bounding box lower <= x <= upper.
struct Program {
  std::size_t num_vars = 0;
  std::vector<Row> rows;
  std::vector<BigInt> lower;
  std::vector<BigInt> upper;
};

enum class Status {
  Feasible,
  /// No integer point inside the box (or the node budget ran out).
  InfeasibleWithinBound,
  /// No integer point anywhere: the rational relaxation without the box is
  /// infeasible, or the equality rows have no integer solution.
  ProvablyInfeasible,
};

struct Result {
  Status status = Status::InfeasibleWithinBound;
  std::vector<BigInt> point;
  bool budget_exhausted = false;
};

struct Options {
  std::size_t max_nodes = 200000;
};

bool satisfies(const Program& p, const std::vector<BigInt>& x);

/// Whether the equality rows alone admit an integer solution (lattice test).
bool equalities_solvable(const std::vector<Row>& rows, std::size_t num_vars);

/// Rational feasibility, optionally including the box.
bool relaxation_feasible(const Program& p, bool with_box);

/// Integer points are visited in a fixed order: variables in index order,
/// values by increasing magnitude (nonnegative first) within the range the
/// relaxation permits. `visit` returns false to stop.
Result enumerate(const Program& p, const std::function<bool(const std::vector<BigInt>&)>& visit,
                 const Options& opts = {});

/// First point in the enumeration order.
Result solve(const Program& p, const Options& opts = {});

}  // namespace hofsearch::ilp
