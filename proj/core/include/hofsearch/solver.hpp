#pragma once

#include <hofsearch/constraints.hpp>
#include <hofsearch/lp.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace hofsearch {

enum class SolveStatus { Sat, UnsatWithinBound, ProvablyUnsat };

std::string to_string(SolveStatus s);

struct SolveOptions {
  BigInt bound = 64;
  std::size_t witnesses = 1;
  std::size_t max_ilp_nodes = 200000;  // per leaf
  std::size_t max_branch_nodes = 200000;
};

struct SolveResult {
  SolveStatus status = SolveStatus::UnsatWithinBound;
  std::vector<Assignment> witnesses;
  /// Branch taken for each CondEq (in constraint order) at the first witness.
  std::vector<int> leaf;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

/// One row of a conditional branch: expr (sense) 0.
struct BranchRow {
  LinExpr expr;
  lp::Sense sense = lp::Sense::Eq;
  bool consequence = false;
};

/// The case split of a CondEq constraint, in the order they are tried:
/// Eq guard: [guard and consequence, lhs <= rhs - 1, lhs >= rhs + 1];
/// Le guard: [guard and consequence, lhs >= rhs + 1].
std::vector<std::vector<BranchRow>> condeq_branches(const Constraint& c);

/// Depth-first over the conditional cases; each leaf is a bounded integer
/// program over the box [-bound, bound].
SolveResult solve(const ConstraintSystem& sys, const SolveOptions& opts = {});

}  // namespace hofsearch
