#pragma once

#include <hofsearch/constraints.hpp>
#include <hofsearch/eventual.hpp>
#include <hofsearch/ic_builder.hpp>
#include <hofsearch/solver.hpp>
#include <hofsearch/unpacker.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hofsearch {

struct SearchOptions {
  BigInt bound = 64;
  std::int64_t verify_terms = 200;
  std::size_t witnesses = 1;
  unsigned jobs = 0;  // 0: hardware concurrency
  bool trace_unpack = false;
  std::optional<std::int64_t> max_ic_length;
  /// Restrict the search to these behavior vectors (all 3^m when empty).
  std::vector<BehaviorVector> behaviors;
};

struct SolutionFamily {
  Recurrence recurrence;
  int m = 0;
  BehaviorVector behavior;
  CongruenceAssignment congruences;
  std::shared_ptr<const SymbolPool> pool;
  std::vector<UnpackedExpr> unpacked;
  StructureReport structure;
  ConstraintSystem system;
  std::vector<Assignment> witnesses;  // the first one is the family's witness
  std::vector<int> leaf;
  EventualSolution eventual;
  SymbolicIC symbolic_ic;
  std::vector<BigInt> sample_ic;
  std::int64_t verified_terms = 0;
  std::vector<std::string> trace;
  std::string key;

  const Assignment& witness() const { return witnesses.front(); }
};

struct RejectedCase {
  BehaviorVector behavior;
  std::string congruences;
  std::string stage;  // unpack | structure | solve
  std::string reason;
  std::optional<ConstraintSystem> system;
  std::vector<std::string> trace;
};

/// A solved case that could not be turned into a verified family.
struct Anomaly {
  BehaviorVector behavior;
  std::string congruences;
  std::string stage;  // initial-condition | sample | verify
  std::string detail;
  std::optional<ConstraintSystem> system;
};

struct SearchResult {
  Recurrence recurrence;
  int m = 0;
  std::size_t cases = 0;
  std::vector<SolutionFamily> families;
  std::vector<RejectedCase> rejected;
  std::vector<Anomaly> anomalies;
};

SearchResult search(const Recurrence& rec, int m, const SearchOptions& opts = {});

/// Shift-invariant key: least rotation of the per-residue descriptors
/// (behavior letter and the assigned residue of B_r, '-' when unassigned).
std::string family_key(const BehaviorVector& behavior, const CongruenceAssignment& cong);

/// Classes of family indices sharing a key, ordered by key; each class lists
/// its members in input order, representative first.
std::vector<std::vector<std::size_t>> canonicalize_mod_shift(const std::vector<SolutionFamily>& families);

/// Families whose behavior vector is its own least rotation. Shifting is only
/// used to fix the behavior string, so families that a rotation of a
/// self-symmetric behavior would merge are all kept. Every shift class holds
/// at least one of these.
std::vector<std::size_t> behavior_representatives(const std::vector<SolutionFamily>& families);

}  // namespace hofsearch
