#pragma once

#include <hofsearch/growth.hpp>
#include <hofsearch/linexpr.hpp>
#include <hofsearch/recurrence.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hofsearch {

/// Assumed eventual behavior of one interleaved subsequence.
enum class Behavior { Const, StdLinear, Steep };
using BehaviorVector = std::vector<Behavior>;

/// "C", "L", "S" per residue, e.g. "SLCC".
std::string to_string(const BehaviorVector& b);
BehaviorVector parse_behavior(const std::string& text);
/// All 3^m vectors; residue 0 varies slowest, Const < StdLinear < Steep.
std::vector<BehaviorVector> all_behaviors(int m);

/// Residues mod m of symbolic constants. Keys are the symbolic parts (no
/// constant term, integer coefficients, first coefficient positive).
struct CongruenceAssignment {
  std::vector<std::pair<LinExpr, int>> entries;

  std::optional<int> residue_of(const LinExpr& key) const;
  bool operator==(const CongruenceAssignment&) const = default;
  std::string to_string(const SymbolPool& pool) const;
};

/// Normalizes the symbolic part of `e` to a congruence key. Returns the key
/// and the sign s with symbolic_part(e) = s * key.
std::pair<LinExpr, int> congruence_key(const LinExpr& e);

/// coeff * a^(residue)(k - lag)
struct UnpackedRef {
  BigInt coeff;
  int residue = 0;
  LinExpr lag;
  bool operator==(const UnpackedRef&) const = default;
};

/// Eventual identity Q(mk + r) = sum poly[p] k^p + sum refs.
struct UnpackedExpr {
  std::vector<LinExpr> poly;
  std::vector<UnpackedRef> refs;

  int degree() const;  // -1 for a zero polynomial part
  LinExpr coeff(int p) const;
  std::string to_string(const SymbolPool& pool, int m, int r) const;
  bool operator==(const UnpackedExpr&) const = default;
};

/// Index requirement: expr >= 1 keeps a resolved call strictly before n.
struct ValidityReq {
  int residue = 0;
  LinExpr expr;
};

struct UnpackResult {
  std::vector<UnpackedExpr> exprs;
  std::vector<ValidityReq> validity;
  std::vector<std::string> trace;
};

/// Lazy mode: the residue of `key` is needed but not assigned.
class ResidueUndecided : public std::runtime_error {
 public:
  explicit ResidueUndecided(LinExpr key) : std::runtime_error("residue undecided"), key_(std::move(key)) {}
  const LinExpr& key() const { return key_; }

 private:
  LinExpr key_;
};

/// The case cannot produce a solution of the assumed shape.
class UnpackRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Creates a pool whose first m symbols are B_0..B_{m-1} (ids 0..m-1).
SymbolPool make_pool(const Recurrence& rec, int m);

/// Basic recurrences: the product of residues for every Const residue that is
/// an inner-call target. Otherwise: lazy case splitting driven by unpack.
std::vector<CongruenceAssignment> enumerate_congruence_cases(const Recurrence& rec, int m,
                                                             const BehaviorVector& behavior);

/// Throws ResidueUndecided or UnpackRejected.
UnpackResult unpack(const Recurrence& rec, int m, const BehaviorVector& behavior, const CongruenceAssignment& cong,
                    SymbolPool& pool, bool trace = false);

struct SteepnessReq {
  int cls = 0;
  std::vector<int> cycle;  // residues in cycle order
  LinExpr excess;          // sum c_i - m * sum e_i, must be >= 1
};

struct PositivityReport {
  bool positive = true;
  std::vector<std::string> warnings;
};

struct StructureReport {
  bool ok = false;
  std::string reason;
  PRSystem prs;
  GrowthResult growth;
  PositivityReport positivity;
  std::vector<std::string> labels;  // per residue
  std::vector<SteepnessReq> steepness;
};

/// Symbolic lags are kept abstract; symbolic constant terms count as degree 0.
std::pair<PRSystem, PositivityReport> extract_prs(const std::vector<UnpackedExpr>& exprs, const BehaviorVector& behavior);

StructureReport check_structure(const std::vector<UnpackedExpr>& exprs, const BehaviorVector& behavior);

}  // namespace hofsearch
