#pragma once

#include <hofsearch/linexpr.hpp>
#include <hofsearch/unpacker.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hofsearch {

enum class ConstraintKind { Eq, Ge, Cong, CondEq };
enum class GuardKind { Eq, Le };

/// Eq: lhs == rhs. Ge: lhs >= rhs. Cong: lhs = residue (mod modulus).
/// CondEq: (guard_lhs == / <= guard_rhs) implies lhs == rhs.
struct Constraint {
  ConstraintKind kind = ConstraintKind::Eq;
  LinExpr lhs;
  LinExpr rhs;
  int residue = 0;
  int modulus = 0;
  GuardKind guard_kind = GuardKind::Eq;
  LinExpr guard_lhs;
  LinExpr guard_rhs;
  std::string provenance;

  static Constraint eq(LinExpr l, LinExpr r, std::string why);
  static Constraint ge(LinExpr l, LinExpr r, std::string why);
  static Constraint cong(LinExpr x, int residue, int modulus, std::string why);
  static Constraint cond_eq(GuardKind g, LinExpr gl, LinExpr gr, LinExpr l, LinExpr r, std::string why);

  std::string to_string(const SymbolPool& pool) const;
};

struct ConstraintSystem {
  int m = 0;
  std::shared_ptr<const SymbolPool> pool;
  std::vector<Constraint> constraints;

  /// Every symbol used by some constraint, ordered B, V, Aux (ids ascending within a kind).
  std::vector<int> variables() const;
  std::string to_string() const;
};

using Assignment = std::map<int, BigInt>;

/// Provenance tags.
inline constexpr const char* kProvPositivity = "positivity";
inline constexpr const char* kProvConstant = "constant-value";
inline constexpr const char* kProvIntercept = "linear-intercept";
inline constexpr const char* kProvSteepness = "steepness";
inline constexpr const char* kProvCongruence = "congruence";
inline constexpr const char* kProvValidity = "reference-validity";
inline constexpr const char* kProvCoincidence = "coincidence";
inline constexpr const char* kProvNonpositive = "nonpositive-index";

/// Requires report.ok. `pool` must be the pool the case was unpacked with.
ConstraintSystem build_constraints(const UnpackResult& unpacked, const BehaviorVector& behavior,
                                   const CongruenceAssignment& cong, const StructureReport& report,
                                   std::shared_ptr<const SymbolPool> pool, const BigInt& default_value);

/// Exact check of every constraint. Throws std::out_of_range when a used
/// symbol has no value.
bool check_assignment(const ConstraintSystem& sys, const Assignment& asg);

}  // namespace hofsearch
