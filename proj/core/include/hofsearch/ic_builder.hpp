#pragma once

#include <hofsearch/constraints.hpp>
#include <hofsearch/evaluator.hpp>
#include <hofsearch/eventual.hpp>
#include <hofsearch/unpacker.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hofsearch {

/// Substitutes the witness into the unpacked expressions. Q(c) with c <= 0
/// becomes the default value; other Q(c) become fixed term references.
/// Throws std::logic_error if a symbol survives.
EventualSolution concretize(const Recurrence& rec, const std::vector<UnpackedExpr>& exprs, const BehaviorVector& behavior,
                            const SymbolPool& pool, const Assignment& asg);

/// Initial condition whose entries may contain symbols; symbol id j stands for Q(j).
struct SymbolicIC {
  std::vector<SymValue> entries;
  AssumptionSet constraints;

  std::size_t length() const { return entries.size(); }
  std::vector<int> symbols() const;
  std::string to_string(const std::string& seq_name) const;
  std::vector<std::string> constraint_strings(const std::string& seq_name) const;
};

struct ICOptions {
  std::optional<std::int64_t> max_length;  // default 8m + c0 + gamma
  std::int64_t validate_terms = 200;
};

struct ICResult {
  std::optional<SymbolicIC> ic;
  std::string failure;
  std::int64_t c0 = 0;
  std::int64_t attempts = 0;
};

ICResult build_ic(const Recurrence& rec, const BehaviorVector& behavior, const EventualSolution& eventual,
                  const ConstraintSystem& sys, const Assignment& asg, const ICOptions& opts = {});

/// Throws std::invalid_argument when a symbol is missing or the values
/// violate the constraints.
std::vector<BigInt> instantiate(const SymbolicIC& sic, const std::map<int, BigInt>& values);

/// Deterministic instantiation: smallest magnitudes first.
std::optional<std::vector<BigInt>> sample_instantiation(const SymbolicIC& sic);

}  // namespace hofsearch
