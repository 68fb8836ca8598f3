#pragma once

#include <hofsearch/numeric.hpp>
#include <hofsearch/recurrence.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

namespace hofsearch {

/// coeff * Q(index) for a fixed absolute index.
struct TermRef {
  BigInt coeff;
  std::int64_t index = 0;
  bool operator==(const TermRef&) const = default;
};

/// coeff * a^(residue)(k - lag), i.e. coeff * Q(m*(k - lag) + residue).
struct LagRef {
  BigInt coeff;
  int residue = 0;
  std::int64_t lag = 0;
  bool operator==(const LagRef&) const = default;
};

/// Eventual description of one interleaved subsequence a^(r)(k) = Q(m*k + r).
struct ResidueForm {
  enum class Kind { Constant, Linear, Recurrent };

  Kind kind = Kind::Constant;
  BigInt value;      // Constant
  BigInt slope;      // Linear: slope*k + intercept
  BigInt intercept;
  IntPolynomial poly{{}, PolyVar::K};  // Recurrent: inhomogeneous part in k
  std::vector<TermRef> fixed_terms;    // Recurrent: references to Q(c)
  std::vector<LagRef> refs;            // Recurrent: references to earlier subsequence terms

  static ResidueForm constant(const BigInt& v);
  static ResidueForm linear(const BigInt& slope, const BigInt& intercept);
  static ResidueForm recurrent(IntPolynomial poly, std::vector<TermRef> fixed, std::vector<LagRef> refs);

  bool operator==(const ResidueForm&) const = default;
};

/// Per-residue eventual forms with period m = residues.size().
struct EventualSolution {
  std::vector<ResidueForm> residues;

  int period() const { return static_cast<int>(residues.size()); }

  /// Expected Q(n) given access to already known terms. `term(j)` must return
  /// Q(j) for j < n (default value for j <= 0). Returns nullopt if a reference
  /// points at n or later.
  std::optional<BigInt> expected(std::int64_t n, const std::function<BigInt(std::int64_t)>& term) const;

  /// The same solution delayed by s >= 0 positions: Q'(n) = Q(n - s). Paired
  /// with an initial condition prefixed by s default values it describes the
  /// shifted sequence exactly.
  EventualSolution delayed(std::int64_t s) const;

  std::string to_string(std::string_view name) const;
};

}  // namespace hofsearch
