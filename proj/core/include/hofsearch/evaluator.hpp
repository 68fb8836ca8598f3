#pragma once

#include <hofsearch/eventual.hpp>
#include <hofsearch/numeric.hpp>
#include <hofsearch/recurrence.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hofsearch {

enum class DeathReason { SelfReference, ForwardReference, UndeterminedSymbol };

std::string to_string(DeathReason r);

/// Generation failed while computing Q(index).
struct Death {
  std::int64_t index = 0;
  DeathReason reason = DeathReason::SelfReference;
  bool operator==(const Death&) const = default;
};

struct Generated {
  std::vector<BigInt> terms;  // Q(1..), up to the term before death
  std::optional<Death> death;
};

/// Q(1..count) from the initial condition; death is returned as data.
Generated generate(const Recurrence& rec, const std::vector<BigInt>& ic, std::int64_t count);

/// Integer linear combination of free symbols.
class SymValue {
 public:
  SymValue() = default;
  SymValue(const BigInt& c) : constant_(c) {}  // NOLINT: implicit by intent
  SymValue(long c) : constant_(c) {}           // NOLINT

  static SymValue symbol(int id, const BigInt& coeff = 1);

  const BigInt& constant() const { return constant_; }
  const std::map<int, BigInt>& terms() const { return terms_; }
  bool is_concrete() const { return terms_.empty(); }

  SymValue& operator+=(const SymValue& o);
  SymValue& operator-=(const SymValue& o);
  SymValue& operator*=(const BigInt& s);
  friend SymValue operator+(SymValue a, const SymValue& b) { return a += b; }
  friend SymValue operator-(SymValue a, const SymValue& b) { return a -= b; }
  friend SymValue operator*(SymValue a, const BigInt& s) { return a *= s; }
  SymValue operator-() const { return *this * BigInt(-1); }
  bool operator==(const SymValue&) const = default;

  /// Value with every symbol assigned; throws std::out_of_range on a missing symbol.
  BigInt evaluate(const std::map<int, BigInt>& values) const;
  SymValue substitute(const std::map<int, BigInt>& values) const;

  std::string to_string(const std::function<std::string(int)>& name) const;

 private:
  BigInt constant_;
  std::map<int, BigInt> terms_;
};

enum class Relation { Ge, Eq };  // expr >= 0, expr == 0

struct Assumption {
  SymValue expr;
  Relation rel = Relation::Ge;
  bool operator==(const Assumption&) const = default;
  std::string to_string(const std::function<std::string(int)>& name) const;
};

class InconsistentAssumption : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear constraints over symbols, kept consistent over the integers inside
/// the box [-bound, bound] (checked by the bounded ILP on every insertion).
class AssumptionSet {
 public:
  explicit AssumptionSet(BigInt bound = BigInt(1000000)) : bound_(std::move(bound)) {}

  /// Throws InconsistentAssumption.
  void add(const Assumption& a);
  /// Whether adding `extra` keeps the set satisfiable.
  bool consistent_with(const std::vector<Assumption>& extra) const;
  bool consistent() const { return consistent_with({}); }
  /// A satisfying point (smallest magnitudes first) for the listed symbols.
  std::optional<std::map<int, BigInt>> find_point(const std::vector<int>& symbols,
                                                  const std::vector<Assumption>& extra = {}) const;
  bool satisfied_by(const std::map<int, BigInt>& values) const;

  const std::vector<Assumption>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  void truncate(std::size_t n) { items_.resize(n); }
  const BigInt& bound() const { return bound_; }

 private:
  BigInt bound_;
  std::vector<Assumption> items_;
};

/// One resolved call Q(index) while computing Q(n). `inner_reads` lists the
/// term positions read directly while evaluating the index.
struct CallEvent {
  std::int64_t n = 0;
  SymValue index;
  bool defaulted = false;
  std::vector<std::int64_t> inner_reads;
};
using CallObserver = std::function<void(const CallEvent&)>;

struct SymGenerated {
  std::vector<SymValue> terms;
  AssumptionSet assumptions;
  std::optional<Death> death;
};

/// Like generate, over symbolic terms. An index whose sign the assumptions do
/// not decide is assumed nonpositive (the assumption is recorded); an index
/// that is symbolic and provably positive kills the sequence with
/// UndeterminedSymbol.
SymGenerated generate_symbolic(const Recurrence& rec, const std::vector<SymValue>& ic, std::int64_t count,
                               AssumptionSet assumptions, const CallObserver& observer = {});

struct VerifyResult {
  bool ok = false;
  std::optional<std::int64_t> first_mismatch;
  std::optional<Death> death;
};

/// Generate n_terms and check every term after the ic against `eventual`.
VerifyResult verify_family(const Recurrence& rec, const std::vector<BigInt>& ic, const EventualSolution& eventual,
                           std::int64_t n_terms);

}  // namespace hofsearch
