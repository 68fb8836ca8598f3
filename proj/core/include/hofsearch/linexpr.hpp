#pragma once

#include <hofsearch/numeric.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hofsearch {

/// constant + sum coeff * symbol, exact rationals. Zero coefficients are never stored.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(const Rational& c) : constant_(c) {}  // NOLINT: implicit by intent
  LinExpr(const BigInt& c) : constant_(c) {}    // NOLINT
  LinExpr(long c) : constant_(c) {}             // NOLINT

  static LinExpr symbol(int id, const Rational& coeff = 1);

  const Rational& constant() const { return constant_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coeff(int id) const;

  bool is_constant() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && sgn(constant_) == 0; }
  bool is_integral() const;
  /// Integer value of a constant, integral expression.
  std::optional<BigInt> as_integer() const;
  /// Same expression without the constant term.
  LinExpr symbolic_part() const;

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rational& s);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const Rational& s) { return a *= s; }
  friend LinExpr operator*(const Rational& s, LinExpr a) { return a *= s; }
  LinExpr operator-() const { return *this * Rational(-1); }

  /// Replace symbols that have a value in `values`; others are kept.
  LinExpr substitute(const std::map<int, BigInt>& values) const;
  /// Replace symbols by arbitrary expressions.
  LinExpr substitute(const std::function<std::optional<LinExpr>(int)>& f) const;
  /// Exact value when every symbol is assigned. nullopt if some symbol is missing.
  std::optional<Rational> evaluate(const std::map<int, BigInt>& values) const;

  /// Smallest positive integer L with L * expr integral.
  BigInt denominator_lcm() const;

  bool operator==(const LinExpr& o) const = default;
  bool operator<(const LinExpr& o) const;

  std::string to_string(const std::function<std::string(int)>& name) const;

 private:
  Rational constant_;
  std::map<int, Rational> terms_;
};

enum class SymbolKind { B, V, Aux };

struct SymbolInfo {
  SymbolKind kind = SymbolKind::Aux;
  int residue = -1;   // B
  LinExpr index;      // V: the (possibly symbolic) index c of Q(c)
  std::string label;  // Aux
};

/// Symbols of one case: B_r per residue, interned V(c), auxiliaries.
class SymbolPool {
 public:
  explicit SymbolPool(std::string seq_name = "Q") : seq_name_(std::move(seq_name)) {}

  int b(int residue);
  int v(const LinExpr& index);
  int aux(const std::string& label);

  std::optional<int> find_b(int residue) const;
  std::optional<int> find_v(const LinExpr& index) const;

  const SymbolInfo& info(int id) const { return symbols_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return symbols_.size(); }
  const std::string& seq_name() const { return seq_name_; }

  std::string name(int id) const;
  std::function<std::string(int)> namer() const {
    return [this](int id) { return name(id); };
  }

 private:
  std::string seq_name_;
  std::vector<SymbolInfo> symbols_;
  std::map<int, int> b_ids_;
  std::map<LinExpr, int> v_ids_;
};

}  // namespace hofsearch
