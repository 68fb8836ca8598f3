#pragma once

#include <hofsearch/numeric.hpp>

#include <climits>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hofsearch {

/// Which variable a polynomial is written in: the recurrence index n, or the
/// interleaved-sequence index k.
enum class PolyVar { N, K };

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = INT_MIN;

/// Dense integer polynomial; index = power. Trailing zeros are never stored.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs, PolyVar var = PolyVar::N);

  static IntPolynomial constant(const BigInt& c, PolyVar var = PolyVar::N);
  /// The monomial `var`.
  static IntPolynomial identity(PolyVar var = PolyVar::N);

  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  PolyVar variable() const { return var_; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(std::size_t power) const;
  BigInt leading_coefficient() const;

  BigInt evaluate(const BigInt& x) const;

  /// Leading coefficient positive, or zero polynomial, or nonnegative constant.
  bool eventually_nonnegative() const;
  /// Smallest x0 >= 1 such that p(x) >= 0 for every integer x >= x0.
  /// Requires eventually_nonnegative().
  std::int64_t nonnegative_from() const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const BigInt& s) const;
  bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

  /// Human-readable, highest power first: "n^2 - 3*n + 1". Zero prints "0".
  std::string to_string() const;

 private:
  void normalize();

  std::vector<BigInt> coeffs_;
  PolyVar var_ = PolyVar::N;
};

struct NestedExpr;

/// One term `coeff * Q(arg)` of a nested expression.
struct Call {
  BigInt coeff;
  std::shared_ptr<const NestedExpr> arg;
};

/// P(n) + sum coeff_i * Q(E_i), where each E_i is again a NestedExpr.
/// Calls are kept in canonical order (depth, then formatted text) with equal
/// arguments merged.
struct NestedExpr {
  IntPolynomial poly;
  std::vector<Call> calls;

  int depth() const;
  bool has_calls() const { return !calls.empty(); }
  void canonicalize();

  bool operator==(const NestedExpr& o) const;
};

/// Render an expression using `name` for the sequence.
std::string format_expr(const NestedExpr& e, std::string_view name);

/// Q(n) = rhs, with Q(j) = default_value for j <= 0.
struct Recurrence {
  std::string name = "Q";
  NestedExpr rhs;
  BigInt default_value = 0;

  bool operator==(const Recurrence& o) const {
    return name == o.name && rhs == o.rhs && default_value == o.default_value;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parse `Q(n) = ...`. Throws ParseError.
Recurrence parse(std::string_view text);

/// Canonical text; parse(format(r)) == r.
std::string format(const Recurrence& rec);

/// P = 0, all call coefficients positive, every argument n - beta - Q(n - gamma)
/// with beta >= 0 and gamma >= 1.
bool is_basic(const Recurrence& rec);

/// True when every innermost call argument has the form n - gamma, gamma >= 1.
bool has_standard_innermost(const Recurrence& rec);

/// Largest gamma such that Q(n - gamma) appears as an innermost call.
/// Throws std::invalid_argument if no innermost call has that form.
std::int64_t max_inner_shift(const Recurrence& rec);

/// If `e` is `n - s` (no calls), returns s.
std::optional<BigInt> as_shift(const NestedExpr& e);

}  // namespace hofsearch
