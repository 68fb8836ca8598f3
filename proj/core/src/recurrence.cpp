#include <hofsearch/recurrence.hpp>

#include <algorithm>
#include <stdexcept>

namespace hofsearch {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs, PolyVar var)
    : coeffs_(std::move(coeffs)), var_(var) {
  normalize();
}

IntPolynomial IntPolynomial::constant(const BigInt& c, PolyVar var) {
  return IntPolynomial({c}, var);
}

IntPolynomial IntPolynomial::identity(PolyVar var) {
  return IntPolynomial({BigInt(0), BigInt(1)}, var);
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int IntPolynomial::degree() const {
  return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
}

BigInt IntPolynomial::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : BigInt(0);
}

BigInt IntPolynomial::leading_coefficient() const {
  return coeffs_.empty() ? BigInt(0) : coeffs_.back();
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool IntPolynomial::eventually_nonnegative() const {
  return coeffs_.empty() || coeffs_.back() > 0;
}

std::int64_t IntPolynomial::nonnegative_from() const {
  if (!eventually_nonnegative()) throw std::invalid_argument("polynomial is not eventually nonnegative");
  if (degree() <= 0) return 1;
  // Cauchy bound: every real root is below 1 + max |a_i / a_n|.
  Rational worst = 0;
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
    Rational q(abs(coeffs_[i]), coeffs_.back());
    q.canonicalize();
    if (q > worst) worst = q;
  }
  BigInt bound = hofsearch::ceil(worst) + 1;
  auto x = to_int64(bound).value();
  while (x > 1 && evaluate(BigInt(x - 1)) >= 0) --x;
  return std::max<std::int64_t>(x, 1);
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<BigInt> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coefficient(i) + o.coefficient(i);
  return IntPolynomial(std::move(out), var_);
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + o * BigInt(-1); }

IntPolynomial IntPolynomial::operator*(const BigInt& s) const {
  std::vector<BigInt> out = coeffs_;
  for (auto& c : out) c *= s;
  return IntPolynomial(std::move(out), var_);
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  const char* v = var_ == PolyVar::N ? "n" : "k";
  std::string out;
  for (int p = degree(); p >= 0; --p) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(p)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (p == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += v;
    if (p > 1) out += "^" + std::to_string(p);
  }
  return out;
}

int NestedExpr::depth() const {
  int d = 0;
  for (const auto& c : calls) d = std::max(d, 1 + c.arg->depth());
  return d;
}

bool NestedExpr::operator==(const NestedExpr& o) const {
  if (!(poly == o.poly) || calls.size() != o.calls.size()) return false;
  for (std::size_t i = 0; i < calls.size(); ++i) {
    if (calls[i].coeff != o.calls[i].coeff || !(*calls[i].arg == *o.calls[i].arg)) return false;
  }
  return true;
}

void NestedExpr::canonicalize() {
  std::vector<Call> merged;
  for (auto& c : calls) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Call& m) { return *m.arg == *c.arg; });
    if (it != merged.end()) {
      it->coeff += c.coeff;
    } else {
      merged.push_back(c);
    }
  }
  std::erase_if(merged, [](const Call& c) { return c.coeff == 0; });
  std::stable_sort(merged.begin(), merged.end(), [](const Call& a, const Call& b) {
    int da = a.arg->depth(), db = b.arg->depth();
    if (da != db) return da < db;
    std::string fa = format_expr(*a.arg, "Q"), fb = format_expr(*b.arg, "Q");
    if (fa != fb) return fa < fb;
    return a.coeff < b.coeff;
  });
  calls = std::move(merged);
}

std::string format_expr(const NestedExpr& e, std::string_view name) {
  std::string out;
  if (!e.poly.is_zero()) out = e.poly.to_string();
  for (const auto& c : e.calls) {
    BigInt mag = abs(c.coeff);
    if (out.empty()) {
      if (c.coeff < 0) out += "-";
    } else {
      out += c.coeff < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += std::string(name) + "(" + format_expr(*c.arg, name) + ")";
  }
  return out.empty() ? "0" : out;
}

std::string format(const Recurrence& rec) {
  return rec.name + "(n) = " + format_expr(rec.rhs, rec.name);
}

std::optional<BigInt> as_shift(const NestedExpr& e) {
  if (e.has_calls() || e.poly.degree() != 1 || e.poly.coefficient(1) != 1) return std::nullopt;
  return BigInt(-e.poly.coefficient(0));
}

namespace {

template <typename F>
void for_each_innermost(const NestedExpr& e, F&& f) {
  for (const auto& c : e.calls) {
    if (c.arg->has_calls()) {
      for_each_innermost(*c.arg, f);
    } else {
      f(*c.arg);
    }
  }
}

}  // namespace

bool is_basic(const Recurrence& rec) {
  const auto& rhs = rec.rhs;
  if (!rhs.poly.is_zero() || rhs.calls.empty()) return false;
  for (const auto& call : rhs.calls) {
    if (call.coeff <= 0) return false;
    const NestedExpr& e = *call.arg;
    // n - beta - Q(n - gamma)
    if (e.calls.size() != 1 || e.calls[0].coeff != -1) return false;
    if (e.poly.degree() != 1 || e.poly.coefficient(1) != 1) return false;
    if (-e.poly.coefficient(0) < 0) return false;
    auto gamma = as_shift(*e.calls[0].arg);
    if (!gamma || *gamma < 1) return false;
  }
  return true;
}

bool has_standard_innermost(const Recurrence& rec) {
  bool ok = true;
  for_each_innermost(rec.rhs, [&](const NestedExpr& arg) {
    auto s = as_shift(arg);
    if (!s || *s < 1) ok = false;
  });
  return ok;
}

std::int64_t max_inner_shift(const Recurrence& rec) {
  std::optional<BigInt> best;
  for_each_innermost(rec.rhs, [&](const NestedExpr& arg) {
    auto s = as_shift(arg);
    if (s && *s >= 1 && (!best || *s > *best)) best = s;
  });
  if (!best) throw std::invalid_argument("recurrence has no innermost call of the form n - gamma");
  return to_int64(*best).value();
}

}  // namespace hofsearch
