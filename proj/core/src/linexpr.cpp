#include <hofsearch/linexpr.hpp>

#include <sstream>
#include <stdexcept>

namespace hofsearch {

LinExpr LinExpr::symbol(int id, const Rational& coeff) {
  LinExpr e;
  if (sgn(coeff) != 0) e.terms_[id] = coeff;
  return e;
}

Rational LinExpr::coeff(int id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool LinExpr::is_integral() const {
  if (!is_integer(constant_)) return false;
  for (const auto& [id, c] : terms_) {
    if (!is_integer(c)) return false;
  }
  return true;
}

std::optional<BigInt> LinExpr::as_integer() const {
  if (!terms_.empty() || !is_integer(constant_)) return std::nullopt;
  return BigInt(constant_.get_num());
}

LinExpr LinExpr::symbolic_part() const {
  LinExpr e = *this;
  e.constant_ = 0;
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant_ += o.constant_;
  for (const auto& [id, c] : o.terms_) {
    Rational& slot = terms_[id];
    slot += c;
    if (sgn(slot) == 0) terms_.erase(id);
  }
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  constant_ -= o.constant_;
  for (const auto& [id, c] : o.terms_) {
    Rational& slot = terms_[id];
    slot -= c;
    if (sgn(slot) == 0) terms_.erase(id);
  }
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [id, c] : terms_) c *= s;
  return *this;
}

LinExpr LinExpr::substitute(const std::map<int, BigInt>& values) const {
  LinExpr out(constant_);
  for (const auto& [id, c] : terms_) {
    auto it = values.find(id);
    if (it != values.end()) {
      out.constant_ += c * Rational(it->second);
    } else {
      out += symbol(id, c);
    }
  }
  return out;
}

LinExpr LinExpr::substitute(const std::function<std::optional<LinExpr>(int)>& f) const {
  LinExpr out(constant_);
  for (const auto& [id, c] : terms_) {
    if (auto repl = f(id)) {
      out += *repl * c;
    } else {
      out += symbol(id, c);
    }
  }
  return out;
}

std::optional<Rational> LinExpr::evaluate(const std::map<int, BigInt>& values) const {
  Rational v = constant_;
  for (const auto& [id, c] : terms_) {
    auto it = values.find(id);
    if (it == values.end()) return std::nullopt;
    v += c * Rational(it->second);
  }
  return v;
}

BigInt LinExpr::denominator_lcm() const {
  BigInt l = constant_.get_den();
  for (const auto& [id, c] : terms_) l = lcm(l, BigInt(c.get_den()));
  return l;
}

bool LinExpr::operator<(const LinExpr& o) const {
  if (constant_ != o.constant_) return constant_ < o.constant_;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first;
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != o.terms_.end();
}

std::string LinExpr::to_string(const std::function<std::string(int)>& name) const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const Rational& c, const std::string& body) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (body.empty()) {
      out << hofsearch::to_string(mag);
    } else if (mag == 1) {
      out << body;
    } else if (is_integer(mag)) {
      out << hofsearch::to_string(mag) << "*" << body;
    } else {
      out << "(" << hofsearch::to_string(mag) << ")*" << body;
    }
  };
  for (const auto& [id, c] : terms_) emit(c, name(id));
  if (sgn(constant_) != 0 || first) emit(constant_, "");
  return out.str();
}

int SymbolPool::b(int residue) {
  auto it = b_ids_.find(residue);
  if (it != b_ids_.end()) return it->second;
  int id = static_cast<int>(symbols_.size());
  SymbolInfo s;
  s.kind = SymbolKind::B;
  s.residue = residue;
  symbols_.push_back(std::move(s));
  b_ids_[residue] = id;
  return id;
}

int SymbolPool::v(const LinExpr& index) {
  auto it = v_ids_.find(index);
  if (it != v_ids_.end()) return it->second;
  int id = static_cast<int>(symbols_.size());
  SymbolInfo s;
  s.kind = SymbolKind::V;
  s.index = index;
  symbols_.push_back(std::move(s));
  v_ids_[index] = id;
  return id;
}

int SymbolPool::aux(const std::string& label) {
  int id = static_cast<int>(symbols_.size());
  SymbolInfo s;
  s.kind = SymbolKind::Aux;
  s.label = label;
  symbols_.push_back(std::move(s));
  return id;
}

std::optional<int> SymbolPool::find_b(int residue) const {
  auto it = b_ids_.find(residue);
  if (it == b_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> SymbolPool::find_v(const LinExpr& index) const {
  auto it = v_ids_.find(index);
  if (it == v_ids_.end()) return std::nullopt;
  return it->second;
}

std::string SymbolPool::name(int id) const {
  const SymbolInfo& s = info(id);
  switch (s.kind) {
    case SymbolKind::B:
      return "B_" + std::to_string(s.residue);
    case SymbolKind::V:
      return seq_name_ + "(" + s.index.to_string([this](int j) { return name(j); }) + ")";
    case SymbolKind::Aux:
      return s.label;
  }
  throw std::logic_error("unknown symbol kind");
}

}  // namespace hofsearch
