#include <hofsearch/evaluator.hpp>
#include <hofsearch/ilp.hpp>

#include <sstream>

namespace hofsearch {

std::string to_string(DeathReason r) {
  switch (r) {
    case DeathReason::SelfReference:
      return "self-reference";
    case DeathReason::ForwardReference:
      return "forward-reference";
    case DeathReason::UndeterminedSymbol:
      return "undetermined-symbol";
  }
  return "?";
}

namespace {

struct DeathSignal {
  Death death;
};

Death death_at(std::int64_t n, const BigInt& j) {
  return {n, j == n ? DeathReason::SelfReference : DeathReason::ForwardReference};
}

class ConcreteEval {
 public:
  ConcreteEval(const Recurrence& rec, std::vector<BigInt>& terms) : rec_(rec), terms_(terms) {}

  BigInt eval(const NestedExpr& e, std::int64_t n) const {
    BigInt v = e.poly.evaluate(n);
    for (const auto& call : e.calls) {
      BigInt j = eval(*call.arg, n);
      v += call.coeff * lookup(j, n);
    }
    return v;
  }

 private:
  BigInt lookup(const BigInt& j, std::int64_t n) const {
    if (j <= 0) return rec_.default_value;
    if (j >= n) throw DeathSignal{death_at(n, j)};
    return terms_[static_cast<std::size_t>(j.get_si() - 1)];
  }

  const Recurrence& rec_;
  std::vector<BigInt>& terms_;
};

}  // namespace

Generated generate(const Recurrence& rec, const std::vector<BigInt>& ic, std::int64_t count) {
  Generated out;
  out.terms.assign(ic.begin(), ic.begin() + std::min<std::int64_t>(count, static_cast<std::int64_t>(ic.size())));
  ConcreteEval ev(rec, out.terms);
  for (std::int64_t n = static_cast<std::int64_t>(out.terms.size()) + 1; n <= count; ++n) {
    try {
      out.terms.push_back(ev.eval(rec.rhs, n));
    } catch (const DeathSignal& d) {
      out.death = d.death;
      break;
    }
  }
  return out;
}

SymValue SymValue::symbol(int id, const BigInt& coeff) {
  SymValue v;
  if (coeff != 0) v.terms_[id] = coeff;
  return v;
}

SymValue& SymValue::operator+=(const SymValue& o) {
  constant_ += o.constant_;
  for (const auto& [id, c] : o.terms_) {
    BigInt& slot = terms_[id];
    slot += c;
    if (slot == 0) terms_.erase(id);
  }
  return *this;
}

SymValue& SymValue::operator-=(const SymValue& o) {
  constant_ -= o.constant_;
  for (const auto& [id, c] : o.terms_) {
    BigInt& slot = terms_[id];
    slot -= c;
    if (slot == 0) terms_.erase(id);
  }
  return *this;
}

SymValue& SymValue::operator*=(const BigInt& s) {
  if (s == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [id, c] : terms_) c *= s;
  return *this;
}

BigInt SymValue::evaluate(const std::map<int, BigInt>& values) const {
  BigInt v = constant_;
  for (const auto& [id, c] : terms_) v += c * values.at(id);
  return v;
}

SymValue SymValue::substitute(const std::map<int, BigInt>& values) const {
  SymValue out(constant_);
  for (const auto& [id, c] : terms_) {
    auto it = values.find(id);
    if (it != values.end()) {
      out.constant_ += c * it->second;
    } else {
      out.terms_[id] = c;
    }
  }
  return out;
}

std::string SymValue::to_string(const std::function<std::string(int)>& name) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    BigInt mag = abs(c);
    if (mag != 1) out << mag.get_str() << "*";
    out << name(id);
  }
  if (constant_ != 0 || first) {
    if (!first) out << (constant_ < 0 ? " - " : " + ") << BigInt(abs(constant_)).get_str();
    else out << constant_.get_str();
  }
  return out.str();
}

std::string Assumption::to_string(const std::function<std::string(int)>& name) const {
  return expr.to_string(name) + (rel == Relation::Ge ? " >= 0" : " = 0");
}

namespace {

ilp::Program assumption_program(const std::vector<const Assumption*>& rows, const std::vector<int>& order,
                                const BigInt& bound, std::map<int, std::size_t>& col) {
  for (int id : order) col.emplace(id, col.size());
  for (const Assumption* a : rows) {
    for (const auto& [id, c] : a->expr.terms()) col.emplace(id, col.size());
  }
  ilp::Program p;
  p.num_vars = col.size();
  p.lower.assign(p.num_vars, -bound);
  p.upper.assign(p.num_vars, bound);
  for (const Assumption* a : rows) {
    ilp::Row r;
    r.coeffs.assign(p.num_vars, BigInt(0));
    for (const auto& [id, c] : a->expr.terms()) r.coeffs[col.at(id)] = c;
    r.sense = a->rel == Relation::Ge ? lp::Sense::Ge : lp::Sense::Eq;
    r.rhs = -a->expr.constant();
    p.rows.push_back(std::move(r));
  }
  return p;
}

}  // namespace

bool AssumptionSet::consistent_with(const std::vector<Assumption>& extra) const {
  return find_point({}, extra).has_value();
}

std::optional<std::map<int, BigInt>> AssumptionSet::find_point(const std::vector<int>& symbols,
                                                               const std::vector<Assumption>& extra) const {
  std::vector<const Assumption*> rows;
  for (const auto& a : items_) rows.push_back(&a);
  for (const auto& a : extra) rows.push_back(&a);
  // Constant rows are decided directly.
  std::vector<const Assumption*> symbolic;
  for (const Assumption* a : rows) {
    if (a->expr.is_concrete()) {
      const BigInt& c = a->expr.constant();
      if (a->rel == Relation::Ge ? c < 0 : c != 0) return std::nullopt;
    } else {
      symbolic.push_back(a);
    }
  }
  std::map<int, std::size_t> col;
  ilp::Program p = assumption_program(symbolic, symbols, bound_, col);
  if (p.num_vars == 0) return std::map<int, BigInt>{};
  ilp::Result res = ilp::solve(p);
  if (res.status != ilp::Status::Feasible) return std::nullopt;
  std::map<int, BigInt> point;
  for (const auto& [id, j] : col) point[id] = res.point[j];
  return point;
}

bool AssumptionSet::satisfied_by(const std::map<int, BigInt>& values) const {
  for (const auto& a : items_) {
    BigInt v = a.expr.evaluate(values);
    if (a.rel == Relation::Ge ? v < 0 : v != 0) return false;
  }
  return true;
}

void AssumptionSet::add(const Assumption& a) {
  if (!consistent_with({a})) throw InconsistentAssumption("inconsistent assumption");
  items_.push_back(a);
}

namespace {

class SymbolicEval {
 public:
  SymbolicEval(const Recurrence& rec, std::vector<SymValue>& terms, AssumptionSet& assumptions,
               const CallObserver& observer)
      : rec_(rec), terms_(terms), assumptions_(assumptions), observer_(observer) {}

  SymValue eval(const NestedExpr& e, std::int64_t n, std::vector<std::int64_t>* reads) {
    SymValue v(e.poly.evaluate(n));
    for (const auto& call : e.calls) {
      std::vector<std::int64_t> inner;
      SymValue idx = eval(*call.arg, n, &inner);
      CallEvent ev{n, idx, false, std::move(inner)};
      SymValue term = resolve(idx, n, ev.defaulted, reads);
      if (observer_) observer_(ev);
      v += term * call.coeff;
    }
    return v;
  }

 private:
  SymValue resolve(const SymValue& idx, std::int64_t n, bool& defaulted, std::vector<std::int64_t>* reads) {
    if (idx.is_concrete()) {
      const BigInt& j = idx.constant();
      if (j <= 0) {
        defaulted = true;
        return SymValue(rec_.default_value);
      }
      if (j >= n) throw DeathSignal{death_at(n, j)};
      std::int64_t pos = j.get_si();
      if (reads) reads->push_back(pos);
      return terms_[static_cast<std::size_t>(pos - 1)];
    }
    Assumption nonpos{-idx, Relation::Ge};            // idx <= 0
    Assumption pos{idx - SymValue(1), Relation::Ge};  // idx >= 1
    if (!assumptions_.consistent_with({pos})) {
      defaulted = true;
      return SymValue(rec_.default_value);
    }
    if (assumptions_.consistent_with({nonpos})) {
      assumptions_.add(nonpos);
      defaulted = true;
      return SymValue(rec_.default_value);
    }
    // Equalities may pin the index even though it is not literally constant.
    std::vector<int> ids;
    for (const auto& [id, c] : idx.terms()) ids.push_back(id);
    if (auto pt = assumptions_.find_point(ids, {pos})) {
      const BigInt v = idx.evaluate(*pt);
      if (!assumptions_.consistent_with({{idx - SymValue(v + 1), Relation::Ge}}) &&
          !assumptions_.consistent_with({{SymValue(v - 1) - idx, Relation::Ge}})) {
        return resolve(SymValue(v), n, defaulted, reads);
      }
    }
    Assumption before_n{SymValue(n - 1) - idx, Relation::Ge};  // idx <= n - 1
    if (!assumptions_.consistent_with({before_n})) throw DeathSignal{{n, DeathReason::ForwardReference}};
    throw DeathSignal{{n, DeathReason::UndeterminedSymbol}};
  }

  const Recurrence& rec_;
  std::vector<SymValue>& terms_;
  AssumptionSet& assumptions_;
  const CallObserver& observer_;
};

}  // namespace

SymGenerated generate_symbolic(const Recurrence& rec, const std::vector<SymValue>& ic, std::int64_t count,
                               AssumptionSet assumptions, const CallObserver& observer) {
  SymGenerated out;
  out.assumptions = std::move(assumptions);
  out.terms.assign(ic.begin(), ic.begin() + std::min<std::int64_t>(count, static_cast<std::int64_t>(ic.size())));
  SymbolicEval ev(rec, out.terms, out.assumptions, observer);
  for (std::int64_t n = static_cast<std::int64_t>(out.terms.size()) + 1; n <= count; ++n) {
    std::size_t checkpoint = out.assumptions.size();
    try {
      out.terms.push_back(ev.eval(rec.rhs, n, nullptr));
    } catch (const DeathSignal& d) {
      out.assumptions.truncate(checkpoint);
      out.death = d.death;
      break;
    }
  }
  return out;
}

VerifyResult verify_family(const Recurrence& rec, const std::vector<BigInt>& ic, const EventualSolution& eventual,
                           std::int64_t n_terms) {
  VerifyResult res;
  Generated g = generate(rec, ic, n_terms);
  auto term = [&](std::int64_t j) -> BigInt {
    if (j <= 0) return rec.default_value;
    return g.terms[static_cast<std::size_t>(j - 1)];
  };
  const std::int64_t have = static_cast<std::int64_t>(g.terms.size());
  for (std::int64_t n = static_cast<std::int64_t>(ic.size()) + 1; n <= have; ++n) {
    auto want = eventual.expected(n, term);
    if (!want || *want != g.terms[static_cast<std::size_t>(n - 1)]) {
      res.first_mismatch = n;
      return res;
    }
  }
  if (g.death) {
    res.death = g.death;
    res.first_mismatch = g.death->index;
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace hofsearch
