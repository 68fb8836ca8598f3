#include <hofsearch/ic_builder.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hofsearch {
namespace {

BigInt integral(const Rational& q, const char* what) {
  if (!is_integer(q)) throw std::logic_error(std::string("non-integral ") + what);
  return q.get_num();
}

/// Witness value of a symbol index; V symbols are resolved through their index.
BigInt index_value(const SymbolPool& pool, int id, const Assignment& asg) {
  auto v = pool.info(id).index.evaluate(asg);
  if (!v) throw std::logic_error("index of " + pool.name(id) + " has an unassigned symbol");
  return integral(*v, "index");
}

/// constant + fixed term references for an expression appearing in a steep residue.
std::pair<BigInt, std::vector<TermRef>> resolve_constant(const LinExpr& e, const SymbolPool& pool,
                                                         const Assignment& asg, const BigInt& default_value) {
  Rational c = e.constant();
  std::map<std::int64_t, BigInt> refs;
  for (const auto& [id, coeff] : e.terms()) {
    const SymbolInfo& info = pool.info(id);
    if (info.kind == SymbolKind::V) {
      BigInt idx = index_value(pool, id, asg);
      if (idx <= 0) {
        c += coeff * Rational(default_value);
      } else {
        refs[idx.get_si()] += integral(coeff, "coefficient");
      }
      continue;
    }
    auto it = asg.find(id);
    if (it == asg.end()) throw std::logic_error("symbol " + pool.name(id) + " survives concretization");
    c += coeff * Rational(it->second);
  }
  std::vector<TermRef> out;
  for (const auto& [idx, coeff] : refs) {
    if (coeff != 0) out.push_back({coeff, idx});
  }
  return {integral(c, "constant"), out};
}

BigInt value_of(const LinExpr& e, const Assignment& asg, const char* what) {
  auto v = e.evaluate(asg);
  if (!v) throw std::logic_error(std::string("unassigned symbol in ") + what);
  return integral(*v, what);
}

}  // namespace

EventualSolution concretize(const Recurrence& rec, const std::vector<UnpackedExpr>& exprs, const BehaviorVector& behavior,
                            const SymbolPool& pool, const Assignment& asg) {
  const int m = static_cast<int>(behavior.size());
  EventualSolution sol;
  for (int r = 0; r < m; ++r) {
    const UnpackedExpr& e = exprs[static_cast<std::size_t>(r)];
    const LinExpr b = LinExpr::symbol(*pool.find_b(r));
    switch (behavior[static_cast<std::size_t>(r)]) {
      case Behavior::Const:
        sol.residues.push_back(ResidueForm::constant(value_of(b, asg, "B")));
        break;
      case Behavior::StdLinear:
        sol.residues.push_back(ResidueForm::linear(BigInt(m), value_of(b, asg, "B")));
        break;
      case Behavior::Steep: {
        auto [c0, fixed] = resolve_constant(e.coeff(0), pool, asg, rec.default_value);
        std::vector<BigInt> coeffs{c0};
        for (int p = 1; p <= e.degree(); ++p) coeffs.push_back(value_of(e.coeff(p), asg, "k coefficient"));
        std::vector<LagRef> refs;
        for (const auto& ref : e.refs) {
          BigInt lag = value_of(ref.lag, asg, "lag");
          refs.push_back({ref.coeff, ref.residue, lag.get_si()});
        }
        sol.residues.push_back(ResidueForm::recurrent(IntPolynomial(coeffs, PolyVar::K), fixed, refs));
        break;
      }
    }
  }
  return sol;
}

std::vector<int> SymbolicIC::symbols() const {
  std::set<int> ids;
  for (const auto& e : entries) {
    for (const auto& [id, c] : e.terms()) ids.insert(id);
  }
  for (const auto& a : constraints.items()) {
    for (const auto& [id, c] : a.expr.terms()) ids.insert(id);
  }
  return {ids.begin(), ids.end()};
}

std::string SymbolicIC::to_string(const std::string& seq_name) const {
  auto name = [&](int id) { return seq_name + "(" + std::to_string(id) + ")"; };
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ", ";
    s += entries[i].to_string(name);
  }
  return s + "]";
}

std::vector<std::string> SymbolicIC::constraint_strings(const std::string& seq_name) const {
  auto name = [&](int id) { return seq_name + "(" + std::to_string(id) + ")"; };
  std::vector<std::string> out;
  for (const auto& a : constraints.items()) out.push_back(a.to_string(name));
  return out;
}

std::vector<BigInt> instantiate(const SymbolicIC& sic, const std::map<int, BigInt>& values) {
  for (int id : sic.symbols()) {
    if (!values.count(id)) throw std::invalid_argument("no value for symbol " + std::to_string(id));
  }
  if (!sic.constraints.satisfied_by(values)) throw std::invalid_argument("values violate the initial-condition constraints");
  std::vector<BigInt> out;
  for (const auto& e : sic.entries) out.push_back(e.evaluate(values));
  return out;
}

std::optional<std::vector<BigInt>> sample_instantiation(const SymbolicIC& sic) {
  auto point = sic.constraints.find_point(sic.symbols());
  if (!point) return std::nullopt;
  return instantiate(sic, *point);
}

namespace {

/// Reduced row echelon form in place; returns pivot column per row.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

class ICBuilder {
 public:
  ICBuilder(const Recurrence& rec, const BehaviorVector& behavior, const EventualSolution& eventual,
            const ConstraintSystem& sys, const Assignment& asg, const ICOptions& opts)
      : rec_(rec), behavior_(behavior), eventual_(eventual), sys_(sys), asg_(asg), opts_(opts),
        m_(static_cast<std::int64_t>(behavior.size())) {}

  ICResult run() {
    ICResult res;
    seed();
    res.c0 = c0_;
    std::int64_t gamma = 1;
    try {
      gamma = max_inner_shift(rec_);
    } catch (const std::invalid_argument&) {
    }
    // A steep residue lagging L periods first shows the effect of an IC
    // entry L periods out, and its nonpositivity needs appear one period later.
    std::int64_t lag = 1;
    for (const auto& f : eventual_.residues) {
      for (const auto& r : f.refs) lag = std::max(lag, r.lag);
    }
    const std::int64_t w = std::max(m_, gamma) + m_ * (lag - 1);
    const std::int64_t cap = opts_.max_length.value_or(8 * m_ + c0_ + gamma);
    if (!base_ok_) {
      res.failure = "constraints on Q(c) are inconsistent with the seeded initial condition";
      return res;
    }
    // Fully generic first; failing that, let a window match pin IC symbols
    // through an added equality.
    const std::vector<SymValue> seeded = list_;
    for (bool pin : {false, true}) {
      pin_ = pin;
      list_ = seeded;
      while (static_cast<std::int64_t>(list_.size()) <= cap) {
        ++res.attempts;
        if (auto sic = attempt(w)) {
          res.ic = std::move(sic);
          return res;
        }
        extend();
      }
    }
    res.failure = "no initial condition within length " + std::to_string(cap);
    return res;
  }

 private:
  bool steep(std::int64_t p) const { return p >= 1 && behavior_[static_cast<std::size_t>(p % m_)] == Behavior::Steep; }

  /// SymValue over IC position symbols for a constraint expression.
  std::optional<SymValue> translate(const LinExpr& e) const {
    BigInt scale = e.denominator_lcm();
    LinExpr s = e * Rational(scale);
    SymValue out(BigInt(s.constant().get_num()));
    for (const auto& [id, c] : s.terms()) {
      BigInt coeff = c.get_num();
      const SymbolInfo& info = sys_.pool->info(id);
      if (info.kind == SymbolKind::V) {
        BigInt idx = index_value(*sys_.pool, id, asg_);
        if (idx <= 0) {
          out += SymValue(coeff * rec_.default_value);
        } else {
          out += SymValue::symbol(static_cast<int>(idx.get_si()), coeff);
        }
      } else {
        auto it = asg_.find(id);
        if (it == asg_.end()) return std::nullopt;
        out += SymValue(coeff * it->second);
      }
    }
    return out;
  }

  void seed() {
    for (int id : sys_.variables()) {
      if (sys_.pool->info(id).kind != SymbolKind::V) continue;
      BigInt idx = index_value(*sys_.pool, id, asg_);
      if (idx > 0) c0_ = std::max<std::int64_t>(c0_, idx.get_si());
    }
    // Equalities and inequalities that still mention some Q(c).
    std::vector<SymValue> eqs, ges;
    for (const auto& c : sys_.constraints) {
      bool active = c.kind == ConstraintKind::Eq || c.kind == ConstraintKind::Ge;
      if (c.kind == ConstraintKind::CondEq) {
        auto gl = c.guard_lhs.evaluate(asg_);
        auto gr = c.guard_rhs.evaluate(asg_);
        active = gl && gr && (c.guard_kind == GuardKind::Eq ? *gl == *gr : *gl <= *gr);
      }
      if (!active) continue;
      auto v = translate(c.lhs - c.rhs);
      if (!v || v->is_concrete()) continue;
      (c.kind == ConstraintKind::Ge ? ges : eqs).push_back(*v);
    }

    // Solve the equalities for as many positions as possible.
    std::vector<int> cols;
    for (const auto& e : eqs) {
      for (const auto& [id, c] : e.terms()) cols.push_back(id);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<std::vector<Rational>> a;
    for (const auto& e : eqs) {
      std::vector<Rational> row(cols.size() + 1, Rational(0));
      for (const auto& [id, c] : e.terms()) {
        row[static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), id) - cols.begin())] = Rational(c);
      }
      row[cols.size()] = Rational(-e.constant());
      a.push_back(std::move(row));
    }
    auto pivots = rref(a, cols.size());
    std::map<int, BigInt> determined;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      bool alone = true;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j != pivots[i] && sgn(a[i][j]) != 0) alone = false;
      }
      if (alone && is_integer(a[i][cols.size()])) determined[cols[pivots[i]]] = a[i][cols.size()].get_num();
    }

    for (std::int64_t j = 1; j <= c0_; ++j) {
      auto it = determined.find(static_cast<int>(j));
      list_.push_back(it != determined.end() ? SymValue(it->second) : SymValue::symbol(static_cast<int>(j)));
    }
    try {
      for (const auto& e : eqs) {
        SymValue v = e.substitute(determined);
        if (!v.is_concrete()) base_.add({v, Relation::Eq});
      }
      for (const auto& e : ges) {
        SymValue v = e.substitute(determined);
        if (!v.is_concrete()) base_.add({v, Relation::Ge});
      }
    } catch (const InconsistentAssumption&) {
      base_ok_ = false;
    }
  }

  BigInt eventual_value(std::int64_t p) const {
    auto v = eventual_.expected(p, [](std::int64_t) -> BigInt { throw std::logic_error("unexpected term access"); });
    return *v;
  }

  /// a == b is forced by the assumptions.
  static bool entailed_equal(const AssumptionSet& as, const SymValue& a, const SymValue& b) {
    SymValue d = a - b;
    if (d.is_concrete()) return d.constant() == 0;
    return !as.consistent_with({{d - SymValue(1), Relation::Ge}}) &&
           !as.consistent_with({{-d - SymValue(1), Relation::Ge}});
  }

  /// Entailed, or (when pinning) consistent and then recorded.
  bool agrees(AssumptionSet& as, const SymValue& a, const SymValue& b) const {
    if (entailed_equal(as, a, b)) return true;
    if (!pin_) return false;
    try {
      as.add({a - b, Relation::Eq});
    } catch (const InconsistentAssumption&) {
      return false;
    }
    return true;
  }

  bool term_matches(std::int64_t n, const std::vector<SymValue>& terms, AssumptionSet& as) const {
    const SymValue& got = terms[static_cast<std::size_t>(n - 1)];
    if (!steep(n)) return agrees(as, got, SymValue(eventual_value(n)));
    const ResidueForm& f = eventual_.residues[static_cast<std::size_t>(n % m_)];
    const std::int64_t k = n / m_;
    auto term = [&](std::int64_t j) {
      return j <= 0 ? SymValue(rec_.default_value) : terms[static_cast<std::size_t>(j - 1)];
    };
    SymValue want(f.poly.evaluate(k));
    for (const auto& t : f.fixed_terms) {
      if (t.index >= n) return false;
      want += term(t.index) * t.coeff;
    }
    for (const auto& r : f.refs) {
      std::int64_t j = m_ * (k - r.lag) + r.residue;
      if (j >= n) return false;
      want += term(j) * r.coeff;
    }
    return agrees(as, want, got);
  }

  std::optional<SymbolicIC> attempt(std::int64_t w) {
    const auto n0 = static_cast<std::int64_t>(list_.size());
    bool unsafe_read = false;
    auto observer = [&](const CallEvent& ev) {
      if (ev.defaulted) return;
      for (std::int64_t p : ev.inner_reads) {
        if (steep(p)) unsafe_read = true;
      }
    };
    SymGenerated g = generate_symbolic(rec_, list_, n0 + w, base_, observer);
    if (g.death || unsafe_read) return std::nullopt;
    for (std::int64_t n = n0 + 1; n <= n0 + w; ++n) {
      if (!term_matches(n, g.terms, g.assumptions)) return std::nullopt;
    }
    SymbolicIC sic{list_, g.assumptions};
    auto sample = sample_instantiation(sic);
    if (!sample) return std::nullopt;
    if (!verify_family(rec_, *sample, eventual_, std::max<std::int64_t>(opts_.validate_terms, n0 + w)).ok) {
      return std::nullopt;
    }
    return sic;
  }

  void extend() {
    const auto p = static_cast<std::int64_t>(list_.size()) + 1;
    list_.push_back(steep(p) ? SymValue::symbol(static_cast<int>(p)) : SymValue(eventual_value(p)));
  }

  const Recurrence& rec_;
  const BehaviorVector& behavior_;
  const EventualSolution& eventual_;
  const ConstraintSystem& sys_;
  const Assignment& asg_;
  ICOptions opts_;
  std::int64_t m_;
  std::int64_t c0_ = 0;
  std::vector<SymValue> list_;
  AssumptionSet base_;
  bool base_ok_ = true;
  bool pin_ = false;
};

}  // namespace

ICResult build_ic(const Recurrence& rec, const BehaviorVector& behavior, const EventualSolution& eventual,
                  const ConstraintSystem& sys, const Assignment& asg, const ICOptions& opts) {
  return ICBuilder(rec, behavior, eventual, sys, asg, opts).run();
}

}  // namespace hofsearch
