#include <hofsearch/unpacker.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hofsearch {

std::string to_string(const BehaviorVector& b) {
  std::string s;
  for (Behavior x : b) s += x == Behavior::Const ? 'C' : x == Behavior::StdLinear ? 'L' : 'S';
  return s;
}

BehaviorVector parse_behavior(const std::string& text) {
  BehaviorVector b;
  for (char c : text) {
    switch (c) {
      case 'C':
        b.push_back(Behavior::Const);
        break;
      case 'L':
        b.push_back(Behavior::StdLinear);
        break;
      case 'S':
        b.push_back(Behavior::Steep);
        break;
      default:
        throw std::invalid_argument(std::string("bad behavior letter '") + c + "'");
    }
  }
  return b;
}

std::vector<BehaviorVector> all_behaviors(int m) {
  std::vector<BehaviorVector> out;
  BehaviorVector cur(static_cast<std::size_t>(m), Behavior::Const);
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == Behavior::Steep) {
      cur[static_cast<std::size_t>(i)] = Behavior::Const;
      --i;
    }
    if (i < 0) break;
    auto& slot = cur[static_cast<std::size_t>(i)];
    slot = slot == Behavior::Const ? Behavior::StdLinear : Behavior::Steep;
  }
  return out;
}

std::optional<int> CongruenceAssignment::residue_of(const LinExpr& key) const {
  for (const auto& [k, r] : entries) {
    if (k == key) return r;
  }
  return std::nullopt;
}

std::string CongruenceAssignment::to_string(const SymbolPool& pool) const {
  std::string s;
  for (const auto& [k, r] : entries) {
    if (!s.empty()) s += ", ";
    s += k.to_string(pool.namer()) + " = " + std::to_string(r);
  }
  return s;
}

std::pair<LinExpr, int> congruence_key(const LinExpr& e) {
  LinExpr key = e.symbolic_part();
  if (key.terms().empty()) return {key, 1};
  if (sgn(key.terms().begin()->second) < 0) return {-key, -1};
  return {key, 1};
}

int UnpackedExpr::degree() const {
  for (int p = static_cast<int>(poly.size()) - 1; p >= 0; --p) {
    if (!poly[static_cast<std::size_t>(p)].is_zero()) return p;
  }
  return -1;
}

LinExpr UnpackedExpr::coeff(int p) const {
  if (p < 0 || p >= static_cast<int>(poly.size())) return LinExpr();
  return poly[static_cast<std::size_t>(p)];
}

namespace {

std::string ref_text(const SymbolPool& pool, int residue, const LinExpr& lag) {
  std::string l = lag.to_string(pool.namer());
  return "a" + std::to_string(residue) + "(k" + (lag.is_zero() ? "" : " - (" + l + ")") + ")";
}

std::string poly_text(const std::vector<LinExpr>& poly, const SymbolPool& pool) {
  std::string s;
  for (int p = static_cast<int>(poly.size()) - 1; p >= 0; --p) {
    const LinExpr& c = poly[static_cast<std::size_t>(p)];
    if (c.is_zero()) continue;
    std::string body = c.to_string(pool.namer());
    if (p > 0) {
      std::string kp = p == 1 ? "k" : "k^" + std::to_string(p);
      if (c.is_constant() && c.constant() == 1) {
        body = kp;
      } else if (c.is_constant() && c.constant() == -1) {
        body = "-" + kp;
      } else if (c.is_constant()) {
        body = body + "*" + kp;
      } else {
        body = "(" + body + ")*" + kp;
      }
    }
    if (!s.empty()) s += body[0] == '-' ? " - " + body.substr(1) : " + " + body;
    else s = body;
  }
  return s;
}

}  // namespace

std::string UnpackedExpr::to_string(const SymbolPool& pool, int m, int r) const {
  std::string s = pool.seq_name() + "(" + std::to_string(m) + "k" + (r ? " + " + std::to_string(r) : "") + ") = ";
  std::string body = poly_text(poly, pool);
  for (const auto& ref : refs) {
    std::string t = ref_text(pool, ref.residue, ref.lag);
    BigInt mag = abs(ref.coeff);
    if (mag != 1) t = mag.get_str() + "*" + t;
    if (body.empty()) body = (ref.coeff < 0 ? "-" : "") + t;
    else body += (ref.coeff < 0 ? " - " : " + ") + t;
  }
  return s + (body.empty() ? "0" : body);
}

SymbolPool make_pool(const Recurrence& rec, int m) {
  SymbolPool pool(rec.name);
  for (int r = 0; r < m; ++r) pool.b(r);
  return pool;
}

namespace {

/// Value during unpacking. inf = -1/+1 marks an index whose k-coefficient is
/// -inf/+inf; the finite parts are then irrelevant and kept empty.
struct ExtValue {
  int inf = 0;
  std::vector<LinExpr> poly;
  std::vector<UnpackedRef> refs;

  static ExtValue infinite(int sign) {
    ExtValue v;
    v.inf = sign;
    return v;
  }
  void add_poly(std::size_t p, const LinExpr& c) {
    if (poly.size() <= p) poly.resize(p + 1);
    poly[p] += c;
  }
};

ExtValue add(ExtValue a, const ExtValue& b) {
  if (a.inf != 0 || b.inf != 0) {
    if (a.inf != 0 && b.inf != 0 && a.inf != b.inf) throw UnpackRejected("index mixes +inf and -inf growth");
    return ExtValue::infinite(a.inf != 0 ? a.inf : b.inf);
  }
  for (std::size_t p = 0; p < b.poly.size(); ++p) a.add_poly(p, b.poly[p]);
  a.refs.insert(a.refs.end(), b.refs.begin(), b.refs.end());
  return a;
}

ExtValue scale(ExtValue v, const BigInt& s) {
  if (v.inf != 0) {
    v.inf *= sgn(s);
    return v;
  }
  for (auto& c : v.poly) c *= Rational(s);
  for (auto& r : v.refs) r.coeff *= s;
  return v;
}

BigInt pow_int(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

class Unpacker {
 public:
  Unpacker(const Recurrence& rec, int m, const BehaviorVector& behavior, const CongruenceAssignment& cong,
           SymbolPool& pool, UnpackResult& out, bool trace)
      : rec_(rec), m_(m), behavior_(behavior), cong_(cong), pool_(pool), out_(out), trace_(trace) {}

  UnpackedExpr residue(int r) {
    r_ = r;
    ExtValue v = eval(rec_.rhs, true);
    if (v.inf != 0) throw UnpackRejected("residue " + std::to_string(r) + " evaluates to an infinite value");
    UnpackedExpr e;
    e.poly = std::move(v.poly);
    while (!e.poly.empty() && e.poly.back().is_zero()) e.poly.pop_back();
    // Merge references with equal targets.
    std::map<std::pair<int, LinExpr>, BigInt> merged;
    for (const auto& ref : v.refs) merged[{ref.residue, ref.lag}] += ref.coeff;
    for (const auto& [key, c] : merged) {
      if (c != 0) e.refs.push_back({c, key.first, key.second});
    }
    return e;
  }

 private:
  ExtValue eval(const NestedExpr& expr, bool outermost) {
    ExtValue v;
    // P(mk + r) expanded in k.
    const auto& pc = expr.poly.coefficients();
    for (std::size_t p = 0; p < pc.size(); ++p) {
      if (pc[p] == 0) continue;
      for (std::size_t j = 0; j <= p; ++j) {
        BigInt bin;
        mpz_bin_uiui(bin.get_mpz_t(), p, j);
        BigInt c = pc[p] * bin * pow_int(m_, j) * pow_int(r_, p - j);
        v.add_poly(j, LinExpr(c));
      }
    }
    for (const auto& call : expr.calls) {
      ExtValue idx = eval(*call.arg, false);
      v = add(std::move(v), scale(resolve(idx, outermost), call.coeff));
    }
    return v;
  }

  std::string here() const {
    return pool_.seq_name() + "(" + std::to_string(m_) + "k" + (r_ ? " + " + std::to_string(r_) : "") + ")";
  }

  void note(const std::string& s) {
    if (trace_) out_.trace.push_back(here() + ": " + s);
  }

  ExtValue constant(const LinExpr& c) {
    ExtValue v;
    v.add_poly(0, c);
    return v;
  }

  ExtValue resolve(const ExtValue& idx, bool outermost) {
    if (idx.inf < 0) {
      note(pool_.seq_name() + "(-inf*k + ...) = " + rec_.default_value.get_str());
      return constant(LinExpr(rec_.default_value));
    }
    if (idx.inf > 0) throw UnpackRejected("call index grows faster than n");
    if (!idx.refs.empty()) throw UnpackRejected("call index depends on a steep subsequence");
    for (std::size_t p = 2; p < idx.poly.size(); ++p) {
      if (!idx.poly[p].is_zero()) throw UnpackRejected("call index is nonlinear in k");
    }
    LinExpr a = idx.poly.size() > 1 ? idx.poly[1] : LinExpr();
    LinExpr c = idx.poly.empty() ? LinExpr() : idx.poly[0];
    if (!a.is_constant() || !is_integer(a.constant())) throw UnpackRejected("call index has a symbolic slope");
    const BigInt slope = a.constant().get_num();
    if (!c.is_integral()) throw UnpackRejected("call index is not integral");

    if (slope < 0) {
      note("negative slope index -> default");
      return constant(LinExpr(rec_.default_value));
    }
    if (slope == 0) {
      if (auto ci = c.as_integer()) {
        if (*ci <= 0) return constant(LinExpr(rec_.default_value));
      }
      int id = pool_.v(c);
      note(pool_.name(id) + " is a constant term");
      return constant(LinExpr::symbol(id));
    }
    if (slope > m_) throw UnpackRejected("call index overtakes n");
    if (slope < m_) throw UnpackRejected("call index slope " + slope.get_str() + " is not the period");

    // Q(mk + c) = a^(r')(k + q) with c = m*q + r'.
    auto [key, sign] = congruence_key(c);
    BigInt sym_res = 0;
    if (!key.terms().empty()) {
      auto res = cong_.residue_of(key);
      if (!res) throw ResidueUndecided(key);
      sym_res = BigInt(sign) * BigInt(*res);
    }
    const BigInt rp_big = mod_floor(BigInt(c.constant().get_num()) + sym_res, BigInt(m_));
    const int rp = static_cast<int>(rp_big.get_si());
    LinExpr q = (c - LinExpr(rp_big)) * Rational(1, m_);

    LinExpr gap = LinExpr(r_) - c;  // n - index, must be >= 1
    if (auto g = gap.as_integer()) {
      if (*g < 1) throw UnpackRejected("call refers to the current or a later term");
    } else {
      out_.validity.push_back({r_, gap});
    }

    switch (behavior_[static_cast<std::size_t>(rp)]) {
      case Behavior::Const:
        note(ref_text(pool_, rp, -q) + " = B_" + std::to_string(rp));
        return constant(LinExpr::symbol(pool_.b(rp)));
      case Behavior::StdLinear: {
        ExtValue v;
        v.add_poly(1, LinExpr(m_));
        v.add_poly(0, q * Rational(m_) + LinExpr::symbol(pool_.b(rp)));
        note(ref_text(pool_, rp, -q) + " is standard linear");
        return v;
      }
      case Behavior::Steep:
        if (!outermost) return ExtValue::infinite(1);
        note("keep " + ref_text(pool_, rp, -q));
        ExtValue v;
        v.refs.push_back({BigInt(1), rp, -q});
        return v;
    }
    throw std::logic_error("unreachable");
  }

  const Recurrence& rec_;
  int m_;
  const BehaviorVector& behavior_;
  const CongruenceAssignment& cong_;
  SymbolPool& pool_;
  UnpackResult& out_;
  bool trace_;
  int r_ = 0;
};

}  // namespace

UnpackResult unpack(const Recurrence& rec, int m, const BehaviorVector& behavior, const CongruenceAssignment& cong,
                    SymbolPool& pool, bool trace) {
  if (static_cast<int>(behavior.size()) != m) throw std::invalid_argument("behavior length must equal the period");
  UnpackResult out;
  Unpacker u(rec, m, behavior, cong, pool, out, trace);
  for (int r = 0; r < m; ++r) out.exprs.push_back(u.residue(r));
  // Validity requirements: keep the first occurrence of each expression.
  std::vector<ValidityReq> uniq;
  for (auto& v : out.validity) {
    if (std::none_of(uniq.begin(), uniq.end(), [&](const ValidityReq& u2) { return u2.expr == v.expr; })) {
      uniq.push_back(std::move(v));
    }
  }
  out.validity = std::move(uniq);
  return out;
}

std::vector<CongruenceAssignment> enumerate_congruence_cases(const Recurrence& rec, int m,
                                                             const BehaviorVector& behavior) {
  std::vector<CongruenceAssignment> cases;
  if (is_basic(rec)) {
    std::set<int> targets;
    for (const auto& call : rec.rhs.calls) {
      const auto& inner = call.arg->calls.front();
      BigInt gamma = *as_shift(*inner.arg);
      for (int r = 0; r < m; ++r) {
        int t = static_cast<int>(mod_floor(BigInt(r) - gamma, BigInt(m)).get_si());
        if (behavior[static_cast<std::size_t>(t)] == Behavior::Const) targets.insert(t);
      }
    }
    std::vector<int> keys(targets.begin(), targets.end());
    std::vector<int> digits(keys.size(), 0);
    while (true) {
      CongruenceAssignment a;
      for (std::size_t i = 0; i < keys.size(); ++i) a.entries.push_back({LinExpr::symbol(keys[i]), digits[i]});
      cases.push_back(std::move(a));
      int i = static_cast<int>(keys.size()) - 1;
      while (i >= 0 && digits[static_cast<std::size_t>(i)] == m - 1) digits[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++digits[static_cast<std::size_t>(i)];
    }
    return cases;
  }
  // Lazy splitting: branch on each residue unpack asks for.
  std::function<void(CongruenceAssignment&)> split = [&](CongruenceAssignment& a) {
    SymbolPool pool = make_pool(rec, m);
    try {
      unpack(rec, m, behavior, a, pool);
    } catch (const ResidueUndecided& e) {
      for (int r = 0; r < m; ++r) {
        a.entries.push_back({e.key(), r});
        split(a);
        a.entries.pop_back();
      }
      return;
    } catch (const UnpackRejected&) {
    }
    cases.push_back(a);
  };
  CongruenceAssignment root;
  split(root);
  return cases;
}

std::pair<PRSystem, PositivityReport> extract_prs(const std::vector<UnpackedExpr>& exprs,
                                                  const BehaviorVector& behavior) {
  PRSystem sys;
  PositivityReport rep;
  sys.m = static_cast<int>(exprs.size());
  sys.d = 1;
  for (int r = 0; r < sys.m; ++r) {
    const UnpackedExpr& e = exprs[static_cast<std::size_t>(r)];
    std::vector<BigInt> coeffs;
    for (int p = 0; p <= e.degree(); ++p) {
      LinExpr c = e.coeff(p);
      if (c.is_zero()) {
        coeffs.emplace_back(0);
      } else if (auto v = c.as_integer()) {
        coeffs.push_back(*v);
      } else if (p == 0) {
        coeffs.emplace_back(1);  // symbolic constant: only its degree matters
      } else {
        coeffs.emplace_back(1);
        rep.warnings.push_back("residue " + std::to_string(r) + ": symbolic k^" + std::to_string(p) + " coefficient");
      }
    }
    IntPolynomial poly(coeffs, PolyVar::K);
    if (!poly.is_zero() && poly.degree() > 0 && poly.leading_coefficient() < 0) {
      rep.positive = false;
      rep.warnings.push_back("residue " + std::to_string(r) + ": inhomogeneous part is eventually negative");
    }
    sys.inhomog.push_back(poly);
    for (const auto& ref : e.refs) {
      PRTerm t;
      t.i = r;
      t.j = ref.residue;
      t.alpha = ref.coeff;
      if (auto lag = ref.lag.as_integer(); lag && to_int64(*lag)) {
        t.lag = *to_int64(*lag);
        t.kind = LagKind::Concrete;
        sys.d = std::max(sys.d, t.lag);
      } else {
        t.lag = 1;
        t.kind = LagKind::SymbolicPositive;
      }
      if (t.alpha < 0) {
        rep.positive = false;
        rep.warnings.push_back("residue " + std::to_string(r) + ": negative coefficient on a reference");
      }
      sys.coeffs.push_back(t);
    }
  }
  (void)behavior;
  return {sys, rep};
}

StructureReport check_structure(const std::vector<UnpackedExpr>& exprs, const BehaviorVector& behavior) {
  StructureReport rep;
  const int m = static_cast<int>(behavior.size());
  rep.labels.assign(static_cast<std::size_t>(m), "");
  for (int r = 0; r < m; ++r) {
    const UnpackedExpr& e = exprs[static_cast<std::size_t>(r)];
    const std::string where = "residue " + std::to_string(r) + ": ";
    switch (behavior[static_cast<std::size_t>(r)]) {
      case Behavior::Const:
        if (!e.refs.empty() || e.degree() > 0) {
          rep.reason = where + "constant residue has a non-constant expression";
          return rep;
        }
        rep.labels[static_cast<std::size_t>(r)] = "constant";
        break;
      case Behavior::StdLinear: {
        LinExpr slope = e.coeff(1);
        if (!e.refs.empty() || e.degree() > 1 || !slope.is_constant() || slope.constant() != m) {
          rep.reason = where + "standard linear residue is not of the form " + std::to_string(m) + "k + c";
          return rep;
        }
        rep.labels[static_cast<std::size_t>(r)] = "standard-linear";
        break;
      }
      case Behavior::Steep: {
        LinExpr slope = e.coeff(1);
        bool steep_term = e.degree() >= 2 || (slope.is_constant() && slope.constant() > m && e.degree() == 1);
        if (!steep_term && e.refs.empty()) {
          rep.reason = where + "steep residue has neither a steep term nor a steep reference";
          return rep;
        }
        break;
      }
    }
  }

  auto [sys, pos] = extract_prs(exprs, behavior);
  rep.prs = sys;
  rep.positivity = pos;
  rep.growth = compute_growth(sys);
  const GrowthResult& g = rep.growth;

  std::set<int> constrained;
  for (int r = 0; r < m; ++r) {
    if (behavior[static_cast<std::size_t>(r)] != Behavior::Steep) continue;
    const std::string where = "residue " + std::to_string(r) + ": ";
    const int cls = g.class_of[static_cast<std::size_t>(r)];
    const Degree d = g.degree[static_cast<std::size_t>(r)];
    const GrowthCase gc = g.class_case[static_cast<std::size_t>(cls)];
    auto& label = rep.labels[static_cast<std::size_t>(r)];
    if (d == kDegInf) {
      label = "exponential";
      continue;
    }
    if (d >= 2) {
      label = "superlinear(degree " + std::to_string(d) + ")";
      continue;
    }
    if (gc == GrowthCase::CyclePlusOne) {
      label = "steep-linear(cycle)";
      if (constrained.count(cls)) continue;
      constrained.insert(cls);
      // Members form one cycle of unit-weight arcs; walk it from the smallest member.
      std::vector<int> members;
      for (int v = 0; v < m; ++v) {
        if (g.class_of[static_cast<std::size_t>(v)] == cls) members.push_back(v);
      }
      bool only_cycle = true;
      for (int v : members) {
        const UnpackedExpr& e = exprs[static_cast<std::size_t>(v)];
        if (e.refs.size() != 1 || e.degree() > 0 || e.refs[0].coeff != 1) only_cycle = false;
        else if (g.class_of[static_cast<std::size_t>(e.refs[0].residue)] != cls) only_cycle = false;
      }
      if (!only_cycle) continue;  // extra steep references already force steepness
      SteepnessReq req;
      req.cls = cls;
      int v = members.front();
      LinExpr sum_c, sum_e;
      do {
        req.cycle.push_back(v);
        const UnpackedExpr& e = exprs[static_cast<std::size_t>(v)];
        sum_c += e.coeff(0);
        sum_e += e.refs[0].lag;
        v = e.refs[0].residue;
      } while (v != members.front() && req.cycle.size() <= members.size());
      req.excess = sum_c - sum_e * Rational(m);
      rep.steepness.push_back(std::move(req));
      continue;
    }
    if (gc == GrowthCase::Inherited) {
      label = "steep-linear(inherited)";
      continue;
    }
    // Degree from its own polynomial only.
    LinExpr slope = exprs[static_cast<std::size_t>(r)].coeff(1);
    if (d == 1 && slope.is_constant() && slope.constant() > m) {
      label = "steep-linear(slope)";
      continue;
    }
    rep.reason = where + "steep residue grows like degree " + degree_to_string(d) + " without steepness";
    return rep;
  }
  rep.ok = true;
  return rep;
}

}  // namespace hofsearch
