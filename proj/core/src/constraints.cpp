#include <hofsearch/constraints.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hofsearch {

Constraint Constraint::eq(LinExpr l, LinExpr r, std::string why) {
  Constraint c;
  c.kind = ConstraintKind::Eq;
  c.lhs = std::move(l);
  c.rhs = std::move(r);
  c.provenance = std::move(why);
  return c;
}

Constraint Constraint::ge(LinExpr l, LinExpr r, std::string why) {
  Constraint c = eq(std::move(l), std::move(r), std::move(why));
  c.kind = ConstraintKind::Ge;
  return c;
}

Constraint Constraint::cong(LinExpr x, int residue, int modulus, std::string why) {
  Constraint c;
  c.kind = ConstraintKind::Cong;
  c.lhs = std::move(x);
  c.residue = residue;
  c.modulus = modulus;
  c.provenance = std::move(why);
  return c;
}

Constraint Constraint::cond_eq(GuardKind g, LinExpr gl, LinExpr gr, LinExpr l, LinExpr r, std::string why) {
  Constraint c = eq(std::move(l), std::move(r), std::move(why));
  c.kind = ConstraintKind::CondEq;
  c.guard_kind = g;
  c.guard_lhs = std::move(gl);
  c.guard_rhs = std::move(gr);
  return c;
}

std::string Constraint::to_string(const SymbolPool& pool) const {
  auto n = pool.namer();
  switch (kind) {
    case ConstraintKind::Eq:
      return lhs.to_string(n) + " = " + rhs.to_string(n);
    case ConstraintKind::Ge:
      return lhs.to_string(n) + " >= " + rhs.to_string(n);
    case ConstraintKind::Cong:
      return lhs.to_string(n) + " = " + std::to_string(residue) + " (mod " + std::to_string(modulus) + ")";
    case ConstraintKind::CondEq:
      return "if " + guard_lhs.to_string(n) + (guard_kind == GuardKind::Eq ? " = " : " <= ") + guard_rhs.to_string(n) +
             " then " + lhs.to_string(n) + " = " + rhs.to_string(n);
  }
  return "?";
}

namespace {

void collect(const LinExpr& e, std::set<int>& out) {
  for (const auto& [id, c] : e.terms()) out.insert(id);
}

void collect(const Constraint& c, std::set<int>& out) {
  collect(c.lhs, out);
  collect(c.rhs, out);
  if (c.kind == ConstraintKind::CondEq) {
    collect(c.guard_lhs, out);
    collect(c.guard_rhs, out);
  }
}

int kind_rank(SymbolKind k) {
  switch (k) {
    case SymbolKind::B:
      return 0;
    case SymbolKind::V:
      return 1;
    case SymbolKind::Aux:
      return 2;
  }
  return 3;
}

}  // namespace

std::vector<int> ConstraintSystem::variables() const {
  std::set<int> ids;
  for (const auto& c : constraints) collect(c, ids);
  std::vector<int> out(ids.begin(), ids.end());
  std::stable_sort(out.begin(), out.end(),
                   [&](int a, int b) { return kind_rank(pool->info(a).kind) < kind_rank(pool->info(b).kind); });
  return out;
}

std::string ConstraintSystem::to_string() const {
  std::string s;
  for (const auto& c : constraints) s += c.to_string(*pool) + "    [" + c.provenance + "]\n";
  return s;
}

ConstraintSystem build_constraints(const UnpackResult& unpacked, const BehaviorVector& behavior,
                                   const CongruenceAssignment& cong, const StructureReport& report,
                                   std::shared_ptr<const SymbolPool> pool, const BigInt& default_value) {
  if (!report.ok) throw std::invalid_argument("structure check failed: " + report.reason);
  ConstraintSystem sys;
  sys.m = static_cast<int>(behavior.size());
  sys.pool = pool;
  auto& out = sys.constraints;

  for (int r = 0; r < sys.m; ++r) {
    const UnpackedExpr& e = unpacked.exprs[static_cast<std::size_t>(r)];
    LinExpr b = LinExpr::symbol(*pool->find_b(r));
    switch (behavior[static_cast<std::size_t>(r)]) {
      case Behavior::Const:
        out.push_back(Constraint::ge(b, LinExpr(1), kProvPositivity));
        out.push_back(Constraint::eq(b, e.coeff(0), kProvConstant));
        break;
      case Behavior::StdLinear:
        out.push_back(Constraint::eq(b, e.coeff(0), kProvIntercept));
        break;
      case Behavior::Steep:
        break;
    }
  }
  for (const auto& s : report.steepness) out.push_back(Constraint::ge(s.excess, LinExpr(1), kProvSteepness));
  for (const auto& [key, res] : cong.entries) out.push_back(Constraint::cong(key, res, sys.m, kProvCongruence));
  for (const auto& v : unpacked.validity) out.push_back(Constraint::ge(v.expr, LinExpr(1), kProvValidity));

  // V symbols in use, closed under "appears in the index of a used V".
  std::set<int> used;
  for (const auto& c : out) collect(c, used);
  std::vector<int> todo(used.begin(), used.end());
  while (!todo.empty()) {
    int id = todo.back();
    todo.pop_back();
    if (pool->info(id).kind != SymbolKind::V) continue;
    std::set<int> inner;
    collect(pool->info(id).index, inner);
    for (int j : inner) {
      if (used.insert(j).second) todo.push_back(j);
    }
  }
  std::vector<int> vs;
  for (int id : used) {
    if (pool->info(id).kind == SymbolKind::V) vs.push_back(id);
  }

  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      const LinExpr& ia = pool->info(vs[a]).index;
      const LinExpr& ib = pool->info(vs[b]).index;
      if (ia.is_constant() && ib.is_constant()) continue;
      out.push_back(Constraint::cond_eq(GuardKind::Eq, ia, ib, LinExpr::symbol(vs[a]), LinExpr::symbol(vs[b]),
                                        kProvCoincidence));
    }
  }
  for (int v : vs) {
    const LinExpr& idx = pool->info(v).index;
    if (auto c = idx.as_integer(); c && *c > 0) continue;
    out.push_back(
        Constraint::cond_eq(GuardKind::Le, idx, LinExpr(0), LinExpr::symbol(v), LinExpr(default_value), kProvNonpositive));
  }
  return sys;
}

namespace {

Rational value_of(const LinExpr& e, const Assignment& asg) {
  auto v = e.evaluate(asg);
  if (!v) throw std::out_of_range("assignment is missing a symbol");
  return *v;
}

}  // namespace

bool check_assignment(const ConstraintSystem& sys, const Assignment& asg) {
  bool ok = true;
  for (const auto& c : sys.constraints) {
    // Evaluate everything first so a missing symbol always throws.
    Rational l = value_of(c.lhs, asg);
    Rational r = value_of(c.rhs, asg);
    switch (c.kind) {
      case ConstraintKind::Eq:
        ok = ok && l == r;
        break;
      case ConstraintKind::Ge:
        ok = ok && l >= r;
        break;
      case ConstraintKind::Cong:
        ok = ok && is_integer(l) && mod_floor(BigInt(l.get_num()), BigInt(c.modulus)) == c.residue;
        break;
      case ConstraintKind::CondEq: {
        Rational gl = value_of(c.guard_lhs, asg);
        Rational gr = value_of(c.guard_rhs, asg);
        bool guard = c.guard_kind == GuardKind::Eq ? gl == gr : gl <= gr;
        if (guard) ok = ok && l == r;
        break;
      }
    }
  }
  return ok;
}

}  // namespace hofsearch
