#include <hofsearch/ilp.hpp>
#include <hofsearch/solver.hpp>

#include <map>
#include <set>

namespace hofsearch {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat:
      return "sat";
    case SolveStatus::UnsatWithinBound:
      return "unsat-within-bound";
    case SolveStatus::ProvablyUnsat:
      return "provably-unsat";
  }
  return "?";
}

std::vector<std::vector<BranchRow>> condeq_branches(const Constraint& c) {
  LinExpr g = c.guard_lhs - c.guard_rhs;
  LinExpr cons = c.lhs - c.rhs;
  std::vector<std::vector<BranchRow>> out;
  if (c.guard_kind == GuardKind::Eq) {
    out.push_back({{g, lp::Sense::Eq, false}, {cons, lp::Sense::Eq, true}});
    out.push_back({{g + LinExpr(1), lp::Sense::Le, false}});
  } else {
    out.push_back({{g, lp::Sense::Le, false}, {cons, lp::Sense::Eq, true}});
  }
  out.push_back({{g - LinExpr(1), lp::Sense::Ge, false}});
  return out;
}

namespace {

bool holds(const Rational& v, lp::Sense s) {
  switch (s) {
    case lp::Sense::Eq:
      return sgn(v) == 0;
    case lp::Sense::Ge:
      return sgn(v) >= 0;
    case lp::Sense::Le:
      return sgn(v) <= 0;
  }
  return false;
}

enum class Cut { Open, Provable, Bounded };

class Solver {
 public:
  Solver(const ConstraintSystem& sys, const SolveOptions& opts) : sys_(sys), opts_(opts) {
    vars_ = sys.variables();
    for (std::size_t j = 0; j < vars_.size(); ++j) col_[vars_[j]] = j;
    num_vars_ = vars_.size();
    for (const auto& c : sys.constraints) {
      switch (c.kind) {
        case ConstraintKind::Eq:
          base_.push_back(row(c.lhs - c.rhs, lp::Sense::Eq));
          break;
        case ConstraintKind::Ge:
          base_.push_back(row(c.lhs - c.rhs, lp::Sense::Ge));
          break;
        case ConstraintKind::Cong: {
          // x = m*K + residue with a fresh integer K.
          std::size_t k = num_vars_++;
          ScaledRow r = row(c.lhs - LinExpr(c.residue), lp::Sense::Eq);
          pending_aux_.push_back({base_.size(), k, c.modulus});
          base_.push_back(std::move(r));
          break;
        }
        case ConstraintKind::CondEq:
          conds_.push_back(&c);
          break;
      }
    }
    // Congruence rows get their K column once the final width is known.
    for (auto& r : base_) r.coeffs.resize(num_vars_, BigInt(0));
    for (const auto& a : pending_aux_) {
      ScaledRow& r = base_[a.row];
      // Row was scaled by L: L*x - L*res = 0 becomes L*x - L*m*K = L*res.
      r.coeffs[a.col] = -r.scale * a.modulus;
    }
  }

  SolveResult run() {
    std::vector<ilp::Row> rows(base_.begin(), base_.end());
    all_provable_ = true;
    dfs(0, rows);
    res_.nodes = nodes_;
    if (!res_.witnesses.empty()) {
      res_.status = SolveStatus::Sat;
    } else {
      res_.status = all_provable_ && !res_.budget_exhausted ? SolveStatus::ProvablyUnsat : SolveStatus::UnsatWithinBound;
    }
    return res_;
  }

 private:
  struct ScaledRow : ilp::Row {
    BigInt scale = 1;
  };
  struct PendingAux {
    std::size_t row;
    std::size_t col;
    int modulus;
  };

  ScaledRow row(const LinExpr& e, lp::Sense s) const {
    ScaledRow r;
    r.scale = e.denominator_lcm();
    LinExpr scaled = e * Rational(r.scale);
    r.coeffs.assign(num_vars_, BigInt(0));
    for (const auto& [id, c] : scaled.terms()) r.coeffs[col_.at(id)] = c.get_num();
    r.sense = s;
    r.rhs = -BigInt(scaled.constant().get_num());
    return r;
  }

  ilp::Program program(const std::vector<ilp::Row>& rows) const {
    ilp::Program p;
    p.num_vars = num_vars_;
    p.rows = rows;
    for (auto& r : p.rows) r.coeffs.resize(num_vars_, BigInt(0));
    p.lower.assign(num_vars_, -opts_.bound);
    p.upper.assign(num_vars_, opts_.bound);
    return p;
  }

  Cut check(const std::vector<ilp::Row>& rows) const {
    ilp::Program p = program(rows);
    if (!ilp::equalities_solvable(p.rows, p.num_vars) || !ilp::relaxation_feasible(p, false)) return Cut::Provable;
    if (!ilp::relaxation_feasible(p, true)) return Cut::Bounded;
    return Cut::Open;
  }

  void record_cut(Cut c) {
    if (c == Cut::Bounded) all_provable_ = false;
  }

  bool done() const { return res_.witnesses.size() >= opts_.witnesses || res_.budget_exhausted; }

  void dfs(std::size_t depth, std::vector<ilp::Row>& rows) {
    if (done()) return;
    if (++nodes_ > opts_.max_branch_nodes) {
      res_.budget_exhausted = true;
      return;
    }
    Cut c = check(rows);
    if (c != Cut::Open) {
      record_cut(c);
      return;
    }
    if (depth == conds_.size()) {
      leaf(rows);
      return;
    }
    const Constraint& cond = *conds_[depth];
    auto branches = condeq_branches(cond);
    LinExpr g = cond.guard_lhs - cond.guard_rhs;
    for (std::size_t b = 0; b < branches.size() && !done(); ++b) {
      // A constant guard selects its branch outright.
      if (g.is_constant() && !holds(branches[b][0].expr.constant(), branches[b][0].sense)) continue;
      std::size_t mark = rows.size();
      for (const auto& br : branches[b]) rows.push_back(row(br.expr, br.sense));
      path_.push_back(static_cast<int>(b));
      dfs(depth + 1, rows);
      path_.pop_back();
      rows.resize(mark);
    }
  }

  void leaf(const std::vector<ilp::Row>& rows) {
    ilp::Program p = program(rows);
    ilp::Options o;
    o.max_nodes = opts_.max_ilp_nodes;
    auto r = ilp::enumerate(
        p,
        [&](const std::vector<BigInt>& x) {
          Assignment a;
          for (std::size_t j = 0; j < vars_.size(); ++j) a[vars_[j]] = x[j];
          if (seen_.insert(a).second) {
            if (res_.witnesses.empty()) res_.leaf = path_;
            res_.witnesses.push_back(std::move(a));
          }
          return res_.witnesses.size() < opts_.witnesses;
        },
        o);
    if (r.budget_exhausted) res_.budget_exhausted = true;
    if (r.status == ilp::Status::InfeasibleWithinBound) all_provable_ = false;
  }

  const ConstraintSystem& sys_;
  SolveOptions opts_;
  std::vector<int> vars_;
  std::map<int, std::size_t> col_;
  std::size_t num_vars_ = 0;
  std::vector<ScaledRow> base_;
  std::vector<PendingAux> pending_aux_;
  std::vector<const Constraint*> conds_;
  std::vector<int> path_;
  std::set<Assignment> seen_;
  std::size_t nodes_ = 0;
  bool all_provable_ = true;
  SolveResult res_;
};

}  // namespace

SolveResult solve(const ConstraintSystem& sys, const SolveOptions& opts) {
  Solver s(sys, opts);
  return s.run();
}

}  // namespace hofsearch
