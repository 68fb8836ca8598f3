#include <hofsearch/ilp.hpp>

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>

namespace hofsearch::ilp {
namespace {

lp::Problem relaxation(const Program& p, const std::vector<std::optional<BigInt>>* fixed, bool with_box) {
  lp::Problem q;
  q.num_vars = p.num_vars;
  for (const auto& r : p.rows) {
    lp::Row lr;
    lr.coeffs.reserve(r.coeffs.size());
    for (const auto& c : r.coeffs) lr.coeffs.emplace_back(c);
    lr.sense = r.sense;
    lr.rhs = Rational(r.rhs);
    q.rows.push_back(std::move(lr));
  }
  if (with_box || fixed) {
    q.lower.resize(p.num_vars);
    q.upper.resize(p.num_vars);
    for (std::size_t j = 0; j < p.num_vars; ++j) {
      if (fixed && (*fixed)[j]) {
        q.lower[j] = Rational(*(*fixed)[j]);
        q.upper[j] = Rational(*(*fixed)[j]);
      } else if (with_box) {
        q.lower[j] = Rational(p.lower[j]);
        q.upper[j] = Rational(p.upper[j]);
      }
    }
  }
  return q;
}

class Search {
 public:
  Search(const Program& p, const std::function<bool(const std::vector<BigInt>&)>& visit, const Options& o)
      : p_(p), visit_(visit), opts_(o), fixed_(p.num_vars) {}

  /// Returns false once the visitor asked to stop.
  bool run(std::size_t var) {
    if (++nodes_ > opts_.max_nodes) {
      exhausted_ = true;
      return false;
    }
    if (var == p_.num_vars) {
      std::vector<BigInt> x(p_.num_vars);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = *fixed_[j];
      if (!satisfies(p_, x)) return true;
      ++found_;
      if (found_ == 1) first_ = x;
      return visit_(x);
    }
    if (var > 0 && !lattice_ok()) return true;
    // Every free variable needs an integer in its LP range; branching is on `var`.
    lp::Problem q = relaxation(p_, &fixed_, true);
    BigInt lo, hi;
    for (std::size_t j = var; j < p_.num_vars; ++j) {
      auto range = integer_range(q, j);
      if (!range) return true;
      if (j == var) std::tie(lo, hi) = *range;
    }

    // Expand outward from the value closest to zero.
    BigInt start = 0;
    if (lo > 0) start = lo;
    if (hi < 0) start = hi;
    BigInt up = start, down = start - 1;
    bool prefer_up = true;
    while (up <= hi || down >= lo) {
      BigInt v;
      bool take_up = up <= hi && (down < lo || prefer_up || abs(up) <= abs(down));
      if (take_up) {
        v = up;
        up += 1;
      } else {
        v = down;
        down -= 1;
      }
      prefer_up = false;
      fixed_[var] = v;
      if (!run(var + 1)) {
        fixed_[var].reset();
        return false;
      }
    }
    fixed_[var].reset();
    return true;
  }

  static std::optional<std::pair<BigInt, BigInt>> integer_range(lp::Problem& q, std::size_t j) {
    q.objective.assign(q.num_vars, Rational(0));
    q.objective[j] = 1;
    auto lo_sol = lp::solve(q);
    if (lo_sol.status != lp::Status::Optimal) return std::nullopt;
    q.objective[j] = -1;
    auto hi_sol = lp::solve(q);
    BigInt lo = hofsearch::ceil(lo_sol.value);
    BigInt hi = hofsearch::floor(-hi_sol.value);
    if (lo > hi) return std::nullopt;
    return std::pair{lo, hi};
  }

  /// Equality rows with the fixed variables substituted still have an integer solution.
  bool lattice_ok() const {
    std::vector<Row> reduced;
    for (const auto& r : p_.rows) {
      if (r.sense != lp::Sense::Eq) continue;
      Row q;
      q.rhs = r.rhs;
      q.coeffs.assign(r.coeffs.size(), BigInt(0));
      for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
        if (fixed_[j]) {
          q.rhs -= r.coeffs[j] * *fixed_[j];
        } else {
          q.coeffs[j] = r.coeffs[j];
        }
      }
      reduced.push_back(std::move(q));
    }
    return equalities_solvable(reduced, p_.num_vars);
  }

  std::size_t found() const { return found_; }
  bool exhausted() const { return exhausted_; }
  const std::vector<BigInt>& first() const { return first_; }

 private:
  const Program& p_;
  const std::function<bool(const std::vector<BigInt>&)>& visit_;
  Options opts_;
  std::vector<std::optional<BigInt>> fixed_;
  std::size_t nodes_ = 0;
  std::size_t found_ = 0;
  bool exhausted_ = false;
  std::vector<BigInt> first_;
};

}  // namespace

bool satisfies(const Program& p, const std::vector<BigInt>& x) {
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (x[j] < p.lower[j] || x[j] > p.upper[j]) return false;
  }
  for (const auto& r : p.rows) {
    BigInt lhs = 0;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) lhs += r.coeffs[j] * x[j];
    switch (r.sense) {
      case lp::Sense::Eq:
        if (lhs != r.rhs) return false;
        break;
      case lp::Sense::Ge:
        if (lhs < r.rhs) return false;
        break;
      case lp::Sense::Le:
        if (lhs > r.rhs) return false;
        break;
    }
  }
  return true;
}

bool equalities_solvable(const std::vector<Row>& rows, std::size_t n) {
  // Maintain the integer solution set of the rows seen so far as x0 + U z.
  std::vector<BigInt> x0(n, BigInt(0));
  std::vector<std::vector<BigInt>> cols(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t j = 0; j < n; ++j) cols[j][j] = 1;
  for (const auto& r : rows) {
    if (r.sense != lp::Sense::Eq) continue;
    auto dot = [&](const std::vector<BigInt>& v) {
      BigInt s = 0;
      for (std::size_t j = 0; j < n && j < r.coeffs.size(); ++j) s += r.coeffs[j] * v[j];
      return s;
    };
    BigInt rhs = r.rhs - dot(x0);
    std::vector<BigInt> w(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) w[c] = dot(cols[c]);
    while (true) {
      std::size_t piv = cols.size();
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (w[c] != 0 && (piv == cols.size() || abs(w[c]) < abs(w[piv]))) piv = c;
      }
      if (piv == cols.size()) {
        if (rhs != 0) return false;
        break;
      }
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c == piv || w[c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), w[c].get_mpz_t(), w[piv].get_mpz_t());
        w[c] -= q * w[piv];
        for (std::size_t j = 0; j < n; ++j) cols[c][j] -= q * cols[piv][j];
      }
      bool single = std::count_if(w.begin(), w.end(), [](const BigInt& v) { return v != 0; }) == 1;
      if (single) {
        if (mod_floor(rhs, abs(w[piv])) != 0) return false;
        BigInt t = rhs / w[piv];
        for (std::size_t j = 0; j < n; ++j) x0[j] += t * cols[piv][j];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(piv));
        break;
      }
    }
  }
  return true;
}

bool relaxation_feasible(const Program& p, bool with_box) {
  return lp::solve(relaxation(p, nullptr, with_box)).status != lp::Status::Infeasible;
}

Result enumerate(const Program& p, const std::function<bool(const std::vector<BigInt>&)>& visit,
                 const Options& opts) {
  Result res;
  if (!equalities_solvable(p.rows, p.num_vars) || !relaxation_feasible(p, false)) {
    res.status = Status::ProvablyInfeasible;
    return res;
  }
  Search s(p, visit, opts);
  s.run(0);
  res.budget_exhausted = s.exhausted();
  if (s.found() > 0) {
    res.status = Status::Feasible;
    res.point = s.first();
  }
  return res;
}

Result solve(const Program& p, const Options& opts) {
  return enumerate(p, [](const std::vector<BigInt>&) { return false; }, opts);
}

}  // namespace hofsearch::ilp
