#include <hofsearch/lp.hpp>

#include <stdexcept>

namespace hofsearch::lp {
namespace {

struct ColumnMap {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> cols;  // (column, sign)
};

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<std::size_t> basis,
          std::size_t num_cols)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)), n_(num_cols) {}

  /// Runs simplex for `cost`; columns with forbidden[j] never enter.
  /// Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& forbidden) {
    std::vector<Rational> z = cost;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(a_[i][j]) != 0) z[j] -= cb * a_[i][j];
      }
    }
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!forbidden[j] && sgn(z[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return true;
      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        Rational ratio = b_[i] / a_[i][enter];
        if (leave == a_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == a_.size()) return false;
      pivot(leave, enter);
      const Rational ze = z[enter];
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(a_[leave][j]) != 0) z[j] -= ze * a_[leave][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const Rational p = a_[r][e];
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(a_[r][j]) != 0) a_[r][j] /= p;
    }
    b_[r] /= p;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || sgn(a_[i][e]) == 0) continue;
      const Rational f = a_[i][e];
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(a_[r][j]) != 0) a_[i][j] -= f * a_[r][j];
      }
      b_[i] -= f * b_[r];
    }
    basis_[r] = e;
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) v += cost[basis_[i]] * b_[i];
    return v;
  }

  /// Pivot artificial columns (index >= first_artificial) out of the basis;
  /// drops rows that are redundant.
  void drive_out(std::size_t first_artificial) {
    for (std::size_t i = 0; i < a_.size();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(a_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col == first_artificial) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
  }

  std::vector<Rational> values() const {
    std::vector<Rational> v(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) v[basis_[i]] = b_[i];
    return v;
  }

 private:
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::size_t n_;
};

}  // namespace

Solution solve(const Problem& p) {
  const std::size_t n = p.num_vars;
  auto lower = [&](std::size_t j) -> const std::optional<Rational>& {
    static const std::optional<Rational> none;
    return p.lower.empty() ? none : p.lower[j];
  };
  auto upper = [&](std::size_t j) -> const std::optional<Rational>& {
    static const std::optional<Rational> none;
    return p.upper.empty() ? none : p.upper[j];
  };

  // Map every original variable onto nonnegative columns.
  std::vector<ColumnMap> maps(n);
  std::size_t structural = 0;
  std::vector<Row> rows = p.rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lo = lower(j);
    const auto& hi = upper(j);
    if (lo && hi && *lo > *hi) return {Status::Infeasible, {}, {}};
    if (lo && hi && *lo == *hi) {
      maps[j].offset = *lo;
    } else if (lo) {
      maps[j].offset = *lo;
      maps[j].cols.push_back({structural, 1});
      if (hi) {
        Row r;
        r.coeffs.assign(n, Rational(0));
        r.coeffs[j] = 1;
        r.sense = Sense::Le;
        r.rhs = *hi;
        rows.push_back(std::move(r));
      }
      ++structural;
    } else if (hi) {
      maps[j].offset = *hi;
      maps[j].cols.push_back({structural++, -1});
    } else {
      maps[j].cols.push_back({structural++, 1});
      maps[j].cols.push_back({structural++, -1});
    }
  }

  const std::size_t m = rows.size();
  std::size_t slacks = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::Eq) ++slacks;
  }
  std::vector<std::vector<Rational>> a(m);
  std::vector<Rational> b(m);
  std::vector<int> slack_col_sign(m, 0);
  std::vector<std::size_t> slack_col(m, 0);
  std::size_t next_slack = structural;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    a[i].assign(structural + slacks, Rational(0));
    Rational rhs = r.rhs;
    for (std::size_t j = 0; j < n && j < r.coeffs.size(); ++j) {
      const Rational& c = r.coeffs[j];
      if (sgn(c) == 0) continue;
      rhs -= c * maps[j].offset;
      for (auto [col, s] : maps[j].cols) a[i][col] += s > 0 ? c : Rational(-c);
    }
    if (r.sense != Sense::Eq) {
      slack_col[i] = next_slack;
      slack_col_sign[i] = r.sense == Sense::Le ? 1 : -1;
      a[i][next_slack] = slack_col_sign[i];
      ++next_slack;
    }
    if (sgn(rhs) < 0) {
      for (auto& v : a[i]) v = -v;
      rhs = -rhs;
      slack_col_sign[i] = -slack_col_sign[i];
    }
    b[i] = rhs;
  }

  // Initial basis: a +1 slack where possible, otherwise an artificial column.
  const std::size_t first_art = structural + slacks;
  std::vector<std::size_t> basis(m);
  std::size_t arts = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_col_sign[i] == 1) {
      basis[i] = slack_col[i];
    } else {
      basis[i] = first_art + arts++;
    }
  }
  const std::size_t total = first_art + arts;
  for (std::size_t i = 0; i < m; ++i) {
    a[i].resize(total, Rational(0));
    if (basis[i] >= first_art) a[i][basis[i]] = 1;
  }

  Tableau t(std::move(a), std::move(b), std::move(basis), total);
  std::vector<bool> forbidden(total, false);
  if (arts > 0) {
    std::vector<Rational> phase1(total, Rational(0));
    for (std::size_t j = first_art; j < total; ++j) phase1[j] = 1;
    t.optimize(phase1, forbidden);
    if (sgn(t.objective(phase1)) > 0) return {Status::Infeasible, {}, {}};
    t.drive_out(first_art);
    for (std::size_t j = first_art; j < total; ++j) forbidden[j] = true;
  }

  std::vector<Rational> cost(total, Rational(0));
  Rational constant = 0;
  for (std::size_t j = 0; j < n && j < p.objective.size(); ++j) {
    const Rational& c = p.objective[j];
    if (sgn(c) == 0) continue;
    constant += c * maps[j].offset;
    for (auto [col, s] : maps[j].cols) cost[col] += s > 0 ? c : Rational(-c);
  }
  if (!t.optimize(cost, forbidden)) return {Status::Unbounded, {}, {}};

  std::vector<Rational> y = t.values();
  Solution sol;
  sol.status = Status::Optimal;
  sol.value = constant + t.objective(cost);
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational v = maps[j].offset;
    for (auto [col, s] : maps[j].cols) v += s > 0 ? y[col] : Rational(-y[col]);
    sol.x[j] = v;
  }
  return sol;
}

}  // namespace hofsearch::lp
