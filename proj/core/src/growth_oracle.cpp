#include <hofsearch/growth.hpp>

#include <cmath>
#include <stdexcept>

namespace hofsearch {
namespace {

double log_of(const BigInt& v) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

/// D <= kOracleMaxDegree such that the (D+1)-fold p-step difference vanishes
/// on the tail [from, a.size()) for some step p. Every step that works is a
/// multiple of the quasi-period and yields the same D.
std::optional<Degree> difference_degree(const std::vector<BigInt>& a, std::size_t from) {
  const std::size_t checks = 30;
  std::optional<Degree> best;
  for (std::size_t p = 1; p <= 60; ++p) {
    std::vector<BigInt> cur(a.begin() + static_cast<std::ptrdiff_t>(from), a.end());
    for (int order = 1; order <= kOracleMaxDegree + 1; ++order) {
      if (cur.size() < p + checks) break;
      std::vector<BigInt> next(cur.size() - p);
      bool zero = true;
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = cur[i + p] - cur[i];
        if (next[i] != 0) zero = false;
      }
      if (zero) return order - 1;
      cur = std::move(next);
    }
  }
  return best;
}

}  // namespace

bool eventually_positive(const PRSystem& sys, const std::vector<std::vector<BigInt>>& ic) {
  if (static_cast<int>(ic.size()) != sys.m) return false;
  if (sys.m == 0) return true;
  const std::size_t len = ic[0].size();
  if (static_cast<std::int64_t>(len) < sys.d + 1) return false;
  for (int r = 0; r < sys.m; ++r) {
    const auto& row = ic[static_cast<std::size_t>(r)];
    if (row.size() != len) return false;
    if (!sys.inhomog[static_cast<std::size_t>(r)].eventually_nonnegative()) return false;
    if (sys.inhomog[static_cast<std::size_t>(r)].nonnegative_from() > static_cast<std::int64_t>(len)) return false;
    for (std::int64_t i = 0; i <= sys.d; ++i) {
      if (row[len - 1 - static_cast<std::size_t>(i)] <= 0) return false;
    }
  }
  return true;
}

std::vector<std::vector<BigInt>> generate_system(const PRSystem& sys, const std::vector<std::vector<BigInt>>& ic,
                                                 int horizon) {
  std::vector<std::vector<BigInt>> a = ic;
  const std::size_t len = ic.empty() ? 0 : ic[0].size();
  for (auto k = static_cast<std::int64_t>(len) + 1; k <= horizon; ++k) {
    std::vector<BigInt> next(static_cast<std::size_t>(sys.m));
    for (int r = 0; r < sys.m; ++r) next[static_cast<std::size_t>(r)] = sys.inhomog[static_cast<std::size_t>(r)].evaluate(k);
    for (const auto& t : sys.coeffs) {
      if (t.kind != LagKind::Concrete) throw std::invalid_argument("symbolic lag");
      std::int64_t idx = k - t.lag;
      if (idx < 1) throw std::invalid_argument("initial condition shorter than the largest lag");
      next[static_cast<std::size_t>(t.i)] += t.alpha * a[static_cast<std::size_t>(t.j)][static_cast<std::size_t>(idx - 1)];
    }
    for (int r = 0; r < sys.m; ++r) a[static_cast<std::size_t>(r)].push_back(std::move(next[static_cast<std::size_t>(r)]));
  }
  return a;
}

std::vector<OracleResult> empirical_growth_oracle(const PRSystem& sys, const std::vector<std::vector<BigInt>>& ic,
                                                  int horizon) {
  if (!eventually_positive(sys, ic)) throw std::invalid_argument("initial condition is not eventually positive");
  auto a = generate_system(sys, ic, horizon);
  std::vector<OracleResult> out(static_cast<std::size_t>(sys.m));
  const auto h = static_cast<std::size_t>(horizon);
  for (int r = 0; r < sys.m; ++r) {
    const auto& s = a[static_cast<std::size_t>(r)];
    OracleResult& res = out[static_cast<std::size_t>(r)];
    bool all_zero = true;
    for (std::size_t i = h / 2; i < h; ++i) {
      if (s[i] != 0) all_zero = false;
    }
    if (all_zero) {
      res.verdict = OracleVerdict::Poly;
      res.degree = kDegNegInf;
      continue;
    }
    // Ratio test over equal windows: exponential growth keeps the log-gain
    // per window constant, polynomial growth makes it shrink.
    const BigInt& x2 = s[h / 2 - 1];
    const BigInt& x3 = s[3 * h / 4 - 1];
    const BigInt& x4 = s[h - 1];
    if (x2 > 0 && x3 > 0 && x4 > 0) {
      double g1 = log_of(x3) - log_of(x2);
      double g2 = log_of(x4) - log_of(x3);
      if (g2 > 1.0 && g2 >= 0.9 * g1) {
        res.verdict = OracleVerdict::Exponential;
        continue;
      }
    }
    if (auto d = difference_degree(s, h / 2)) {
      res.verdict = OracleVerdict::Poly;
      res.degree = *d;
    }
  }
  return out;
}

}  // namespace hofsearch
