#pragma once

// Small hand-rolled generators for the property tests. Every test seeds its
// own engine so failures replay exactly.

#include <hofsearch/constraints.hpp>
#include <hofsearch/growth.hpp>
#include <hofsearch/recurrence.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline hofsearch::IntPolynomial poly(Rng& rng, int max_degree, std::int64_t max_coeff,
                                     hofsearch::PolyVar var = hofsearch::PolyVar::N) {
  std::vector<hofsearch::BigInt> c;
  const auto deg = uniform(rng, -1, max_degree);
  for (std::int64_t i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(uniform(rng, -max_coeff, max_coeff)));
  return hofsearch::IntPolynomial(c, var);
}

inline hofsearch::NestedExpr nested(Rng& rng, int depth) {
  hofsearch::NestedExpr e;
  e.poly = poly(rng, 2, 4);
  if (depth > 0) {
    const auto calls = uniform(rng, depth > 1 ? 1 : 0, 2);
    for (std::int64_t i = 0; i < calls; ++i) {
      std::int64_t c = 0;
      while (c == 0) c = uniform(rng, -3, 3);
      e.calls.push_back({hofsearch::BigInt(static_cast<long>(c)),
                         std::make_shared<const hofsearch::NestedExpr>(nested(rng, depth - 1))});
    }
  }
  e.canonicalize();
  return e;
}

/// Random recurrence with at least one call.
inline hofsearch::Recurrence recurrence(Rng& rng) {
  hofsearch::Recurrence r;
  r.name = coin(rng) ? "Q" : "A";
  do {
    r.rhs = nested(rng, static_cast<int>(uniform(rng, 1, 3)));
  } while (!r.rhs.has_calls());
  return r;
}

/// Basic recurrence: sum of alpha_i * Q(n - beta_i - Q(n - gamma_i)).
inline hofsearch::Recurrence basic_recurrence(Rng& rng, int max_terms = 3, int max_gamma = 3) {
  hofsearch::Recurrence r;
  const auto terms = uniform(rng, 1, max_terms);
  for (std::int64_t i = 0; i < terms; ++i) {
    auto inner = std::make_shared<hofsearch::NestedExpr>();
    inner->poly = hofsearch::IntPolynomial({hofsearch::BigInt(static_cast<long>(-uniform(rng, 1, max_gamma))), 1});
    auto arg = std::make_shared<hofsearch::NestedExpr>();
    arg->poly = hofsearch::IntPolynomial({hofsearch::BigInt(static_cast<long>(-uniform(rng, 0, 2))), 1});
    arg->calls.push_back({hofsearch::BigInt(-1), inner});
    arg->canonicalize();
    r.rhs.calls.push_back({hofsearch::BigInt(static_cast<long>(uniform(rng, 1, 2))), arg});
  }
  r.rhs.canonicalize();
  return r;
}

/// Positive recurrence system with concrete lags.
inline hofsearch::PRSystem prs(Rng& rng, int max_m = 4, int max_d = 3, int max_alpha = 3, int max_degree = 2) {
  hofsearch::PRSystem s;
  s.m = static_cast<int>(uniform(rng, 1, max_m));
  s.d = uniform(rng, 1, max_d);
  for (int i = 0; i < s.m; ++i) {
    const auto deg = uniform(rng, -1, max_degree);
    std::vector<hofsearch::BigInt> c;
    for (std::int64_t p = 0; p <= deg; ++p) c.emplace_back(static_cast<long>(uniform(rng, p == deg ? 1 : -3, 3)));
    s.inhomog.emplace_back(c, hofsearch::PolyVar::K);
  }
  const auto arcs = uniform(rng, 0, s.m * 2);
  for (std::int64_t a = 0; a < arcs; ++a) {
    hofsearch::PRTerm t;
    t.i = static_cast<int>(uniform(rng, 0, s.m - 1));
    t.j = static_cast<int>(uniform(rng, 0, s.m - 1));
    t.lag = uniform(rng, 1, s.d);
    t.alpha = static_cast<long>(uniform(rng, 1, max_alpha));
    s.coeffs.push_back(t);
  }
  return s;
}

/// Positive initial values long enough that every P_i is nonnegative past them.
inline std::vector<std::vector<hofsearch::BigInt>> positive_ic(Rng& rng, const hofsearch::PRSystem& s,
                                                               int max_value = 5) {
  std::int64_t len = s.d + 1;
  for (const auto& p : s.inhomog) len = std::max(len, p.nonnegative_from());
  std::vector<std::vector<hofsearch::BigInt>> ic(static_cast<std::size_t>(s.m));
  for (auto& row : ic) {
    for (std::int64_t j = 0; j < len; ++j) row.emplace_back(static_cast<long>(uniform(rng, 1, max_value)));
  }
  return ic;
}

inline hofsearch::LinExpr lin(Rng& rng, const std::vector<int>& ids, std::int64_t max_coeff, std::int64_t max_const) {
  hofsearch::LinExpr e(static_cast<long>(uniform(rng, -max_const, max_const)));
  for (int id : ids) {
    if (coin(rng, 0.6)) e += hofsearch::LinExpr::symbol(id, hofsearch::Rational(static_cast<long>(uniform(rng, -max_coeff, max_coeff))));
  }
  return e;
}

/// Random system over up to three symbols mixing every constraint kind.
/// Symbol 0 is a B, the others are values Q(c) with concrete indices.
inline hofsearch::ConstraintSystem csp(Rng& rng, int max_vars = 3) {
  using namespace hofsearch;
  auto pool = std::make_shared<SymbolPool>();
  const auto n = uniform(rng, 1, max_vars);
  std::vector<int> ids{pool->b(0)};
  for (std::int64_t i = 1; i < n; ++i) ids.push_back(pool->v(LinExpr(static_cast<long>(i))));
  ConstraintSystem sys;
  sys.m = static_cast<int>(uniform(rng, 2, 4));
  for (std::int64_t c = 0, count = uniform(rng, 1, 4); c < count; ++c) {
    switch (uniform(rng, 0, 3)) {
      case 0:
        sys.constraints.push_back(Constraint::eq(lin(rng, ids, 3, 6), lin(rng, ids, 3, 6), "test"));
        break;
      case 1:
        sys.constraints.push_back(Constraint::ge(lin(rng, ids, 3, 6), lin(rng, ids, 3, 6), "test"));
        break;
      case 2: {
        LinExpr x = LinExpr::symbol(ids[static_cast<std::size_t>(uniform(rng, 0, n - 1))]);
        sys.constraints.push_back(Constraint::cong(x, static_cast<int>(uniform(rng, 0, sys.m - 1)), sys.m, "test"));
        break;
      }
      default: {
        const auto g = coin(rng) ? GuardKind::Eq : GuardKind::Le;
        sys.constraints.push_back(Constraint::cond_eq(g, lin(rng, ids, 2, 4), lin(rng, ids, 2, 4), lin(rng, ids, 2, 4),
                                                      lin(rng, ids, 2, 4), "test"));
      }
    }
  }
  // Every symbol is mentioned so the brute force and the solver see the same variables.
  for (int id : ids) sys.constraints.push_back(Constraint::ge(LinExpr::symbol(id), LinExpr(-1000), "test"));
  sys.pool = pool;
  return sys;
}

/// Satisfying assignments in the box [-bound, bound]^n by exhaustive enumeration.
inline std::size_t brute_force_count(const hofsearch::ConstraintSystem& sys, long bound) {
  const std::vector<int> vars = sys.variables();
  hofsearch::Assignment a;
  for (int id : vars) a[id] = -bound;
  std::size_t count = 0;
  while (true) {
    count += hofsearch::check_assignment(sys, a);
    std::size_t j = 0;
    while (j < vars.size() && a[vars[j]] == bound) {
      a[vars[j]] = -bound;
      ++j;
    }
    if (j == vars.size()) return count;
    a[vars[j]] += 1;
  }
}

}  // namespace gen
