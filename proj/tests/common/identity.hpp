#pragma once

#include <hofsearch/evaluator.hpp>
#include <hofsearch/search.hpp>

#include <cstdint>
#include <optional>

namespace hoftest {

struct IdentityCheck {
  std::int64_t checked = 0;
  std::optional<std::int64_t> first_failure;
};

/// Generates the family's sample sequence and checks every term after the
/// initial condition against the unpacked identity of its residue, with B
/// taken from the witness and every Q(c) read off the generated terms.
/// Terms whose lagged references fall below index 1 are skipped.
inline IdentityCheck check_unpacked_identities(const hofsearch::SolutionFamily& f, std::int64_t n_terms) {
  using namespace hofsearch;
  IdentityCheck out;
  Generated g = generate(f.recurrence, f.sample_ic, n_terms);
  const auto have = static_cast<std::int64_t>(g.terms.size());
  auto term = [&](std::int64_t j) -> BigInt {
    if (j <= 0) return f.recurrence.default_value;
    return g.terms[static_cast<std::size_t>(j - 1)];
  };
  auto as_int = [](const LinExpr& e) -> std::optional<std::int64_t> {
    auto v = e.as_integer();
    return v ? hofsearch::to_int64(*v) : std::nullopt;
  };

  Assignment b_values;
  for (const auto& [id, v] : f.witness()) {
    if (f.pool->info(id).kind != SymbolKind::V) b_values[id] = v;
  }
  // V(c) -> Q(c) once c is concrete under the witness
  auto substitute = [&](const LinExpr& e, std::int64_t n) -> std::optional<LinExpr> {
    bool ok = true;
    LinExpr r = e.substitute([&](int id) -> std::optional<LinExpr> {
      const SymbolInfo& info = f.pool->info(id);
      if (info.kind != SymbolKind::V) {
        auto it = b_values.find(id);
        if (it == b_values.end()) {
          ok = false;
          return std::nullopt;
        }
        return LinExpr(it->second);
      }
      auto c = as_int(info.index.substitute(b_values));
      if (!c || *c >= n) {
        ok = false;
        return std::nullopt;
      }
      return LinExpr(term(*c));
    });
    if (!ok) return std::nullopt;
    return r;
  };

  const std::int64_t m = f.m;
  for (std::int64_t n = static_cast<std::int64_t>(f.sample_ic.size()) + 1; n <= have; ++n) {
    const std::int64_t r = ((n % m) + m) % m;
    const std::int64_t k = (n - r) / m;
    const UnpackedExpr& e = f.unpacked[static_cast<std::size_t>(r)];
    BigInt want = 0, kp = 1;
    bool fail = false, applicable = true;
    for (int p = 0; p <= e.degree(); ++p, kp *= k) {
      auto c = substitute(e.coeff(p), n);
      if (!c || !c->as_integer()) {
        fail = true;
        break;
      }
      want += *c->as_integer() * kp;
    }
    for (const auto& ref : e.refs) {
      if (fail) break;
      auto lag = substitute(ref.lag, n);
      auto l = lag ? as_int(*lag) : std::nullopt;
      if (!l) {
        fail = true;
        break;
      }
      const std::int64_t idx = m * (k - *l) + ref.residue;
      if (idx < 1) {
        applicable = false;
        break;
      }
      if (idx >= n) {
        fail = true;
        break;
      }
      want += ref.coeff * term(idx);
    }
    if (!applicable) continue;
    if (fail || want != term(n)) {
      out.first_failure = n;
      return out;
    }
    ++out.checked;
  }
  if (g.death) out.first_failure = g.death->index;
  return out;
}

}  // namespace hoftest
