#include <doctest.h>
#include <hofsearch/constraints.hpp>
#include <hofsearch/solver.hpp>
#include <hofsearch/unpacker.hpp>

#include "generators.hpp"

#include <set>

using namespace hofsearch;

namespace {

const char* kQ = "Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2))";
const char* kR = "R(n) = R(n - R(n-1)) + R(n - R(n-2)) + R(n - R(n-3))";

struct RunningExample {
  Recurrence rec = parse(kR);
  BehaviorVector b = parse_behavior("SLCC");
  std::shared_ptr<SymbolPool> pool = std::make_shared<SymbolPool>(make_pool(rec, 4));
  CongruenceAssignment cong;
  UnpackResult up;

  RunningExample() {
    for (const auto& c : enumerate_congruence_cases(rec, 4, b)) {
      if (c.residue_of(LinExpr::symbol(2)) == 0 && c.residue_of(LinExpr::symbol(3)) == 3) cong = c;
    }
    up = unpack(rec, 4, b, cong, *pool);
  }

  LinExpr B(int r) const { return LinExpr::symbol(r); }
  LinExpr V(const LinExpr& c) const { return LinExpr::symbol(*pool->find_v(c)); }
};

/// Distinct Const residues hit by some inner call Q(n - gamma), read straight off the AST.
std::size_t const_inner_targets(const Recurrence& rec, int m, const BehaviorVector& b) {
  std::set<int> targets;
  for (const auto& outer : rec.rhs.calls) {
    for (const auto& inner : outer.arg->calls) {
      const auto g = as_shift(*inner.arg);
      REQUIRE(g);
      for (int r = 0; r < m; ++r) {
        const auto t = static_cast<int>(mod_floor(BigInt(r) - *g, BigInt(m)).get_si());
        if (b[static_cast<std::size_t>(t)] == Behavior::Const) targets.insert(t);
      }
    }
  }
  return targets.size();
}

}  // namespace

TEST_SUITE("unpacker") {
  TEST_CASE("behavior vectors") {
    CHECK(to_string(parse_behavior("SLCC")) == "SLCC");
    auto all = all_behaviors(2);
    REQUIRE(all.size() == 9);
    CHECK(to_string(all.front()) == "CC");
    CHECK(to_string(all[1]) == "CL");
    CHECK(to_string(all.back()) == "SS");
    CHECK_THROWS(parse_behavior("CX"));
  }

  TEST_CASE("congruence case counts") {
    CHECK(enumerate_congruence_cases(parse(kR), 4, parse_behavior("SLCC")).size() == 16);
    CHECK(enumerate_congruence_cases(parse(kQ), 2, parse_behavior("CC")).size() == 4);
    CHECK(enumerate_congruence_cases(parse(kQ), 3, parse_behavior("LSL")).size() == 1);
  }

  TEST_CASE("congruence keys are normalized") {
    auto [key, sign] = congruence_key(LinExpr(4) - LinExpr::symbol(1) * Rational(2));
    CHECK(sign == -1);
    CHECK(key == LinExpr::symbol(1) * Rational(2));
  }

  TEST_CASE("running example: unpacked residues") {
    RunningExample ex;
    const auto& e = ex.up.exprs;
    REQUIRE(e.size() == 4);

    // R(4k + 1) = 4k + B_1
    CHECK(e[1].degree() == 1);
    CHECK(e[1].coeff(1) == LinExpr(4));
    CHECK(e[1].coeff(0) == ex.B(1));
    CHECK(e[1].refs.empty());

    // R(4k + 3) = B_3 + R(3 - B_1)
    CHECK(e[3].degree() == 0);
    CHECK(e[3].coeff(0) == ex.B(3) + ex.V(LinExpr(3) - ex.B(1)));

    // R(4k) = 4k - B_3 - 1 + B_1 + a0(k - B_2/4) + R(4 - B_1)
    CHECK(e[0].coeff(1) == LinExpr(4));
    CHECK(e[0].coeff(0) == ex.B(1) - ex.B(3) - LinExpr(1) + ex.V(LinExpr(4) - ex.B(1)));
    REQUIRE(e[0].refs.size() == 1);
    CHECK(e[0].refs[0].coeff == 1);
    CHECK(e[0].refs[0].residue == 0);
    CHECK(e[0].refs[0].lag == ex.B(2) * Rational(1, 4));
    CHECK(e[0].to_string(*ex.pool, 4, 0) == "R(4k) = 4*k + B_1 - B_3 + R(-B_1 + 4) - 1 + a0(k - ((1/4)*B_2))");
  }

  TEST_CASE("running example: structure and extracted system") {
    RunningExample ex;
    StructureReport st = check_structure(ex.up.exprs, ex.b);
    REQUIRE(st.ok);
    CHECK(st.growth.degree == std::vector<Degree>{2, 1, 0, 0});
    CHECK(st.labels[0] == "superlinear(degree 2)");
    CHECK(st.steepness.empty());

    auto [prs, pos] = extract_prs(ex.up.exprs, ex.b);
    CHECK(prs.m == 4);
    REQUIRE(prs.coeffs.size() == 1);
    CHECK(prs.coeffs[0].i == 0);
    CHECK(prs.coeffs[0].j == 0);
    CHECK(prs.coeffs[0].kind == LagKind::SymbolicPositive);
    CHECK(pos.positive);
    CHECK(build_graph(prs).arcs.at({0, 0}) == 1);
  }

  TEST_CASE("all-steep period 1 collapses to zero and is rejected") {
    Recurrence q = parse(kQ);
    SymbolPool pool = make_pool(q, 1);
    UnpackResult up = unpack(q, 1, parse_behavior("S"), {}, pool);
    CHECK(up.exprs[0].poly.empty());
    CHECK(up.exprs[0].refs.empty());
    StructureReport st = check_structure(up.exprs, parse_behavior("S"));
    CHECK_FALSE(st.ok);
  }

  TEST_CASE("a(k) = a(k-1) needs a steepness constraint that cannot hold") {
    UnpackResult up;
    up.exprs.resize(1);
    up.exprs[0].refs.push_back({BigInt(1), 0, LinExpr(1)});
    BehaviorVector b = parse_behavior("S");
    StructureReport st = check_structure(up.exprs, b);
    REQUIRE(st.ok);
    REQUIRE(st.steepness.size() == 1);
    CHECK(st.steepness[0].excess == LinExpr(-1));

    auto pool = std::make_shared<SymbolPool>(make_pool(parse(kQ), 1));
    ConstraintSystem sys = build_constraints(up, b, {}, st, pool, 0);
    CHECK(solve(sys).status == SolveStatus::ProvablyUnsat);
  }

  TEST_CASE("extract_prs: no refs, negative coefficient") {
    std::vector<UnpackedExpr> exprs(2);
    exprs[0].poly = {LinExpr(3)};
    exprs[1].poly = {LinExpr(1), LinExpr(2)};
    auto [none, ok] = extract_prs(exprs, parse_behavior("SL"));
    CHECK(none.coeffs.empty());
    CHECK(ok.positive);

    std::vector<UnpackedExpr> neg(1);
    neg[0].poly = {LinExpr(0), LinExpr(3)};
    neg[0].refs.push_back({BigInt(-1), 0, LinExpr(1)});
    auto [sys, report] = extract_prs(neg, parse_behavior("S"));
    CHECK_FALSE(report.positive);
    CHECK_FALSE(report.warnings.empty());
    CHECK(sys.m == 1);
  }

  TEST_CASE("nonbasic recurrences split lazily on B residues") {
    Recurrence a = parse("A(n) = A(A(n-1)) + A(n - A(n-1))");
    auto cases = enumerate_congruence_cases(a, 2, parse_behavior("LL"));
    CHECK(cases.size() == 4);
    for (const auto& c : cases) CHECK(c.entries.size() == 2);
  }

  TEST_CASE("property: basic case lists are m^t with t the Const inner targets") {
    gen::Rng rng(5);
    for (int t = 0; t < 120; ++t) {
      Recurrence r = gen::basic_recurrence(rng);
      const int m = static_cast<int>(gen::uniform(rng, 1, 4));
      auto all = all_behaviors(m);
      const BehaviorVector& b = all[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(all.size()) - 1))];
      std::size_t expect = 1;
      for (std::size_t i = 0, n = const_inner_targets(r, m, b); i < n; ++i) expect *= static_cast<std::size_t>(m);
      INFO(format(r), " m=", m, " ", to_string(b));
      CHECK(enumerate_congruence_cases(r, m, b).size() == expect);
    }
  }

  TEST_CASE("property: unpacking is deterministic") {
    gen::Rng rng(6);
    for (int t = 0; t < 80; ++t) {
      Recurrence r = gen::basic_recurrence(rng);
      const int m = static_cast<int>(gen::uniform(rng, 1, 4));
      auto all = all_behaviors(m);
      const BehaviorVector& b = all[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(all.size()) - 1))];
      for (const auto& cong : enumerate_congruence_cases(r, m, b)) {
        SymbolPool p1 = make_pool(r, m), p2 = make_pool(r, m);
        std::optional<UnpackResult> u1, u2;
        try {
          u1 = unpack(r, m, b, cong, p1);
        } catch (const UnpackRejected&) {
        }
        try {
          u2 = unpack(r, m, b, cong, p2);
        } catch (const UnpackRejected&) {
        }
        REQUIRE(u1.has_value() == u2.has_value());
        if (u1) CHECK(u1->exprs == u2->exprs);
      }
    }
  }
}
