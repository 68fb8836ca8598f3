#include <doctest.h>
#include <hofsearch/constraints.hpp>
#include <hofsearch/solver.hpp>
#include <hofsearch/unpacker.hpp>

#include "generators.hpp"

using namespace hofsearch;

namespace {

struct Running {
  std::shared_ptr<SymbolPool> pool;
  ConstraintSystem sys;
  int v2 = 0, v3 = 0;

  Running() {
    Recurrence rec = parse("R(n) = R(n - R(n-1)) + R(n - R(n-2)) + R(n - R(n-3))");
    BehaviorVector b = parse_behavior("SLCC");
    pool = std::make_shared<SymbolPool>(make_pool(rec, 4));
    CongruenceAssignment cong;
    for (const auto& c : enumerate_congruence_cases(rec, 4, b)) {
      if (c.residue_of(LinExpr::symbol(2)) == 0 && c.residue_of(LinExpr::symbol(3)) == 3) cong = c;
    }
    UnpackResult up = unpack(rec, 4, b, cong, *pool);
    sys = build_constraints(up, b, cong, check_structure(up.exprs, b), pool, 0);
    v2 = *pool->find_v(LinExpr(2) - LinExpr::symbol(1));
    v3 = *pool->find_v(LinExpr(3) - LinExpr::symbol(1));
  }

  Assignment reference_assignment() const { return {{1, 0}, {2, 4}, {3, 3}, {v2, 1}, {v3, 0}}; }
};

bool holds(const BranchRow& row, const Assignment& a) {
  Rational v = *row.expr.evaluate(a);
  switch (row.sense) {
    case lp::Sense::Eq:
      return v == 0;
    case lp::Sense::Ge:
      return v >= 0;
    case lp::Sense::Le:
      return v <= 0;
  }
  return false;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("running example constraint list") {
    Running ex;
    std::vector<std::string> got;
    for (const auto& c : ex.sys.constraints) got.push_back(c.to_string(*ex.pool));
    const std::vector<std::string> want{
        "B_1 = B_1",
        "B_2 >= 1",
        "B_2 = B_3 + R(-B_1 + 2)",
        "B_3 >= 1",
        "B_3 = B_3 + R(-B_1 + 3)",
        "B_2 = 0 (mod 4)",
        "B_3 = 3 (mod 4)",
        "B_3 >= 1",
        "B_2 >= 1",
        "if -B_1 + 2 = -B_1 + 3 then R(-B_1 + 2) = R(-B_1 + 3)",
        "if -B_1 + 2 <= 0 then R(-B_1 + 2) = 0",
        "if -B_1 + 3 <= 0 then R(-B_1 + 3) = 0",
    };
    CHECK(got == want);
    CHECK(ex.sys.constraints[7].provenance == std::string(kProvValidity));
  }

  TEST_CASE("check_assignment on the running example") {
    Running ex;
    CHECK(check_assignment(ex.sys, ex.reference_assignment()));
    Assignment bad = ex.reference_assignment();
    bad[3] = 2;
    CHECK_FALSE(check_assignment(ex.sys, bad));
    Assignment missing = ex.reference_assignment();
    missing.erase(ex.v3);
    CHECK_THROWS_AS(check_assignment(ex.sys, missing), std::out_of_range);
  }

  TEST_CASE("running example is satisfiable with a checked witness") {
    Running ex;
    SolveResult r = solve(ex.sys);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(check_assignment(ex.sys, r.witnesses.front()));
    CHECK(solve(ex.sys).witnesses == r.witnesses);
  }

  TEST_CASE("trivial unsat and parity") {
    auto pool = std::make_shared<SymbolPool>();
    const int b = pool->b(0);
    ConstraintSystem s1{1, pool, {Constraint::ge(LinExpr::symbol(b), LinExpr(1), "t"), Constraint::eq(LinExpr::symbol(b), LinExpr(0), "t")}};
    CHECK(solve(s1).status == SolveStatus::ProvablyUnsat);

    const int y = pool->aux("y");
    ConstraintSystem s2{2, pool, {Constraint::cong(LinExpr::symbol(b), 1, 2, "t"),
                                  Constraint::eq(LinExpr::symbol(b), LinExpr::symbol(y, 2), "t")}};
    CHECK(solve(s2).status == SolveStatus::ProvablyUnsat);
    CHECK(gen::brute_force_count(s2, 12) == 0);

    ConstraintSystem s3{1, pool, {Constraint::ge(LinExpr::symbol(b), LinExpr(1), "t")}};
    CHECK(check_assignment(s3, {{b, 1}}));
    CHECK(solve(s3).witnesses.front().at(b) == 1);
  }

  TEST_CASE("out of bound is not provable") {
    auto pool = std::make_shared<SymbolPool>();
    const int b = pool->b(0);
    ConstraintSystem s{1, pool, {Constraint::ge(LinExpr::symbol(b), LinExpr(100), "t")}};
    SolveOptions o;
    o.bound = 64;
    CHECK(solve(s, o).status == SolveStatus::UnsatWithinBound);
    o.bound = 128;
    CHECK(solve(s, o).status == SolveStatus::Sat);
  }

  TEST_CASE("several witnesses are distinct and valid") {
    Running ex;
    SolveOptions o;
    o.witnesses = 5;
    SolveResult r = solve(ex.sys, o);
    REQUIRE(r.witnesses.size() == 5);
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      CHECK(check_assignment(ex.sys, r.witnesses[i]));
      for (std::size_t j = 0; j < i; ++j) CHECK(r.witnesses[i] != r.witnesses[j]);
    }
  }

  TEST_CASE("property: conditional branches partition the integers") {
    gen::Rng rng(11);
    auto pool = std::make_shared<SymbolPool>();
    std::vector<int> ids{pool->b(0), pool->v(LinExpr(1))};
    for (int t = 0; t < 200; ++t) {
      const auto g = gen::coin(rng) ? GuardKind::Eq : GuardKind::Le;
      Constraint c = Constraint::cond_eq(g, gen::lin(rng, ids, 3, 5), gen::lin(rng, ids, 3, 5), LinExpr::symbol(ids[1]),
                                         LinExpr(0), "t");
      auto branches = condeq_branches(c);
      CHECK(branches.size() == (g == GuardKind::Eq ? 3u : 2u));
      for (int s = 0; s < 20; ++s) {
        Assignment a{{ids[0], gen::uniform(rng, -8, 8)}, {ids[1], gen::uniform(rng, -8, 8)}};
        int hits = 0;
        for (const auto& br : branches) {
          bool all = true;
          for (const auto& row : br) {
            if (!row.consequence && !holds(row, a)) all = false;
          }
          hits += all;
        }
        CHECK(hits == 1);
      }
    }
  }

  TEST_CASE("property: solve agrees with exhaustive enumeration") {
    gen::Rng rng(12);
    SolveOptions o;
    o.bound = 12;
    for (int t = 0; t < 120; ++t) {
      ConstraintSystem sys = gen::csp(rng);
      const bool any = gen::brute_force_count(sys, 12) > 0;
      SolveResult r = solve(sys, o);
      INFO(sys.to_string());
      CHECK(any == (r.status == SolveStatus::Sat));
      if (r.status == SolveStatus::Sat) CHECK(check_assignment(sys, r.witnesses.front()));
    }
  }

  TEST_CASE("property: identical systems give identical witnesses") {
    gen::Rng rng(13);
    for (int t = 0; t < 50; ++t) {
      ConstraintSystem sys = gen::csp(rng);
      SolveResult a = solve(sys), b = solve(sys);
      CHECK(a.status == b.status);
      CHECK(a.witnesses == b.witnesses);
      CHECK(a.leaf == b.leaf);
    }
  }
}
