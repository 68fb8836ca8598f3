#include <doctest.h>
#include <hofsearch/constraints.hpp>
#include <hofsearch/ic_builder.hpp>
#include <hofsearch/solver.hpp>

#include <algorithm>

using namespace hofsearch;

namespace {

const char* kQ = "Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2))";
const char* kR = "R(n) = R(n - R(n-1)) + R(n - R(n-2)) + R(n - R(n-3))";

struct Case {
  Recurrence rec;
  BehaviorVector b;
  std::shared_ptr<SymbolPool> pool;
  UnpackResult up;
  ConstraintSystem sys;
};

Case make_case(const char* text, int m, const char* behavior, const std::map<int, int>& residues) {
  Case c{parse(text), parse_behavior(behavior), nullptr, {}, {}};
  c.pool = std::make_shared<SymbolPool>(make_pool(c.rec, m));
  std::optional<CongruenceAssignment> cong;
  for (const auto& k : enumerate_congruence_cases(c.rec, m, c.b)) {
    bool match = true;
    for (auto [sym, res] : residues) match = match && k.residue_of(LinExpr::symbol(sym)) == res;
    if (match) cong = k;
  }
  REQUIRE(cong);
  c.up = unpack(c.rec, m, c.b, *cong, *c.pool);
  c.sys = build_constraints(c.up, c.b, *cong, check_structure(c.up.exprs, c.b), c.pool, c.rec.default_value);
  return c;
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("ic") {
  TEST_CASE("running example: eventual solution from the witness") {
    Case c = make_case(kR, 4, "SLCC", {{2, 0}, {3, 3}});
    const int v2 = *c.pool->find_v(LinExpr(2) - LinExpr::symbol(1));
    const int v3 = *c.pool->find_v(LinExpr(3) - LinExpr::symbol(1));
    Assignment asg{{1, 0}, {2, 4}, {3, 3}, {v2, 1}, {v3, 0}};
    REQUIRE(check_assignment(c.sys, asg));

    EventualSolution ev = concretize(c.rec, c.up.exprs, c.b, *c.pool, asg);
    REQUIRE(ev.period() == 4);
    // R(4k) = R(4k - 4) + R(4) + 4k - 4
    CHECK(ev.residues[0] == ResidueForm::recurrent(IntPolynomial({BigInt(-4), BigInt(4)}, PolyVar::K), {{BigInt(1), 4}},
                                                   {{BigInt(1), 0, 1}}));
    CHECK(ev.residues[1] == ResidueForm::linear(4, 0));
    CHECK(ev.residues[2] == ResidueForm::constant(4));
    CHECK(ev.residues[3] == ResidueForm::constant(3));

    ICResult ic = build_ic(c.rec, c.b, ev, c.sys, asg);
    REQUIRE(ic.ic);
    CHECK(ic.ic->to_string("R") == "[R(1), 1, 0, R(4), 4, 4, 3]");
    CHECK(ic.ic->symbols() == std::vector<int>{1, 4});
    // R(4) >= 4 keeps the index 7 - 2*R(4) nonpositive
    const auto& items = ic.ic->constraints.items();
    CHECK(std::find(items.begin(), items.end(), Assumption{SymValue::symbol(4, 2) - SymValue(7), Relation::Ge}) !=
          items.end());

    CHECK(instantiate(*ic.ic, {{1, 1}, {4, 4}}) == ints({1, 1, 0, 4, 4, 4, 3}));
    CHECK_THROWS_AS(instantiate(*ic.ic, {{1, 1}, {4, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(instantiate(*ic.ic, {{4, 4}}), std::invalid_argument);

    auto sample = sample_instantiation(*ic.ic);
    REQUIRE(sample);
    CHECK(*sample == ints({0, 1, 0, 4, 4, 4, 3}));
    CHECK(verify_family(c.rec, *sample, ev, 300).ok);
    CHECK(verify_family(c.rec, instantiate(*ic.ic, {{1, 7}, {4, 11}}), ev, 300).ok);
  }

  TEST_CASE("period 2 family of [2,2] has a symbol-free initial condition") {
    // Q(2k) = 2, Q(2k+1) = 2k + 2
    Recurrence rec = parse(kQ);
    BehaviorVector b = parse_behavior("CL");
    int found = 0;
    for (const auto& cong : enumerate_congruence_cases(rec, 2, b)) {
      auto pool = std::make_shared<SymbolPool>(make_pool(rec, 2));
      UnpackResult up = unpack(rec, 2, b, cong, *pool);
      StructureReport st = check_structure(up.exprs, b);
      if (!st.ok) continue;
      ConstraintSystem sys = build_constraints(up, b, cong, st, pool, rec.default_value);
      SolveResult s = solve(sys);
      if (s.status != SolveStatus::Sat) continue;
      ++found;
      EventualSolution ev = concretize(rec, up.exprs, b, *pool, s.witnesses.front());
      CHECK(ev.residues[0] == ResidueForm::constant(2));
      CHECK(ev.residues[1] == ResidueForm::linear(2, 2));
      ICResult ic = build_ic(rec, b, ev, sys, s.witnesses.front());
      REQUIRE(ic.ic);
      CHECK(ic.ic->symbols().empty());
      std::vector<BigInt> concrete = instantiate(*ic.ic, {});
      CHECK(concrete == *sample_instantiation(*ic.ic));
      CHECK(verify_family(rec, concrete, ev, 300).ok);
      CHECK(verify_family(rec, ints({2, 2}), ev, 300).ok);
    }
    CHECK(found == 1);
  }

  TEST_CASE("concretize refuses an incomplete witness") {
    Case c = make_case(kR, 4, "SLCC", {{2, 0}, {3, 3}});
    CHECK_THROWS_AS(concretize(c.rec, c.up.exprs, c.b, *c.pool, {{1, 0}}), std::logic_error);
  }

  TEST_CASE("a length cap too small is reported, not faked") {
    Case c = make_case(kR, 4, "SLCC", {{2, 0}, {3, 3}});
    SolveResult s = solve(c.sys);
    REQUIRE(s.status == SolveStatus::Sat);
    EventualSolution ev = concretize(c.rec, c.up.exprs, c.b, *c.pool, s.witnesses.front());
    ICOptions o;
    o.max_length = 2;
    ICResult ic = build_ic(c.rec, c.b, ev, c.sys, s.witnesses.front(), o);
    CHECK_FALSE(ic.ic);
    CHECK_FALSE(ic.failure.empty());
  }
}
