// One line per acceptance criterion. Exit status is nonzero if any criterion
// fails, except those listed in kDocumented (kept visible as FAIL lines).

#include <hofsearch/evaluator.hpp>
#include <hofsearch/growth.hpp>
#include <hofsearch/search.hpp>
#include <hofsearch/solver.hpp>

#include "generators.hpp"
#include "identity.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hofsearch;

namespace {

// Time limits in seconds.
constexpr double kLimitGolomb = 1.0;
constexpr double kLimitRuskey = 1.0;
constexpr double kLimitRunning = 10.0;
constexpr double kLimitCounts = 600.0;
constexpr double kLimitConway = 30.0;
constexpr double kLimitGrowth = 60.0;
constexpr double kLimitSolver = 30.0;

constexpr int kGrowthSystems = 500;
constexpr int kGrowthHorizon = 400;
constexpr int kGrowthDecidedPercent = 95;
constexpr int kSolverSystems = 200;
constexpr long kSolverBound = 12;
constexpr std::int64_t kVerifyTerms = 200;
constexpr std::int64_t kIdentityTerms = 200;

// Known mismatches, each itemized in the decision ledger.
const std::set<std::string> kDocumented = {};

const char* kQ = "Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2))";
const char* kR = "R(n) = R(n - R(n-1)) + R(n - R(n-2)) + R(n - R(n-3))";
const char* kConway = "A(n) = A(A(n-1)) + A(n - A(n-1))";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;
int documented = 0;
int passed = 0;
int skipped = 0;

void report(const std::string& id, const Outcome& o) {
  std::string verdict;
  if (o.ok) {
    verdict = "PASS";
    ++passed;
  } else if (kDocumented.count(id)) {
    verdict = "FAIL (documented discrepancy, see ledger)";
    ++documented;
  } else {
    verdict = "FAIL";
    ++failures;
  }
  std::cout << std::left << std::setw(26) << id << verdict << "  " << o.detail << std::endl;
}

void skip(const std::string& id, const std::string& why) {
  ++skipped;
  std::cout << std::left << std::setw(26) << id << "SKIP  " << why << std::endl;
}

Outcome timed(double limit, const std::function<Outcome()>& body) {
  auto t = Clock::now();
  Outcome o = body();
  const double s = seconds_since(t);
  std::ostringstream d;
  d << o.detail << (o.detail.empty() ? "" : "; ") << std::fixed << std::setprecision(2) << s << "s (limit " << limit
    << "s)";
  o.detail = d.str();
  if (s > limit) o.ok = false;
  return o;
}

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

SearchResult run_search(const char* rec, int m) {
  SearchOptions o;
  o.verify_terms = kVerifyTerms;
  return search(parse(rec), m, o);
}

std::vector<SearchResult> checked_results;  // families fed to criterion 10

Outcome golomb() {
  Generated g = generate(parse(kQ), ints({3, 2, 1}), 12);
  const auto want = ints({3, 2, 1, 3, 5, 4, 3, 8, 7, 3, 11, 10});
  return {!g.death && g.terms == want, join(g.terms)};
}

Outcome ruskey() {
  Generated g = generate(parse(kQ), ints({3, 6, 5, 3, 6, 8}), 3 * 40 + 2);
  if (g.death) return {false, "died"};
  std::vector<BigInt> fib{0, 1};  // F_0, F_1
  while (fib.size() < 45) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  auto q = [&](std::int64_t n) { return g.terms[static_cast<std::size_t>(n - 1)]; };
  for (std::int64_t k = 2; k <= 40; ++k) {
    if (q(3 * k) != fib[static_cast<std::size_t>(k + 4)] || q(3 * k + 1) != 3 || q(3 * k + 2) != 6) {
      return {false, "mismatch at k=" + std::to_string(k)};
    }
  }
  return {true, "Q(120) = " + q(120).get_str()};
}

Outcome running_example() {
  SearchResult res = run_search(kR, 4);
  checked_results.push_back(res);
  const SolutionFamily* fam = nullptr;
  for (const auto& f : res.families) {
    if (to_string(f.behavior) == "SLCC" && f.congruences.residue_of(LinExpr::symbol(2)) == 0 &&
        f.congruences.residue_of(LinExpr::symbol(3)) == 3) {
      fam = &f;
    }
  }
  if (!fam) return {false, "SLCC with B_2=0, B_3=3 (mod 4) not among " + std::to_string(res.families.size()) + " families"};

  const auto v2 = fam->pool->find_v(LinExpr(2) - LinExpr::symbol(1));
  const auto v3 = fam->pool->find_v(LinExpr(3) - LinExpr::symbol(1));
  if (!v2 || !v3) return {false, "V(2 - B_1) or V(3 - B_1) missing"};
  Assignment asg{{1, 0}, {2, 4}, {3, 3}, {*v2, 1}, {*v3, 0}};
  if (!check_assignment(fam->system, asg)) return {false, "check_assignment rejects the reference assignment"};

  std::vector<BigInt> ic;
  try {
    ic = instantiate(fam->symbolic_ic, {{1, 1}, {4, 4}});
  } catch (const std::exception& e) {
    return {false, std::string("instantiation failed: ") + e.what()};
  }
  if (ic != ints({1, 1, 0, 4, 4, 4, 3})) return {false, "instantiated ic " + join(ic)};
  if (!verify_family(fam->recurrence, ic, fam->eventual, kVerifyTerms).ok) return {false, "verify_family failed"};

  Generated g = generate(fam->recurrence, ic, kVerifyTerms);
  auto r = [&](std::int64_t n) { return g.terms[static_cast<std::size_t>(n - 1)]; };
  int checked = 0;
  for (std::int64_t k = 2; 4 * k <= kVerifyTerms; ++k) {
    if (r(4 * k) != r(4 * k - 4) + 4 * k + r(4) - 4) return {false, "residue 0 mismatch at k=" + std::to_string(k)};
    ++checked;
  }
  return {true, std::to_string(res.families.size()) + " families, ic " + fam->symbolic_ic.to_string("R") + ", " +
                    std::to_string(checked) + " residue-0 terms"};
}

struct Expected {
  int period;
  std::size_t families;
  std::size_t classes;
};

void family_counts() {
  const std::vector<Expected> expected{{1, 0, 0}, {2, 2, 1}, {3, 12, 4}, {4, 12, 5}, {5, 35, 7}};
  auto t = Clock::now();
  for (const auto& e : expected) {
    SearchResult res = run_search(kQ, e.period);
    checked_results.push_back(res);
    const std::string p = "4 period " + std::to_string(e.period);
    const std::size_t classes = behavior_representatives(res.families).size();
    const std::size_t orbits = canonicalize_mod_shift(res.families).size();
    std::string anomalies = res.anomalies.empty() ? "" : ", " + std::to_string(res.anomalies.size()) + " anomalies";
    report(p + " families", {res.families.size() == e.families && res.anomalies.empty(),
                             "got " + std::to_string(res.families.size()) + ", want " + std::to_string(e.families) +
                                 anomalies});
    report(p + " classes",
           {classes == e.classes, "got " + std::to_string(classes) + ", want " + std::to_string(e.classes) + " (" +
                                      std::to_string(orbits) + " shift orbits)"});
  }
  const double s = seconds_since(t);
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << s << "s (limit " << kLimitCounts << "s)";
  report("4 runtime", {s <= kLimitCounts, d.str()});
}

Outcome period6() {
  SearchResult res = run_search(kQ, 6);
  checked_results.push_back(res);
  const std::size_t classes = behavior_representatives(res.families).size();
  const std::size_t orbits = canonicalize_mod_shift(res.families).size();
  bool quadratic = false;
  for (const auto& f : res.families) {
    for (const auto& d : f.structure.growth.degree) quadratic = quadratic || d == 2;
  }
  return {res.families.size() == 294 && classes == 86 && res.anomalies.empty() && quadratic,
          std::to_string(res.families.size()) + " families, " + std::to_string(classes) + " classes (" +
              std::to_string(orbits) + " shift orbits), " + std::to_string(res.anomalies.size()) +
              " anomalies, quadratic " + (quadratic ? "yes" : "no")};
}

Outcome period2_concrete() {
  SearchResult res = run_search(kQ, 2);
  for (const auto& f : res.families) {
    if (f.sample_ic != ints({2, 2})) continue;
    Generated g = generate(f.recurrence, f.sample_ic, 8);
    const bool ok = !g.death && g.terms == ints({2, 2, 4, 2, 6, 2, 8, 2}) &&
                    verify_family(f.recurrence, f.sample_ic, f.eventual, kVerifyTerms).ok;
    return {ok, to_string(f.behavior) + " sample ic [2,2] gives " + join(g.terms)};
  }
  return {false, "no period-2 family with sample ic [2,2]"};
}

Outcome conway() {
  SearchResult res = run_search(kConway, 2);
  checked_results.push_back(res);
  for (const auto& f : res.families) {
    if (to_string(f.behavior) == "LL") {
      return {true, std::to_string(res.families.size()) + " families, LL with sample " + join(f.sample_ic)};
    }
  }
  return {false, std::to_string(res.families.size()) + " families, none LL"};
}

Outcome growth_suite() {
  gen::Rng rng(20240601);
  int total = 0, decided = 0, disagree = 0;
  for (int t = 0; t < kGrowthSystems; ++t) {
    PRSystem s = gen::prs(rng);
    auto ic = gen::positive_ic(rng, s);
    GrowthResult g = compute_growth(s);
    auto o = empirical_growth_oracle(s, ic, kGrowthHorizon);
    for (int r = 0; r < s.m; ++r) {
      ++total;
      const auto& v = o[static_cast<std::size_t>(r)];
      if (v.verdict == OracleVerdict::Inconclusive) continue;
      ++decided;
      const Degree want = v.verdict == OracleVerdict::Exponential ? kDegInf : v.degree;
      disagree += g.degree[static_cast<std::size_t>(r)] != want;
    }
  }
  return {disagree == 0 && decided * 100 >= total * kGrowthDecidedPercent,
          std::to_string(decided) + "/" + std::to_string(total) + " decided, " + std::to_string(disagree) +
              " disagreements"};
}

Outcome solver_suite() {
  gen::Rng rng(20240602);
  SolveOptions o;
  o.bound = kSolverBound;
  int sat = 0, bad = 0;
  for (int t = 0; t < kSolverSystems; ++t) {
    ConstraintSystem sys = gen::csp(rng);
    const bool any = gen::brute_force_count(sys, kSolverBound) > 0;
    SolveResult r = solve(sys, o);
    const bool got = r.status == SolveStatus::Sat;
    if (got != any || (got && !check_assignment(sys, r.witnesses.front()))) ++bad;
    sat += got;
  }
  return {bad == 0, std::to_string(sat) + "/" + std::to_string(kSolverSystems) + " satisfiable, " +
                        std::to_string(bad) + " disagreements"};
}

Outcome identities() {
  std::size_t families = 0, terms = 0;
  for (const auto& res : checked_results) {
    for (const auto& f : res.families) {
      ++families;
      auto c = hoftest::check_unpacked_identities(f, kIdentityTerms);
      if (c.first_failure) {
        return {false, format(f.recurrence) + " " + to_string(f.behavior) + " fails at n=" +
                           std::to_string(*c.first_failure)};
      }
      terms += static_cast<std::size_t>(c.checked);
    }
  }
  return {families > 0, std::to_string(families) + " families, " + std::to_string(terms) + " terms"};
}

}  // namespace

int main() {
  const char* stretch = std::getenv("HOFSEARCH_STRETCH");
  const bool run_stretch = stretch && std::string(stretch) == "1";

  report("1 golomb", timed(kLimitGolomb, golomb));
  report("2 ruskey", timed(kLimitRuskey, ruskey));
  report("3 running example", timed(kLimitRunning, running_example));
  family_counts();
  if (run_stretch) {
    report("5 period 6 (stretch)", period6());
  } else {
    skip("5 period 6 (stretch)", "set HOFSEARCH_STRETCH=1");
  }
  report("6 period 2 concrete", period2_concrete());
  report("7 conway period 2", timed(kLimitConway, conway));
  report("8 growth vs oracle", timed(kLimitGrowth, growth_suite));
  report("9 solver vs brute force", timed(kLimitSolver, solver_suite));
  report("10 unpacked identities", identities());

  std::cout << "\n"
            << passed << " passed, " << failures << " failed, " << documented << " documented discrepancies, "
            << skipped << " skipped" << std::endl;
  return failures == 0 ? 0 : 1;
}
