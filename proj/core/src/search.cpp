#include <hofsearch/search.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace hofsearch {

std::string family_key(const BehaviorVector& behavior, const CongruenceAssignment& cong) {
  const std::size_t m = behavior.size();
  std::vector<std::string> parts;
  for (std::size_t r = 0; r < m; ++r) {
    std::string d(1, to_string(BehaviorVector{behavior[r]})[0]);
    auto res = cong.residue_of(LinExpr::symbol(static_cast<int>(r)));
    d += res ? std::to_string(*res) : "-";
    parts.push_back(d);
  }
  std::string best;
  for (std::size_t s = 0; s < m; ++s) {
    std::string k;
    for (std::size_t i = 0; i < m; ++i) {
      if (i) k += ' ';
      k += parts[(i + s) % m];
    }
    if (s == 0 || k < best) best = k;
  }
  return best;
}

std::vector<std::vector<std::size_t>> canonicalize_mod_shift(const std::vector<SolutionFamily>& families) {
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < families.size(); ++i) {
    by_key[family_key(families[i].behavior, families[i].congruences)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [k, v] : by_key) out.push_back(std::move(v));
  return out;
}

std::vector<std::size_t> behavior_representatives(const std::vector<SolutionFamily>& families) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const std::string b = to_string(families[i].behavior);
    bool least = true;
    for (std::size_t s = 1; s < b.size() && least; ++s) least = b.substr(s) + b.substr(0, s) >= b;
    if (least) out.push_back(i);
  }
  return out;
}

namespace {

struct BehaviorOutcome {
  std::size_t cases = 0;
  std::vector<SolutionFamily> families;
  std::vector<RejectedCase> rejected;
  std::vector<Anomaly> anomalies;
};

BehaviorOutcome run_behavior(const Recurrence& rec, int m, const BehaviorVector& b, const SearchOptions& opts) {
  BehaviorOutcome out;
  for (const auto& cong : enumerate_congruence_cases(rec, m, b)) {
    ++out.cases;
    auto pool = std::make_shared<SymbolPool>(make_pool(rec, m));
    const std::string cong_text = cong.to_string(*pool);
    auto reject = [&](std::string stage, std::string reason, std::vector<std::string> trace = {}) {
      out.rejected.push_back({b, cong_text, std::move(stage), std::move(reason), std::nullopt, std::move(trace)});
    };

    try {
      UnpackResult up;
      try {
        up = unpack(rec, m, b, cong, *pool, opts.trace_unpack);
      } catch (const UnpackRejected& e) {
        reject("unpack", e.what());
        continue;
      } catch (const ResidueUndecided& e) {
        reject("unpack", "residue of " + e.key().to_string(pool->namer()) + " is not assigned");
        continue;
      }
      StructureReport st = check_structure(up.exprs, b);
      if (!st.ok) {
        reject("structure", st.reason, up.trace);
        continue;
      }
      ConstraintSystem sys = build_constraints(up, b, cong, st, pool, rec.default_value);
      SolveOptions so;
      so.bound = opts.bound;
      so.witnesses = std::max<std::size_t>(1, opts.witnesses);
      SolveResult sol = solve(sys, so);
      if (sol.status != SolveStatus::Sat) {
        out.rejected.push_back({b, cong_text, "solve", to_string(sol.status), sys, up.trace});
        continue;
      }

      SolutionFamily fam;
      fam.recurrence = rec;
      fam.m = m;
      fam.behavior = b;
      fam.congruences = cong;
      fam.pool = pool;
      fam.unpacked = up.exprs;
      fam.structure = st;
      fam.system = sys;
      fam.witnesses = sol.witnesses;
      fam.leaf = sol.leaf;
      fam.trace = up.trace;
      fam.key = family_key(b, cong);
      auto anomaly = [&](std::string stage, std::string detail) {
        out.anomalies.push_back({b, cong_text, std::move(stage), std::move(detail), sys});
      };
      try {
        fam.eventual = concretize(rec, up.exprs, b, *pool, fam.witness());
      } catch (const std::exception& e) {
        anomaly("concretize", e.what());
        continue;
      }
      ICOptions io;
      io.max_length = opts.max_ic_length;
      io.validate_terms = opts.verify_terms;
      ICResult ic = build_ic(rec, b, fam.eventual, sys, fam.witness(), io);
      if (!ic.ic) {
        anomaly("initial-condition", ic.failure);
        continue;
      }
      fam.symbolic_ic = std::move(*ic.ic);
      auto sample = sample_instantiation(fam.symbolic_ic);
      if (!sample) {
        anomaly("sample", "initial-condition constraints have no point in the box");
        continue;
      }
      fam.sample_ic = *sample;
      VerifyResult v = verify_family(rec, fam.sample_ic, fam.eventual, opts.verify_terms);
      if (!v.ok) {
        anomaly("verify", "first mismatch at n = " + std::to_string(v.first_mismatch.value_or(0)));
        continue;
      }
      fam.verified_terms = opts.verify_terms;
      out.families.push_back(std::move(fam));
    } catch (const std::exception& e) {
      out.anomalies.push_back({b, cong_text, "internal", e.what(), std::nullopt});
    }
  }
  return out;
}

}  // namespace

SearchResult search(const Recurrence& rec, int m, const SearchOptions& opts) {
  if (m < 1) throw std::invalid_argument("period must be positive");
  std::vector<BehaviorVector> behaviors = opts.behaviors.empty() ? all_behaviors(m) : opts.behaviors;
  std::vector<BehaviorOutcome> outcomes(behaviors.size());

  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, behaviors.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < behaviors.size(); i = next++) outcomes[i] = run_behavior(rec, m, behaviors[i], opts);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult res;
  res.recurrence = rec;
  res.m = m;
  for (auto& o : outcomes) {
    res.cases += o.cases;
    std::move(o.families.begin(), o.families.end(), std::back_inserter(res.families));
    std::move(o.rejected.begin(), o.rejected.end(), std::back_inserter(res.rejected));
    std::move(o.anomalies.begin(), o.anomalies.end(), std::back_inserter(res.anomalies));
  }
  return res;
}

}  // namespace hofsearch
