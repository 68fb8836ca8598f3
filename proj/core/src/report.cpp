#include <hofsearch/report.hpp>

#include <json.hpp>

#include <sstream>

namespace hofsearch {
namespace {

using nlohmann::ordered_json;

ordered_json big(const BigInt& v) {
  if (auto i = to_int64(v)) return *i;
  return v.get_str();
}

ordered_json big_list(const std::vector<BigInt>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

ordered_json constraints_of(const ConstraintSystem& sys) {
  ordered_json a = ordered_json::array();
  for (const auto& c : sys.constraints) a.push_back({{"text", c.to_string(*sys.pool)}, {"provenance", c.provenance}});
  return a;
}

ordered_json csp(const ConstraintSystem& sys) {
  ordered_json vars = ordered_json::array();
  for (int id : sys.variables()) {
    const SymbolInfo& info = sys.pool->info(id);
    const char* kind = info.kind == SymbolKind::B ? "B" : info.kind == SymbolKind::V ? "V" : "aux";
    vars.push_back({{"id", id}, {"name", sys.pool->name(id)}, {"kind", kind}});
  }
  return {{"modulus", sys.m}, {"variables", vars}, {"constraints", constraints_of(sys)}};
}

ordered_json witness_json(const Assignment& a, const SymbolPool& pool) {
  ordered_json o = ordered_json::object();
  for (const auto& [id, v] : a) o[pool.name(id)] = big(v);
  return o;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

ordered_json family_json(const SolutionFamily& f, const ReportOptions& opts) {
  const SymbolPool& pool = *f.pool;
  ordered_json cong = ordered_json::array();
  for (const auto& [key, res] : f.congruences.entries) {
    cong.push_back({{"expr", key.to_string(pool.namer())}, {"residue", res}, {"modulus", f.m}});
  }
  ordered_json unpacked = ordered_json::array();
  for (int r = 0; r < f.m; ++r) unpacked.push_back(f.unpacked[static_cast<std::size_t>(r)].to_string(pool, f.m, r));
  ordered_json growth = ordered_json::array();
  for (int r = 0; r < f.m; ++r) {
    growth.push_back({{"residue", r},
                      {"label", f.structure.labels[static_cast<std::size_t>(r)]},
                      {"degree", degree_to_string(f.structure.growth.degree[static_cast<std::size_t>(r)])}});
  }
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : f.witnesses) witnesses.push_back(witness_json(w, pool));
  ordered_json j = {
      {"behavior", to_string(f.behavior)},
      {"key", f.key},
      {"congruences", cong},
      {"unpacked", unpacked},
      {"growth", growth},
      {"constraints", constraints_of(f.system)},
      {"witness", witness_json(f.witness(), pool)},
      {"eventual", lines(f.eventual.to_string(f.recurrence.name))},
      {"symbolic_ic",
       {{"entries", ordered_json::array()}, {"constraints", f.symbolic_ic.constraint_strings(f.recurrence.name)}}},
      {"sample_ic", big_list(f.sample_ic)},
      {"verified_terms", f.verified_terms},
  };
  auto name = [&](int id) { return f.recurrence.name + "(" + std::to_string(id) + ")"; };
  for (const auto& e : f.symbolic_ic.entries) j["symbolic_ic"]["entries"].push_back(e.to_string(name));
  if (f.witnesses.size() > 1) j["witnesses"] = witnesses;
  if (!f.structure.positivity.warnings.empty()) j["positivity_warnings"] = f.structure.positivity.warnings;
  if (opts.trace) j["trace"] = f.trace;
  return j;
}

std::string case_text(const BehaviorVector& b, const std::string& cong) {
  return to_string(b) + (cong.empty() ? "" : " | " + cong);
}

}  // namespace

std::string constraint_system_json(const ConstraintSystem& sys) { return csp(sys).dump(2); }

std::string report_json(const SearchResult& res, const ReportOptions& opts) {
  ordered_json j;
  j["recurrence"] = format(res.recurrence);
  j["period"] = res.m;
  j["cases"] = res.cases;
  j["families"] = ordered_json::array();
  for (const auto& f : res.families) j["families"].push_back(family_json(f, opts));
  if (opts.mod_shift) {
    ordered_json classes = ordered_json::array();
    for (const auto& cls : canonicalize_mod_shift(res.families)) {
      classes.push_back({{"key", res.families[cls.front()].key}, {"members", cls}});
    }
    j["mod_shift"] = classes;
    j["behavior_representatives"] = behavior_representatives(res.families);
  }
  j["rejected"] = ordered_json::array();
  for (const auto& r : res.rejected) {
    ordered_json o = {{"case", case_text(r.behavior, r.congruences)}, {"stage", r.stage}, {"reason", r.reason}};
    if (opts.dump_csp && r.system) o["csp"] = csp(*r.system);
    if (opts.trace && !r.trace.empty()) o["trace"] = r.trace;
    j["rejected"].push_back(o);
  }
  j["anomalies"] = ordered_json::array();
  for (const auto& a : res.anomalies) {
    ordered_json o = {{"case", case_text(a.behavior, a.congruences)}, {"stage", a.stage}, {"detail", a.detail}};
    if (opts.dump_csp && a.system) o["csp"] = csp(*a.system);
    j["anomalies"].push_back(o);
  }
  if (opts.dump_csp) {
    for (std::size_t i = 0; i < res.families.size(); ++i) j["families"][i]["csp"] = csp(res.families[i].system);
  }
  return j.dump(2) + "\n";
}

std::string report_text(const SearchResult& res, const ReportOptions& opts) {
  std::ostringstream out;
  out << format(res.recurrence) << "\nperiod " << res.m << ": " << res.cases << " cases, " << res.families.size()
      << " families, " << res.rejected.size() << " rejected, " << res.anomalies.size() << " anomalies\n";
  if (res.families.empty()) out << "no families found\n";
  for (std::size_t i = 0; i < res.families.size(); ++i) {
    const SolutionFamily& f = res.families[i];
    const SymbolPool& pool = *f.pool;
    out << "\nfamily " << i + 1 << ": " << to_string(f.behavior);
    if (!f.congruences.entries.empty()) out << " | " << f.congruences.to_string(pool);
    out << "\n  unpacked:\n";
    for (int r = 0; r < f.m; ++r) {
      out << "    " << f.unpacked[static_cast<std::size_t>(r)].to_string(pool, f.m, r) << "    ["
          << f.structure.labels[static_cast<std::size_t>(r)] << "]\n";
    }
    out << "  constraints:\n";
    for (const auto& c : f.system.constraints) out << "    " << c.to_string(pool) << "\n";
    out << "  witness:";
    for (const auto& [id, v] : f.witness()) out << " " << pool.name(id) << "=" << v.get_str();
    out << "\n  eventual:\n";
    for (const auto& l : lines(f.eventual.to_string(f.recurrence.name))) out << "    " << l << "\n";
    out << "  initial condition: " << f.symbolic_ic.to_string(f.recurrence.name) << "\n";
    for (const auto& c : f.symbolic_ic.constraint_strings(f.recurrence.name)) out << "    with " << c << "\n";
    out << "  sample:";
    for (const auto& v : f.sample_ic) out << " " << v.get_str();
    out << "\n  verified " << f.verified_terms << " terms\n";
    if (opts.trace) {
      for (const auto& t : f.trace) out << "  trace: " << t << "\n";
    }
    if (opts.dump_csp) out << constraint_system_json(f.system) << "\n";
  }
  if (opts.mod_shift) {
    auto classes = canonicalize_mod_shift(res.families);
    out << "\n" << classes.size() << " classes modulo shifting ("
        << behavior_representatives(res.families).size() << " families with a least-rotation behavior)\n";
    for (const auto& cls : classes) {
      out << "  " << res.families[cls.front()].key << ":";
      for (auto i : cls) out << " " << i + 1;
      out << "\n";
    }
  }
  if (!res.anomalies.empty()) {
    out << "\nanomalies:\n";
    for (const auto& a : res.anomalies) {
      out << "  " << case_text(a.behavior, a.congruences) << ": " << a.stage << ": " << a.detail << "\n";
      if (opts.dump_csp && a.system) out << constraint_system_json(*a.system) << "\n";
    }
  }
  if (opts.dump_csp || opts.trace) {
    out << "\nrejected:\n";
    for (const auto& r : res.rejected) {
      out << "  " << case_text(r.behavior, r.congruences) << ": " << r.stage << ": " << r.reason << "\n";
      if (opts.dump_csp && r.system) out << constraint_system_json(*r.system) << "\n";
      if (opts.trace) {
        for (const auto& t : r.trace) out << "    trace: " << t << "\n";
      }
    }
  }
  return out.str();
}

PRSystem parse_prs_json(const std::string& text) {
  PRSystem sys;
  try {
    auto j = nlohmann::json::parse(text);
    sys.m = j.at("m").get<int>();
    sys.d = j.value("d", std::int64_t{1});
    for (const auto& p : j.at("inhomog")) {
      std::vector<BigInt> c;
      for (const auto& x : p) c.emplace_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()));
      sys.inhomog.emplace_back(c, PolyVar::K);
    }
    for (const auto& t : j.at("coeffs")) {
      if (t.size() != 4) throw std::invalid_argument("coefficient entries are [i, lag, j, alpha]");
      PRTerm term;
      term.i = t[0].get<int>();
      term.lag = t[1].get<std::int64_t>();
      term.j = t[2].get<int>();
      term.alpha = BigInt(t[3].get<long>());
      sys.coeffs.push_back(term);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad system JSON: ") + e.what());
  }
  validate(sys);
  return sys;
}

std::string growth_json(const PRSystem& sys, const GrowthResult& g) {
  ordered_json comps = ordered_json::array();
  for (int r = 0; r < sys.m; ++r) {
    const auto c = static_cast<std::size_t>(g.class_of[static_cast<std::size_t>(r)]);
    comps.push_back({{"component", r},
                     {"degree", degree_to_string(g.degree[static_cast<std::size_t>(r)])},
                     {"class", g.class_of[static_cast<std::size_t>(r)]},
                     {"case", to_string(g.class_case[c])},
                     {"in_w", static_cast<bool>(g.in_w[static_cast<std::size_t>(r)])}});
  }
  return ordered_json{{"m", sys.m}, {"components", comps}}.dump(2) + "\n";
}

}  // namespace hofsearch
