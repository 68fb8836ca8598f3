#include <hofsearch/evaluator.hpp>
#include <hofsearch/growth.hpp>
#include <hofsearch/recurrence.hpp>
#include <hofsearch/report.hpp>
#include <hofsearch/search.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hofsearch;

namespace {

/// "@path" reads the file, anything else is taken literally.
std::string text_or_file(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw std::runtime_error("cannot read " + arg.substr(1));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<BigInt> parse_list(const std::string& s) {
  std::vector<BigInt> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t[");
    auto e = item.find_last_not_of(" \t]");
    if (b == std::string::npos) continue;
    out.emplace_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for interleaved solutions of nested recurrences"};
  app.require_subcommand(1);

  std::string rec_text;
  std::string ic_text;
  std::int64_t count = 20;
  long default_value = 0;
  bool bfile = false;
  auto* eval = app.add_subcommand("eval", "Generate terms from an initial condition");
  eval->add_option("-r,--recurrence", rec_text, "Recurrence text or @file")->required();
  eval->add_option("--ic", ic_text, "Comma-separated initial condition")->required();
  eval->add_option("-n,--count", count, "Number of terms")->check(CLI::PositiveNumber);
  eval->add_option("--default", default_value, "Value at nonpositive indices");
  eval->add_flag("--bfile", bfile, "Print 'n a(n)' lines");

  std::string system_text;
  auto* growth = app.add_subcommand("growth", "Growth degrees of a positive recurrence system");
  growth->add_option("-s,--system", system_text, "System JSON or @file")->required();

  int period = 1;
  long bound = 64;
  std::int64_t verify = 200;
  bool mod_shift = false, strict = false, trace = false, dump_csp = false;
  std::size_t witnesses = 1;
  unsigned jobs = 0;
  std::string fmt = "text";
  std::vector<std::string> behaviors;
  std::int64_t max_ic = 0;
  auto* srch = app.add_subcommand("search", "Search one period for solution families");
  srch->add_option("-r,--recurrence", rec_text, "Recurrence text or @file")->required();
  srch->add_option("-m,--period", period, "Period")->required()->check(CLI::PositiveNumber);
  srch->add_option("--bound", bound, "Solver box bound")->check(CLI::PositiveNumber);
  srch->add_option("--verify", verify, "Terms checked per family")->check(CLI::PositiveNumber);
  srch->add_flag("--mod-shift", mod_shift, "Group families modulo index shift");
  srch->add_option("--witnesses", witnesses, "Witnesses per family")->check(CLI::PositiveNumber);
  srch->add_option("-j,--jobs", jobs, "Worker threads (0: all cores)");
  srch->add_option("--format", fmt, "Output format")->check(CLI::IsMember({"json", "text"}));
  srch->add_flag("--strict", strict, "Exit with status 2 if any anomaly is found");
  srch->add_flag("--trace-unpack", trace, "Include unpacking traces");
  srch->add_flag("--dump-csp", dump_csp, "Include constraint systems");
  srch->add_option("--behavior", behaviors, "Only these behavior vectors, e.g. SLCC");
  srch->add_option("--max-ic-length", max_ic, "Initial condition length cap");
  srch->add_option("--default", default_value, "Value at nonpositive indices");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      Recurrence rec = parse(text_or_file(rec_text));
      rec.default_value = default_value;
      Generated g = generate(rec, parse_list(ic_text), count);
      for (std::size_t i = 0; i < g.terms.size(); ++i) {
        if (bfile) std::cout << i + 1 << " ";
        std::cout << g.terms[i].get_str() << "\n";
      }
      if (g.death) {
        std::cerr << "sequence dies at n = " << g.death->index << " (" << to_string(g.death->reason) << ")\n";
        return 3;
      }
      return 0;
    }
    if (*growth) {
      PRSystem sys = parse_prs_json(text_or_file(system_text));
      std::cout << growth_json(sys, compute_growth(sys));
      return 0;
    }
    Recurrence rec = parse(text_or_file(rec_text));
    rec.default_value = default_value;
    SearchOptions opts;
    opts.bound = bound;
    opts.verify_terms = verify;
    opts.witnesses = witnesses;
    opts.jobs = jobs;
    opts.trace_unpack = trace;
    if (max_ic > 0) opts.max_ic_length = max_ic;
    for (const auto& b : behaviors) {
      BehaviorVector v = parse_behavior(b);
      if (static_cast<int>(v.size()) != period) throw std::invalid_argument("behavior " + b + " does not match the period");
      opts.behaviors.push_back(v);
    }
    SearchResult res = search(rec, period, opts);
    ReportOptions ro{mod_shift, dump_csp, trace};
    std::cout << (fmt == "json" ? report_json(res, ro) : report_text(res, ro));
    if (strict && !res.anomalies.empty()) return 2;
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
