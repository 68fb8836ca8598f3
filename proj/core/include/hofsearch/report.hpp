#pragma once

#include <hofsearch/constraints.hpp>
#include <hofsearch/growth.hpp>
#include <hofsearch/search.hpp>

#include <string>

namespace hofsearch {

struct ReportOptions {
  bool mod_shift = false;
  bool dump_csp = false;  // include constraint systems of rejected cases and anomalies
  bool trace = false;     // include unpacking traces
};

std::string report_json(const SearchResult& res, const ReportOptions& opts = {});
std::string report_text(const SearchResult& res, const ReportOptions& opts = {});

std::string constraint_system_json(const ConstraintSystem& sys);

/// {"m": 2, "d": 1, "inhomog": [[c0, c1, ...], ...], "coeffs": [[i, lag, j, alpha], ...]}
/// Throws std::invalid_argument on malformed input.
PRSystem parse_prs_json(const std::string& text);
std::string growth_json(const PRSystem& sys, const GrowthResult& g);

}  // namespace hofsearch
