#pragma once

#include <hofsearch/numeric.hpp>
#include <hofsearch/recurrence.hpp>

#include <climits>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hofsearch {

/// Growth degree in {-inf} ∪ ℕ ∪ {inf}. -inf is the degree of an eventually
/// zero sequence, inf marks exponential growth.
using Degree = int;
inline constexpr Degree kDegNegInf = INT_MIN;
inline constexpr Degree kDegInf = INT_MAX;

std::string degree_to_string(Degree d);
/// d + 1 with inf + 1 = inf and -inf + 1 = 0.
Degree degree_increment(Degree d);

enum class LagKind { Concrete, SymbolicPositive };

/// alpha * a^(j)(k - lag) inside the equation for a^(i).
struct PRTerm {
  int i = 0;
  std::int64_t lag = 1;
  int j = 0;
  BigInt alpha;
  LagKind kind = LagKind::Concrete;
};

/// a^(i)(k) = P_i(k) + sum alpha * a^(j)(k - lag), components indexed 0..m-1.
struct PRSystem {
  int m = 0;
  std::int64_t d = 0;
  std::vector<IntPolynomial> inhomog;
  std::vector<PRTerm> coeffs;
};

/// Throws std::invalid_argument when the system is malformed or violates the
/// positivity conditions (alpha >= 1, P_i eventually nonnegative, lags in 1..d).
void validate(const PRSystem& sys);

struct WeightedDigraph {
  int n = 0;
  std::map<std::pair<int, int>, BigInt> arcs;

  bool has_arc(int i, int j) const { return arcs.count({i, j}) > 0; }
  std::vector<int> successors(int i) const;
};

/// Arc i -> j with weight sum over lags of |alpha_{i,l,j}|.
WeightedDigraph build_graph(const PRSystem& sys);

/// Every simple directed cycle, each listed from its smallest vertex.
std::vector<std::vector<int>> simple_cycles(const WeightedDigraph& g);

enum class GrowthCase { PolyFromInhomog, CyclePlusOne, Inherited, Exponential };

std::string to_string(GrowthCase c);

struct GrowthResult {
  std::vector<Degree> degree;        // per component
  std::vector<int> class_of;         // per component
  std::vector<GrowthCase> class_case;  // per class
  std::vector<bool> class_is_cycle;    // per class
  std::vector<Degree> class_pre;       // per class, degree before the cycle increment
  std::vector<bool> in_w;              // per component
  int num_classes() const { return static_cast<int>(class_case.size()); }
};

enum class DeletionMode { AllOutgoing, CycleArcs };

/// Degree of every component assuming an eventually positive initial condition.
GrowthResult compute_growth(const PRSystem& sys, DeletionMode mode = DeletionMode::AllOutgoing);

enum class OracleVerdict { Poly, Exponential, Inconclusive };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Inconclusive;
  Degree degree = kDegNegInf;  // Poly only
};

inline constexpr int kOracleMaxDegree = 6;

/// ic[r] holds a^(r)(1..N). Requires N >= d + 1.
bool eventually_positive(const PRSystem& sys, const std::vector<std::vector<BigInt>>& ic);

/// Brute-force growth classification from generated terms. Throws
/// std::invalid_argument if the ic is not eventually positive or a lag is symbolic.
std::vector<OracleResult> empirical_growth_oracle(const PRSystem& sys, const std::vector<std::vector<BigInt>>& ic,
                                                  int horizon);

/// a^(r)(1..horizon) for every component.
std::vector<std::vector<BigInt>> generate_system(const PRSystem& sys, const std::vector<std::vector<BigInt>>& ic,
                                                 int horizon);

}  // namespace hofsearch
