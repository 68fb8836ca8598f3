#include <hofsearch/growth.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hofsearch {

std::string degree_to_string(Degree d) {
  if (d == kDegInf) return "inf";
  if (d == kDegNegInf) return "-inf";
  return std::to_string(d);
}

Degree degree_increment(Degree d) {
  if (d == kDegInf) return kDegInf;
  if (d == kDegNegInf) return 0;
  return d + 1;
}

std::string to_string(GrowthCase c) {
  switch (c) {
    case GrowthCase::PolyFromInhomog:
      return "poly-from-inhomog";
    case GrowthCase::CyclePlusOne:
      return "cycle-plus-one";
    case GrowthCase::Inherited:
      return "inherited";
    case GrowthCase::Exponential:
      return "exponential";
  }
  return "?";
}

void validate(const PRSystem& sys) {
  if (sys.m < 0 || static_cast<int>(sys.inhomog.size()) != sys.m) {
    throw std::invalid_argument("inhomog must have one polynomial per component");
  }
  for (const auto& p : sys.inhomog) {
    if (!p.eventually_nonnegative()) throw std::invalid_argument("inhomogeneous part is not eventually nonnegative");
  }
  for (const auto& t : sys.coeffs) {
    if (t.i < 0 || t.i >= sys.m || t.j < 0 || t.j >= sys.m) throw std::invalid_argument("component out of range");
    if (t.alpha < 1) throw std::invalid_argument("coefficients must be positive");
    if (t.kind == LagKind::Concrete && (t.lag < 1 || t.lag > sys.d)) throw std::invalid_argument("lag out of range");
  }
}

std::vector<int> WeightedDigraph::successors(int i) const {
  std::vector<int> out;
  for (auto it = arcs.lower_bound({i, 0}); it != arcs.end() && it->first.first == i; ++it) out.push_back(it->first.second);
  return out;
}

WeightedDigraph build_graph(const PRSystem& sys) {
  WeightedDigraph g;
  g.n = sys.m;
  for (const auto& t : sys.coeffs) {
    if (t.alpha == 0) continue;
    g.arcs[{t.i, t.j}] += abs(t.alpha);
  }
  return g;
}

std::vector<std::vector<int>> simple_cycles(const WeightedDigraph& g) {
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<bool> on_path(static_cast<std::size_t>(g.n), false);
  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (int w : g.successors(v)) {
      if (w == start) {
        cycles.push_back(path);
      } else if (w > start && !on_path[static_cast<std::size_t>(w)]) {
        on_path[static_cast<std::size_t>(w)] = true;
        path.push_back(w);
        dfs(start, w);
        path.pop_back();
        on_path[static_cast<std::size_t>(w)] = false;
      }
    }
  };
  for (int s = 0; s < g.n; ++s) {
    path = {s};
    on_path[static_cast<std::size_t>(s)] = true;
    dfs(s, s);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return cycles;
}

namespace {

std::vector<std::vector<bool>> closure(const WeightedDigraph& g) {
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [arc, w] : g.arcs) reach[static_cast<std::size_t>(arc.first)][static_cast<std::size_t>(arc.second)] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

}  // namespace

GrowthResult compute_growth(const PRSystem& sys, DeletionMode mode) {
  const int m = sys.m;
  const auto n = static_cast<std::size_t>(m);
  WeightedDigraph g = build_graph(sys);

  GrowthResult res;
  res.degree.assign(n, kDegNegInf);
  for (std::size_t i = 0; i < n; ++i) {
    res.degree[i] = sys.inhomog[i].is_zero() ? kDegNegInf : sys.inhomog[i].degree();
  }

  // W: vertices on a cycle with a heavy arc, or on at least two simple cycles.
  res.in_w.assign(n, false);
  std::vector<int> cycle_count(n, 0);
  for (const auto& cyc : simple_cycles(g)) {
    bool heavy = false;
    for (std::size_t a = 0; a < cyc.size(); ++a) {
      if (g.arcs.at({cyc[a], cyc[(a + 1) % cyc.size()]}) > 1) heavy = true;
    }
    for (int v : cyc) {
      ++cycle_count[static_cast<std::size_t>(v)];
      if (heavy) res.in_w[static_cast<std::size_t>(v)] = true;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (cycle_count[v] >= 2) res.in_w[v] = true;
  }

  WeightedDigraph gp = g;
  const auto reach_g = closure(g);
  for (const auto& [arc, w] : g.arcs) {
    auto [i, j] = arc;
    if (!res.in_w[static_cast<std::size_t>(i)]) continue;
    bool on_cycle = reach_g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (mode == DeletionMode::AllOutgoing || on_cycle) gp.arcs.erase(arc);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (res.in_w[v]) res.degree[v] = kDegInf;
  }

  // Equivalence classes: mutual reachability in G'. Ids follow smallest member.
  const auto reach = closure(gp);
  res.class_of.assign(n, -1);
  int classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (res.class_of[i] >= 0) continue;
    res.class_of[i] = classes;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) res.class_of[j] = classes;
    }
    ++classes;
  }
  const auto nc = static_cast<std::size_t>(classes);
  res.class_is_cycle.assign(nc, false);
  std::vector<Degree> own(nc, kDegNegInf);
  std::vector<std::vector<int>> succ(nc);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = static_cast<std::size_t>(res.class_of[i]);
    own[c] = std::max(own[c], res.degree[i]);
    if (reach[i][i]) res.class_is_cycle[c] = true;
  }
  for (const auto& [arc, w] : gp.arcs) {
    int a = res.class_of[static_cast<std::size_t>(arc.first)];
    int b = res.class_of[static_cast<std::size_t>(arc.second)];
    if (a != b) succ[static_cast<std::size_t>(a)].push_back(b);
  }

  // Process H from its sinks upward.
  res.class_pre.assign(nc, kDegNegInf);
  res.class_case.assign(nc, GrowthCase::PolyFromInhomog);
  std::vector<Degree> final_d(nc, kDegNegInf);
  std::vector<int> state(nc, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t c) {
    if (state[c] == 2) return;
    state[c] = 1;
    Degree from_succ = kDegNegInf;
    for (int s : succ[c]) {
      visit(static_cast<std::size_t>(s));
      from_succ = std::max(from_succ, final_d[static_cast<std::size_t>(s)]);
    }
    Degree pre = std::max(own[c], from_succ);
    res.class_pre[c] = pre;
    final_d[c] = res.class_is_cycle[c] ? degree_increment(pre) : pre;
    if (final_d[c] == kDegInf) {
      res.class_case[c] = GrowthCase::Exponential;
    } else if (res.class_is_cycle[c]) {
      res.class_case[c] = GrowthCase::CyclePlusOne;
    } else if (!succ[c].empty() && from_succ == final_d[c]) {
      res.class_case[c] = GrowthCase::Inherited;
    } else {
      res.class_case[c] = GrowthCase::PolyFromInhomog;
    }
    state[c] = 2;
  };
  for (std::size_t c = 0; c < nc; ++c) visit(c);
  for (std::size_t i = 0; i < n; ++i) res.degree[i] = final_d[static_cast<std::size_t>(res.class_of[i])];
  return res;
}

}  // namespace hofsearch
