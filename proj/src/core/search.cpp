#include "lvk/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <set>
#include <unordered_map>

#include "lvk/error.hpp"
#include "lvk/surface.hpp"

namespace lvk {

Budget default_budget(const GaussDiagram& a) { return {a.crossings() + 2, kDefaultMaxStates, kDefaultMaxDepth}; }

Budget default_budget(const GaussDiagram& a, const GaussDiagram& b) {
  return {std::max(a.crossings(), b.crossings()) + 2, kDefaultMaxStates, kDefaultMaxDepth};
}

void validate(const Budget& b) {
  if (b.max_crossings < 1 || b.max_states < 1 || b.max_depth < 1) {
    throw Error(ErrorCode::InvalidBudget, "every budget bound must be at least 1");
  }
}

std::uint64_t fingerprint_value(const GaussDiagram& d) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(d)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint(const GaussDiagram& d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fingerprint_value(d)));
  return buf;
}

const char* to_string(Verdict::Outcome o) noexcept {
  switch (o) {
    case Verdict::Outcome::Equivalent: return "equivalent";
    case Verdict::Outcome::Distinct: return "distinct";
    case Verdict::Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(PartStatus s) noexcept { return s == PartStatus::Nontrivial ? "nontrivial" : "unknown"; }

GaussDiagram replay(const GaussDiagram& start, const std::vector<PathStep>& path) {
  GaussDiagram cur = canonicalize(start);
  for (const PathStep& step : path) cur = lvk::apply(cur, step.move);
  return cur;
}

std::optional<DistinctWitness> distinguish(const GaussDiagram& d1, const GaussDiagram& d2,
                                           const std::vector<FiniteBiquandle>& catalog) {
  const int j1 = odd_writhe(d1), j2 = odd_writhe(d2);
  if (j1 != j2) return DistinctWitness{"odd_writhe", "", 0, 0, j1, j2};
  for (const FiniteBiquandle& x : catalog) {
    const ColoringMatrix m1 = coloring_matrix(d1, x), m2 = coloring_matrix(d2, x);
    for (std::size_t a = 0; a < x.order(); ++a)
      for (std::size_t b = 0; b < x.order(); ++b)
        if (m1.at(a, b) != m2.at(a, b)) {
          return DistinctWitness{"coloring_matrix", x.name(), a, b, static_cast<std::int64_t>(m1.at(a, b)),
                                 static_cast<std::int64_t>(m2.at(a, b))};
        }
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Node {
  GaussDiagram diagram;
  std::string parent;  // key of the parent; empty for the root
  std::optional<MoveEvent> move;  // forward tree: parent -> node; backward tree: node -> parent
  std::size_t depth = 0;
  std::uint64_t fp = 0;
};

using Tree = std::unordered_map<std::string, Node>;

std::vector<std::string> sorted_by_fingerprint(const std::vector<std::string>& frontier, const Tree& tree) {
  std::vector<std::string> out = frontier;
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    const std::uint64_t fa = tree.at(a).fp, fb = tree.at(b).fp;
    return fa != fb ? fa < fb : a < b;
  });
  return out;
}

std::vector<PathStep> build_path(const Tree& forward, const Tree& backward, const std::string& meet) {
  std::vector<PathStep> steps;
  for (const Node* n = &forward.at(meet); n->move; n = &forward.at(n->parent)) steps.push_back({*n->move, n->diagram});
  std::reverse(steps.begin(), steps.end());
  for (const Node* n = &backward.at(meet); n->move; n = &backward.at(n->parent)) {
    steps.push_back({*n->move, backward.at(n->parent).diagram});
  }
  return steps;
}

}  // namespace

Verdict equivalent_within(const GaussDiagram& d1, const GaussDiagram& d2, const Budget& b,
                          const std::vector<FiniteBiquandle>& catalog, const MoveRules& rules) {
  validate(b);
  const auto start = Clock::now();
  Verdict v;
  v.budget = b;
  const GaussDiagram c1 = canonicalize(d1), c2 = canonicalize(d2);

  auto finish = [&](Verdict::Outcome o, std::string reason) {
    v.outcome = o;
    v.stats.stop_reason = std::move(reason);
    v.wall_ms = elapsed_ms(start);
    return v;
  };

  if (c1 == c2) {
    v.stats.states_visited = 1;
    return finish(Verdict::Outcome::Equivalent, "identical");
  }
  // Differing invariants mean no path exists at any budget, so the search
  // could only end Inconclusive; check them first.
  if (auto w = distinguish(c1, c2, catalog)) {
    v.witness = std::move(w);
    return finish(Verdict::Outcome::Distinct, "invariant");
  }

  Tree trees[2];
  std::vector<std::string> frontiers[2];
  std::size_t depths[2] = {0, 0};
  const GaussDiagram* roots[2] = {&c1, &c2};
  for (int s = 0; s < 2; ++s) {
    const std::string k = roots[s]->key();
    trees[s].emplace(k, Node{*roots[s], "", std::nullopt, 0, fingerprint_value(*roots[s])});
    frontiers[s].push_back(k);
  }
  std::size_t visited = 2;

  auto record_stats = [&] {
    v.stats.states_visited = visited;
    v.stats.forward_frontier = frontiers[0].size();
    v.stats.backward_frontier = frontiers[1].size();
    v.stats.depth = depths[0] + depths[1];
  };

  while (true) {
    const int side = frontiers[1].size() < frontiers[0].size() ? 1 : 0;
    if (frontiers[side].empty()) {
      record_stats();
      return finish(Verdict::Outcome::Inconclusive, "orbit_exhausted");
    }
    if (depths[0] + depths[1] + 1 > b.max_depth) {
      record_stats();
      return finish(Verdict::Outcome::Inconclusive, "max_depth");
    }
    Tree& own = trees[side];
    const Tree& other = trees[1 - side];
    std::vector<std::string> next;
    for (const std::string& key : sorted_by_fingerprint(frontiers[side], own)) {
      const GaussDiagram parent = own.at(key).diagram;
      for (MoveResult& r : enumerate_moves(parent, b.max_crossings, rules)) {
        std::string child = r.result.key();
        if (own.count(child)) continue;
        std::optional<MoveEvent> mv = side == 0 ? r.event : inverse(parent, r.event, rules);
        const std::uint64_t fp = fingerprint_value(r.result);
        own.emplace(child, Node{std::move(r.result), key, std::move(mv), depths[side] + 1, fp});
        ++visited;
        if (other.count(child)) {
          depths[side] += 1;
          v.path = build_path(trees[0], trees[1], child);
          frontiers[side] = std::move(next);
          record_stats();
          return finish(Verdict::Outcome::Equivalent, "met");
        }
        next.push_back(std::move(child));
        if (visited >= b.max_states) {
          frontiers[side] = std::move(next);
          record_stats();
          return finish(Verdict::Outcome::Inconclusive, "max_states");
        }
      }
    }
    frontiers[side] = std::move(next);
    depths[side] += 1;
  }
}

namespace {

// Plain breadth-first orbit walk; `visit` sees every diagram in BFS order.
template <typename Visit>
SearchStats walk_orbit(const GaussDiagram& d, const Budget& b, const MoveRules& rules, Visit&& visit) {
  validate(b);
  SearchStats stats;
  std::unordered_map<std::string, bool> seen;
  std::vector<GaussDiagram> frontier{canonicalize(d)};
  seen.emplace(frontier.front().key(), true);
  visit(frontier.front());
  std::size_t depth = 0;
  stats.stop_reason = "orbit_exhausted";
  while (!frontier.empty()) {
    if (depth + 1 > b.max_depth) {
      stats.stop_reason = "max_depth";
      break;
    }
    std::sort(frontier.begin(), frontier.end(), [](const GaussDiagram& x, const GaussDiagram& y) {
      const auto fx = fingerprint_value(x), fy = fingerprint_value(y);
      return fx != fy ? fx < fy : x.key() < y.key();
    });
    std::vector<GaussDiagram> next;
    bool full = false;
    for (const GaussDiagram& g : frontier) {
      for (MoveResult& r : enumerate_moves(g, b.max_crossings, rules)) {
        if (!seen.emplace(r.result.key(), true).second) continue;
        visit(r.result);
        next.push_back(std::move(r.result));
        if (seen.size() >= b.max_states) {
          full = true;
          break;
        }
      }
      if (full) break;
    }
    ++depth;
    frontier = std::move(next);
    if (full) {
      stats.stop_reason = "max_states";
      break;
    }
  }
  stats.states_visited = seen.size();
  stats.forward_frontier = frontier.size();
  stats.depth = depth;
  return stats;
}

}  // namespace

GenusEstimate min_genus_in_orbit(const GaussDiagram& d, const Budget& b, const MoveRules& rules) {
  GenusEstimate best{supporting_genus(d), canonicalize(d), {}};
  best.stats = walk_orbit(d, b, rules, [&](const GaussDiagram& g) {
    const int genus = supporting_genus(g);
    if (genus < best.genus) {
      best.genus = genus;
      best.certificate = g;
    }
  });
  return best;
}

Verdict commute_check(const GaussDiagram& a, const GaussDiagram& b, const Budget& budget,
                      const std::vector<FiniteBiquandle>& catalog, const MoveRules& rules) {
  validate(budget);
  const auto start = Clock::now();
  for (const FiniteBiquandle& x : catalog) {
    if (auto w = commutator_witness(a, b, x)) {
      Verdict v;
      v.outcome = Verdict::Outcome::Distinct;
      v.budget = budget;
      v.witness = DistinctWitness{"commutator", x.name(), w->a, w->b, static_cast<std::int64_t>(w->lhs),
                                  static_cast<std::int64_t>(w->rhs)};
      v.stats.stop_reason = "invariant";
      v.wall_ms = elapsed_ms(start);
      return v;
    }
  }
  Verdict v = equivalent_within(concat(a, b), concat(b, a), budget, catalog, rules);
  v.wall_ms = elapsed_ms(start);
  return v;
}

bool reduces_to_trivial(const GaussDiagram& d, std::size_t max_states, const MoveRules& rules) {
  if (d.empty()) return true;
  // With the cap at the starting crossing number only removals and R3 apply.
  std::unordered_map<std::string, bool> seen;
  std::deque<GaussDiagram> queue{canonicalize(d)};
  seen.emplace(queue.front().key(), true);
  const std::size_t cap = d.crossings();
  while (!queue.empty() && seen.size() < max_states) {
    const GaussDiagram g = std::move(queue.front());
    queue.pop_front();
    for (MoveResult& r : enumerate_moves(g, cap, rules)) {
      if (r.result.empty()) return true;
      if (seen.emplace(r.result.key(), true).second) queue.push_back(std::move(r.result));
    }
  }
  return false;
}

PrimeScanReport prime_scan(const GaussDiagram& d, const Budget& b, const MoveRules& rules) {
  PrimeScanReport report;
  report.budget = b;
  const auto& catalog = default_catalog();
  const GaussDiagram trivial;
  // Parts repeat across the orbit, so both answers are cached by key.
  std::unordered_map<std::string, PartStatus> statuses;
  auto status = [&](const GaussDiagram& part) {
    const std::string k = part.key();
    if (auto it = statuses.find(k); it != statuses.end()) return it->second;
    const PartStatus s = distinguish(part, trivial, catalog) ? PartStatus::Nontrivial : PartStatus::Unknown;
    statuses.emplace(k, s);
    return s;
  };
  // A part certified nontrivial cannot reduce, so the search is skipped.
  std::unordered_map<std::string, bool> reduces;
  auto reduces_cached = [&](const GaussDiagram& part) {
    if (status(part) == PartStatus::Nontrivial) return false;
    const std::string k = part.key();
    if (auto it = reduces.find(k); it != reduces.end()) return it->second;
    const bool r = reduces_to_trivial(part, 20000, rules);
    reduces.emplace(k, r);
    return r;
  };
  std::set<std::pair<std::string, std::string>> reported;
  report.stats = walk_orbit(d, b, rules, [&](const GaussDiagram& g) {
    for (const CutPoint& c : cut_points(g)) {
      if (c.gap == 0 || c.gap == g.length()) continue;
      auto [left, right] = split_at(g, c);
      const bool left_first = left.crossings() <= right.crossings();
      if (reduces_cached(left_first ? left : right) || reduces_cached(left_first ? right : left)) continue;
      if (!reported.emplace(left.key(), right.key()).second) continue;
      const PartStatus ls = status(left), rs = status(right);
      report.decompositions.push_back({g, c, std::move(left), std::move(right), ls, rs});
    }
  });
  return report;
}

}  // namespace lvk
