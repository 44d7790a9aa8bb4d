#include "lvk/monoid.hpp"

#include <algorithm>

#include "lvk/error.hpp"

namespace lvk {

GaussDiagram concat(const GaussDiagram& d1, const GaussDiagram& d2) {
  std::vector<Endpoint> seq(d1.endpoints().begin(), d1.endpoints().end());
  const auto shift = static_cast<std::uint32_t>(d1.crossings());
  for (const Endpoint& e : d2.endpoints()) seq.push_back({e.chord + shift, e.role});
  std::vector<int> signs;
  signs.reserve(d1.crossings() + d2.crossings());
  for (const Chord& c : d1.chords()) signs.push_back(c.sign);
  for (const Chord& c : d2.chords()) signs.push_back(c.sign);
  return GaussDiagram::canonical_from(seq, signs);
}

std::vector<CutPoint> cut_points(const GaussDiagram& d) {
  // open[g] = number of chords with one endpoint <= g and the other > g.
  std::vector<int> delta(d.length() + 2, 0);
  for (const Chord& c : d.chords()) {
    const auto [lo, hi] = std::minmax(c.over_pos, c.under_pos);
    delta[lo] += 1;
    delta[hi] -= 1;
  }
  std::vector<CutPoint> cuts;
  int open = 0;
  for (std::size_t gap = 0; gap <= d.length(); ++gap) {
    open += delta[gap];
    if (open == 0) cuts.push_back({gap});
  }
  return cuts;
}

namespace {

bool is_cut(const GaussDiagram& d, std::size_t gap) {
  for (const Chord& c : d.chords()) {
    const auto [lo, hi] = std::minmax(c.over_pos, c.under_pos);
    if (lo <= gap && hi > gap) return false;
  }
  return gap <= d.length();
}

}  // namespace

std::pair<GaussDiagram, GaussDiagram> split_at(const GaussDiagram& d, CutPoint c) {
  if (!is_cut(d, c.gap)) throw Error(ErrorCode::NotACutPoint, "gap " + std::to_string(c.gap) + " is spanned by a chord");
  std::vector<int> signs;
  for (const Chord& ch : d.chords()) signs.push_back(ch.sign);
  const auto all = d.endpoints();
  const auto left = all.first(c.gap);
  const auto right = all.subspan(c.gap);
  return {GaussDiagram::canonical_from(left, signs), GaussDiagram::canonical_from(right, signs)};
}

bool is_diagram_decomposable(const GaussDiagram& d) {
  for (const CutPoint& c : cut_points(d)) {
    if (c.gap != 0 && c.gap != d.length()) return true;
  }
  return false;
}

}  // namespace lvk
