#include "lvk/surface.hpp"

#include <algorithm>

#include "lvk/error.hpp"

namespace lvk {

namespace {

std::size_t slot(Attachment a) { return static_cast<std::size_t>(a); }

}  // namespace

RibbonGraph build_band_surface(const GaussDiagram& d) {
  const std::size_t n = d.crossings();
  const std::size_t len = d.length();
  RibbonGraph rg;
  rg.rotation.assign(n + 1, {});
  rg.bands.resize(len + 1);

  // attach[v][kind] = half-edge id, filled while laying the bands.
  std::vector<std::array<std::size_t, 6>> attach(n + 1);
  auto add = [&](std::size_t vertex, std::size_t band, Attachment kind) {
    const std::size_t id = rg.half_edges.size();
    rg.half_edges.push_back({vertex, band, kind});
    attach[vertex][slot(kind)] = id;
    return id;
  };

  // Band k runs from the passage at position k to the passage at k + 1;
  // positions 0 and 2n + 1 are the two ends on V.
  for (std::size_t k = 0; k <= len; ++k) {
    std::size_t tail, head;
    if (k == 0) {
      tail = add(RibbonGraph::end_vertex, k, Attachment::EndOut);
    } else {
      const Endpoint& e = d.at(k);
      tail = add(e.chord + 1, k, e.role == Role::Over ? Attachment::OverOut : Attachment::UnderOut);
    }
    if (k == len) {
      head = add(RibbonGraph::end_vertex, k, Attachment::EndIn);
    } else {
      const Endpoint& e = d.at(k + 1);
      head = add(e.chord + 1, k, e.role == Role::Over ? Attachment::OverIn : Attachment::UnderIn);
    }
    rg.bands[k] = {tail, head};
  }

  rg.rotation[RibbonGraph::end_vertex] = {attach[0][slot(Attachment::EndOut)], attach[0][slot(Attachment::EndIn)]};
  for (std::size_t c = 0; c < n; ++c) {
    const auto& a = attach[c + 1];
    if (d.chords()[c].sign > 0) {
      rg.rotation[c + 1] = {a[slot(Attachment::OverIn)], a[slot(Attachment::UnderIn)], a[slot(Attachment::OverOut)],
                            a[slot(Attachment::UnderOut)]};
    } else {
      rg.rotation[c + 1] = {a[slot(Attachment::OverIn)], a[slot(Attachment::UnderOut)], a[slot(Attachment::OverOut)],
                            a[slot(Attachment::UnderIn)]};
    }
  }
  return rg;
}

int euler_characteristic(const RibbonGraph& rg) {
  return static_cast<int>(rg.crossing_discs()) - static_cast<int>(rg.bands.size());
}

BoundaryCount boundary_components(const RibbonGraph& rg) {
  const std::size_t h = rg.half_edges.size();
  std::vector<std::size_t> next_ccw(h), other_end(h);
  for (const auto& cycle : rg.rotation) {
    for (std::size_t i = 0; i < cycle.size(); ++i) next_ccw[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  for (const auto& band : rg.bands) {
    other_end[band[0]] = band[1];
    other_end[band[1]] = band[0];
  }
  std::vector<bool> seen(h, false);
  int faces = 0;
  for (std::size_t start = 0; start < h; ++start) {
    if (seen[start]) continue;
    ++faces;
    for (std::size_t x = start; !seen[x]; x = next_ccw[other_end[x]]) seen[x] = true;
  }
  // V is an annulus: its outer circle is one more boundary component, and
  // it is the only one touching the outer circle.
  return {faces + 1, 1};
}

int supporting_genus(const GaussDiagram& d) {
  const RibbonGraph rg = build_band_surface(d);
  const int chi = euler_characteristic(rg);
  const int c = boundary_components(rg).total;
  const int twice = 2 - chi - c;
  if (twice < 0 || twice % 2 != 0) {
    throw Error(ErrorCode::NonIntegralGenus, "2 - chi - c = " + std::to_string(twice) + " for " + serialize(d));
  }
  return twice / 2;
}

std::vector<std::size_t> natural_traversal(const RibbonGraph& rg) {
  std::vector<std::size_t> t(rg.bands.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = k;
  return t;
}

GaussDiagram gauss_from_surface(const RibbonGraph& rg, std::span<const std::size_t> traversal) {
  auto fail = [](const std::string& why) { return Error(ErrorCode::InvalidTraversal, why); };
  if (traversal.size() != rg.bands.size()) throw fail("traversal must visit every band exactly once");
  std::vector<bool> used(rg.bands.size(), false);
  std::vector<int> passages(rg.rotation.size(), 0);
  std::vector<Token> tokens;

  for (std::size_t step = 0; step < traversal.size(); ++step) {
    const std::size_t b = traversal[step];
    if (b >= rg.bands.size() || used[b]) throw fail("band visited twice or out of range");
    used[b] = true;
    const HalfEdge& tail = rg.half_edges[rg.bands[b][0]];
    const HalfEdge& head = rg.half_edges[rg.bands[b][1]];
    if (step == 0 && tail.kind != Attachment::EndOut) throw fail("walk must leave V first");
    if (step + 1 == traversal.size()) {
      if (head.kind != Attachment::EndIn) throw fail("walk must end on V");
      break;
    }
    if (head.vertex == RibbonGraph::end_vertex) throw fail("walk returned to V early");
    // Pass straight through the disc: the opposite attachment in the rotation.
    const auto& rot = rg.rotation[head.vertex];
    if (rot.size() != 4) throw fail("crossing disc without four attachments");
    const auto it = std::find(rot.begin(), rot.end(), rg.bands[b][1]);
    const std::size_t i = static_cast<std::size_t>(it - rot.begin());
    const std::size_t through = rot[(i + 2) % 4];
    const std::size_t next = traversal[step + 1];
    if (next >= rg.bands.size() || rg.bands[next][0] != through) throw fail("walk does not pass straight through a crossing");
    const bool over = head.kind == Attachment::OverIn;
    if (!over && head.kind != Attachment::UnderIn) throw fail("band enters a disc through an outgoing attachment");
    // Sign: counterclockwise after over-in comes under-in (+) or under-out (-).
    const auto over_in = std::find_if(rot.begin(), rot.end(), [&](std::size_t x) {
      return rg.half_edges[x].kind == Attachment::OverIn;
    });
    const std::size_t oi = static_cast<std::size_t>(over_in - rot.begin());
    const int sign = rg.half_edges[rot[(oi + 1) % 4]].kind == Attachment::UnderIn ? 1 : -1;
    ++passages[head.vertex];
    tokens.push_back(Token{static_cast<Label>(head.vertex), over ? Role::Over : Role::Under, sign});
  }
  for (std::size_t v = 1; v < passages.size(); ++v) {
    if (passages[v] != 2) throw fail("crossing disc not passed exactly twice");
  }
  return canonicalize(GaussDiagram(tokens));
}

}  // namespace lvk
