#include "lvk/report.hpp"

namespace lvk::report {

namespace {

const char* sign_str(int s) { return s > 0 ? "+" : "-"; }
const char* role_str(Role r) { return r == Role::Over ? "O" : "U"; }

}  // namespace

json move_json(const MoveEvent& m) {
  json j{{"kind", to_string(kind_of(m))}};
  std::visit(
      [&](const auto& mv) {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, R1Insert>) {
          j["gap"] = mv.gap;
          j["sign"] = sign_str(mv.sign);
          j["first"] = role_str(mv.first);
        } else if constexpr (std::is_same_v<T, R1Remove>) {
          j["chord"] = mv.chord;
        } else if constexpr (std::is_same_v<T, R2Insert>) {
          j["gaps"] = {mv.gap1, mv.gap2};
          j["first"] = role_str(mv.first_role);
          j["pairing"] = mv.crossed ? "crossed" : "parallel";
          j["sign"] = sign_str(mv.sign);
        } else if constexpr (std::is_same_v<T, R2Remove>) {
          j["chords"] = {mv.first, mv.second};
        } else {
          j["pairs"] = {mv.pairs[0], mv.pairs[1], mv.pairs[2]};
        }
      },
      m);
  return j;
}

json budget_json(const Budget& b) {
  return {{"max_crossings", b.max_crossings}, {"max_states", b.max_states}, {"max_depth", b.max_depth}};
}

json matrix_json(const ColoringMatrix& m) {
  json rows = json::array();
  for (std::size_t a = 0; a < m.order(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < m.order(); ++b) row.push_back(m.at(a, b));
    rows.push_back(std::move(row));
  }
  return rows;
}

json structure_json(const FiniteBiquandle& x) {
  return {{"name", x.name()},
          {"order", x.order()},
          {"kind", x.kind() == StructureKind::Quandle ? "quandle" : "biquandle"}};
}

json genus_json(const GaussDiagram& d) {
  const RibbonGraph rg = build_band_surface(d);
  const BoundaryCount bc = boundary_components(rg);
  return {{"code", serialize(d)},
          {"chi", euler_characteristic(rg)},
          {"boundary_total", bc.total},
          {"boundary_distinguished", bc.distinguished},
          {"genus", supporting_genus(d)}};
}

json verdict_json(const Verdict& v) {
  json j{{"verdict", to_string(v.outcome)}};
  if (v.outcome == Verdict::Outcome::Equivalent) {
    json path = json::array();
    for (const PathStep& s : v.path) {
      json step = move_json(s.move);
      step["result"] = serialize(s.result);
      path.push_back(std::move(step));
    }
    j["path"] = std::move(path);
  }
  if (v.witness) {
    const DistinctWitness& w = *v.witness;
    json wj{{"invariant", w.invariant}, {"left", w.left}, {"right", w.right}};
    if (!w.structure.empty()) {
      wj["structure"] = w.structure;
      wj["entry"] = {w.a, w.b};
    }
    j["witness"] = std::move(wj);
  }
  j["budget"] = budget_json(v.budget);
  j["states_visited"] = v.stats.states_visited;
  j["search"] = {{"stop_reason", v.stats.stop_reason},
                 {"depth", v.stats.depth},
                 {"forward_frontier", v.stats.forward_frontier},
                 {"backward_frontier", v.stats.backward_frontier}};
  j["wall_ms"] = v.wall_ms;
  return j;
}

json invariants_json(const GaussDiagram& d, const std::vector<FiniteBiquandle>& structures) {
  json mats = json::array();
  for (const FiniteBiquandle& x : structures) {
    json e = structure_json(x);
    e["matrix"] = matrix_json(coloring_matrix(d, x));
    mats.push_back(std::move(e));
  }
  return {{"code", serialize(d)}, {"crossings", d.crossings()}, {"odd_writhe", odd_writhe(d)}, {"coloring_matrices", mats}};
}

json prime_scan_json(const PrimeScanReport& r) {
  json list = json::array();
  for (const Decomposition& dec : r.decompositions) {
    list.push_back({{"representative", serialize(dec.representative)},
                    {"gap", dec.cut.gap},
                    {"left", serialize(dec.left)},
                    {"right", serialize(dec.right)},
                    {"left_status", to_string(dec.left_status)},
                    {"right_status", to_string(dec.right_status)}});
  }
  return {{"decompositions", list},
          {"finding", r.decompositions.empty() ? "no decomposition found within budget" : "decomposition found"},
          {"budget", budget_json(r.budget)},
          {"states_visited", r.stats.states_visited},
          {"stop_reason", r.stats.stop_reason}};
}

json min_genus_json(const GenusEstimate& g, const Budget& b) {
  return {{"genus", g.genus},
          {"certificate", serialize(g.certificate)},
          {"bound", "upper bound over visited diagrams"},
          {"budget", budget_json(b)},
          {"states_visited", g.stats.states_visited},
          {"stop_reason", g.stats.stop_reason}};
}

}  // namespace lvk::report
