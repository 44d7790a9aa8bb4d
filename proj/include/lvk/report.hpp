#pragma once

// JSON encodings shared by the C API and the command-line tool.

#include "json.hpp"
#include "lvk/gauss.hpp"
#include "lvk/invariants.hpp"
#include "lvk/moves.hpp"
#include "lvk/search.hpp"
#include "lvk/surface.hpp"

namespace lvk::report {

using nlohmann::json;

json move_json(const MoveEvent& m);
json budget_json(const Budget& b);
json matrix_json(const ColoringMatrix& m);
json structure_json(const FiniteBiquandle& x);

/// {code, chi, boundary_total, boundary_distinguished, genus}
json genus_json(const GaussDiagram& d);

/// {verdict, path?, witness?, budget, states_visited, search, wall_ms}
json verdict_json(const Verdict& v);

json invariants_json(const GaussDiagram& d, const std::vector<FiniteBiquandle>& structures);
json prime_scan_json(const PrimeScanReport& r);
json min_genus_json(const GenusEstimate& g, const Budget& b);

}  // namespace lvk::report
