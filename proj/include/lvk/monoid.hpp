#pragma once

// Concatenation of long diagrams and diagram-level decompositions.

#include <cstddef>
#include <utility>
#include <vector>

#include "lvk/gauss.hpp"

namespace lvk {

/// A gap (0..2n) between consecutive endpoints that no chord spans.
struct CutPoint {
  std::size_t gap;
  friend bool operator==(const CutPoint&, const CutPoint&) = default;
};

/// d1 followed by d2; the result is canonical.
GaussDiagram concat(const GaussDiagram& d1, const GaussDiagram& d2);

/// Unspanned gaps in increasing order; always contains 0 and 2n.
std::vector<CutPoint> cut_points(const GaussDiagram& d);

/// Throws lvk::Error(NotACutPoint).
std::pair<GaussDiagram, GaussDiagram> split_at(const GaussDiagram& d, CutPoint c);

/// True iff some cut point has chords strictly on both sides. This says
/// nothing about the knot class, only about this representative.
bool is_diagram_decomposable(const GaussDiagram& d);

}  // namespace lvk
