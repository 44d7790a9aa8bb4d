#pragma once

// The band-pass surface of a long virtual knot diagram, held as a ribbon
// graph: one disc per classical crossing, an annulus V around the point at
// infinity carrying both ends, and one untwisted band per arc of the knot.
// Virtual crossings contribute nothing (the two bands pass over each other).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lvk/gauss.hpp"

namespace lvk {

enum class Attachment : std::uint8_t { OverIn, OverOut, UnderIn, UnderOut, EndOut, EndIn };

struct HalfEdge {
  std::size_t vertex;
  std::size_t band;
  Attachment kind;
};

struct RibbonGraph {
  static constexpr std::size_t end_vertex = 0;

  /// Counterclockwise cyclic order of half-edge ids around each vertex.
  /// Vertex 0 is V; vertex c + 1 is the disc of chord c.
  std::vector<std::vector<std::size_t>> rotation;
  std::vector<HalfEdge> half_edges;
  /// For band k: {half-edge where the knot enters the band, half-edge where it leaves}.
  std::vector<std::array<std::size_t, 2>> bands;

  std::size_t crossing_discs() const noexcept { return rotation.empty() ? 0 : rotation.size() - 1; }
};

struct BoundaryCount {
  int total;
  int distinguished;
};

RibbonGraph build_band_surface(const GaussDiagram& d);

/// Discs count +1, bands -1, the annulus V counts 0.
int euler_characteristic(const RibbonGraph& rg);

/// Face tracing of the rotation system plus the outer circle of V.
BoundaryCount boundary_components(const RibbonGraph& rg);

/// Throws lvk::Error(NonIntegralGenus) if the counts are inconsistent.
int supporting_genus(const GaussDiagram& d);

/// Bands in the order the knot runs through them: 0, 1, ..., 2n.
std::vector<std::size_t> natural_traversal(const RibbonGraph& rg);

/// Reads the Gauss diagram off a band walk from V back to V. Throws
/// lvk::Error(InvalidTraversal).
GaussDiagram gauss_from_surface(const RibbonGraph& rg, std::span<const std::size_t> traversal);

}  // namespace lvk
