#pragma once

// Budget-bounded exploration of move orbits. Nothing here decides knot
// equivalence in general: every negative or empty result is reported
// together with the budget that produced it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lvk/gauss.hpp"
#include "lvk/invariants.hpp"
#include "lvk/monoid.hpp"
#include "lvk/moves.hpp"

namespace lvk {

struct Budget {
  std::size_t max_crossings;
  std::size_t max_states;
  std::size_t max_depth;

  friend bool operator==(const Budget&, const Budget&) = default;
};

inline constexpr std::size_t kDefaultMaxStates = 1'000'000;
inline constexpr std::size_t kDefaultMaxDepth = 16;

/// max_crossings = (largest input crossing number) + 2, 10^6 states, depth 16.
Budget default_budget(const GaussDiagram& a);
Budget default_budget(const GaussDiagram& a, const GaussDiagram& b);

/// Throws lvk::Error(InvalidBudget) unless every bound is at least 1.
void validate(const Budget& b);

/// 16 hex digits of FNV-1a-64 over the serialized canonical form.
std::string fingerprint(const GaussDiagram& d);
std::uint64_t fingerprint_value(const GaussDiagram& d);

struct PathStep {
  MoveEvent move;
  GaussDiagram result;
};

struct DistinctWitness {
  std::string invariant;  // "odd_writhe", "coloring_matrix" or "commutator"
  std::string structure;  // empty for odd_writhe
  std::size_t a = 0, b = 0;
  std::int64_t left = 0, right = 0;
};

struct SearchStats {
  std::size_t states_visited = 0;
  std::size_t forward_frontier = 0;
  std::size_t backward_frontier = 0;
  std::size_t depth = 0;
  std::string stop_reason;  // "met", "max_states", "max_depth", "orbit_exhausted", "invariant", "identical"
};

struct Verdict {
  enum class Outcome { Equivalent, Distinct, Inconclusive };

  Outcome outcome = Outcome::Inconclusive;
  std::vector<PathStep> path;               // Equivalent
  std::optional<DistinctWitness> witness;   // Distinct
  Budget budget{};
  SearchStats stats;
  double wall_ms = 0.0;
};

const char* to_string(Verdict::Outcome o) noexcept;

/// Applies every step of `path` to `start`, returning the final diagram.
/// Throws lvk::Error(IllegalMove) if a step does not apply.
GaussDiagram replay(const GaussDiagram& start, const std::vector<PathStep>& path);

/// First differing invariant among odd writhe and the coloring matrices over
/// `catalog`, if any.
std::optional<DistinctWitness> distinguish(const GaussDiagram& d1, const GaussDiagram& d2,
                                           const std::vector<FiniteBiquandle>& catalog);

/// Bidirectional breadth-first search over single moves within the budget.
/// A Distinct verdict is only ever produced from move-invariant quantities.
Verdict equivalent_within(const GaussDiagram& d1, const GaussDiagram& d2, const Budget& b,
                          const std::vector<FiniteBiquandle>& catalog = default_catalog(),
                          const MoveRules& rules = MoveRules::standard());

struct GenusEstimate {
  int genus;
  GaussDiagram certificate;
  SearchStats stats;
};

/// Smallest supporting genus among the visited diagrams: an upper bound for
/// the genus of the class, valid only for the given budget.
GenusEstimate min_genus_in_orbit(const GaussDiagram& d, const Budget& b,
                                 const MoveRules& rules = MoveRules::standard());

/// Commutator witnesses over `catalog` first, then a search for a path
/// between A#B and B#A.
Verdict commute_check(const GaussDiagram& a, const GaussDiagram& b, const Budget& budget,
                      const std::vector<FiniteBiquandle>& catalog,
                      const MoveRules& rules = MoveRules::standard());

enum class PartStatus { Nontrivial, Unknown };
const char* to_string(PartStatus s) noexcept;

struct Decomposition {
  GaussDiagram representative;
  CutPoint cut;
  GaussDiagram left, right;
  PartStatus left_status, right_status;
};

struct PrimeScanReport {
  std::vector<Decomposition> decompositions;  // empty: none found within budget
  SearchStats stats;
  Budget budget{};
};

/// Visits the orbit and lists representatives that split into two parts,
/// neither of which reduces to the trivial knot by crossing-reducing moves
/// and R3. Parts are certified nontrivial when an invariant differs from
/// the trivial knot's.
PrimeScanReport prime_scan(const GaussDiagram& d, const Budget& b,
                           const MoveRules& rules = MoveRules::standard());

/// True iff crossing-reducing moves and R3 reach the empty diagram within
/// `max_states` visited diagrams.
bool reduces_to_trivial(const GaussDiagram& d, std::size_t max_states = 20000,
                        const MoveRules& rules = MoveRules::standard());

}  // namespace lvk
