#pragma once

// Classical Reidemeister moves on open Gauss diagrams. Detour moves (and the
// other purely virtual moves) are the identity at this representation.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lvk/gauss.hpp"

namespace lvk {

enum class MoveKind { R1Insert, R1Remove, R2Insert, R2Remove, R3 };

/// "R1_insert", "R1_remove", ...
const char* to_string(MoveKind kind) noexcept;

/// Kink inserted into gap `gap` (0..2n); `first` is the role of the earlier endpoint.
struct R1Insert {
  std::size_t gap;
  int sign;
  Role first;
  friend bool operator==(const R1Insert&, const R1Insert&) = default;
};

struct R1Remove {
  Label chord;
  friend bool operator==(const R1Remove&, const R1Remove&) = default;
};

/// Two new chords a, b. Gap `gap1` receives (a, b) with role `first_role`,
/// gap `gap2` >= gap1 receives the opposite role, as (a, b) when parallel
/// and (b, a) when crossed. sign(a) = `sign`, sign(b) = -`sign`.
struct R2Insert {
  std::size_t gap1;
  std::size_t gap2;
  Role first_role;
  bool crossed;
  int sign;
  friend bool operator==(const R2Insert&, const R2Insert&) = default;
};

struct R2Remove {
  Label first;
  Label second;
  friend bool operator==(const R2Remove&, const R2Remove&) = default;
};

/// Start positions (1-based, increasing) of the three adjacent endpoint pairs.
struct R3Move {
  std::array<std::size_t, 3> pairs;
  friend bool operator==(const R3Move&, const R3Move&) = default;
};

using MoveEvent = std::variant<R1Insert, R1Remove, R2Insert, R2Remove, R3Move>;

MoveKind kind_of(const MoveEvent& m) noexcept;

/// Change in crossing number caused by a move of this kind.
int crossing_delta(MoveKind kind) noexcept;

/// Orientation data of an R3 triangle read off an endpoint-pair triple.
struct R3Pattern {
  bool top_tm_first;
  bool mid_tm_first;
  bool bot_tb_first;
  std::array<int, 3> signs;  // tm, tb, mb

  R3Pattern swapped() const { return {!top_tm_first, !mid_tm_first, !bot_tb_first, signs}; }
  friend bool operator==(const R3Pattern&, const R3Pattern&) = default;
};

/// Legality tables for R2 and R3, loaded from the text format of
/// data/moves.table.
class MoveRules {
public:
  /// The shipped table (embedded at build time).
  static const MoveRules& standard();
  static MoveRules parse(std::string_view text);

  int version() const noexcept { return version_; }
  bool r2_allows(bool crossed, bool opposite_signs) const noexcept;
  std::span<const R3Pattern> r3_entries() const noexcept { return r3_; }
  /// Index of the table entry matching `p` or its swap.
  std::optional<std::size_t> r3_match(const R3Pattern& p) const noexcept;
  MoveRules without_r3_entry(std::size_t index) const;

private:
  int version_ = 0;
  bool r2_parallel_ = false;
  bool r2_crossed_ = false;
  std::vector<R3Pattern> r3_;
};

/// The embedded table text.
std::string_view standard_move_table_text() noexcept;

/// Reads the triangle pattern at three endpoint pairs, or nullopt if the
/// pairs do not form an R3 triangle (ignores the table).
std::optional<R3Pattern> r3_pattern_at(const GaussDiagram& d, const std::array<std::size_t, 3>& pairs);

struct MoveResult {
  MoveEvent event;
  GaussDiagram result;
};

/// Every single legal move, canonicalized, deduplicated by canonical form and
/// sorted by it. Results with more than `cap` crossings are dropped.
std::vector<MoveResult> enumerate_moves(const GaussDiagram& d, std::size_t cap,
                                        const MoveRules& rules = MoveRules::standard());

/// Throws lvk::Error(IllegalMove) when the site is missing or the pattern is not legal.
GaussDiagram apply(const GaussDiagram& d, const MoveEvent& m, const MoveRules& rules = MoveRules::standard());

/// The move that undoes `m`, expressed on canonicalize(apply(d, m)).
MoveEvent inverse(const GaussDiagram& d, const MoveEvent& m, const MoveRules& rules = MoveRules::standard());

std::string describe(const MoveEvent& m);

}  // namespace lvk
