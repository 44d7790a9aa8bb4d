#pragma once

// Open Gauss diagrams of long virtual knots.
//
// A diagram is a sequence of 2n endpoints along the oriented line, each
// endpoint being the over- or under-passage of one of n signed chords.
// Virtual crossings carry no data: two planar diagrams with the same open
// Gauss diagram differ by detour moves only.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lvk {

using Label = std::uint32_t;

enum class Role : std::uint8_t { Over, Under };

constexpr Role opposite(Role r) noexcept { return r == Role::Over ? Role::Under : Role::Over; }

/// One token of a Gauss code as written: role, label and crossing sign.
struct Token {
  Label label;
  Role role;
  int sign;
};

/// Position-ordered endpoint; `chord` is a dense index into GaussDiagram::chords().
struct Endpoint {
  std::uint32_t chord;
  Role role;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// A classical crossing. Positions are 1-based along the line.
struct Chord {
  Label label;
  int sign;
  std::size_t over_pos;
  std::size_t under_pos;

  friend bool operator==(const Chord&, const Chord&) = default;
};

class GaussDiagram {
public:
  GaussDiagram() = default;

  /// Validates and builds a diagram from written tokens. Throws lvk::Error
  /// (LabelArity, RoleClash, MalformedToken on sign disagreement).
  explicit GaussDiagram(std::span<const Token> tokens);

  /// Builds the canonical diagram for an endpoint sequence whose chord ids
  /// index into `signs`. The input must already be well formed.
  static GaussDiagram canonical_from(std::span<const Endpoint> sequence, std::span<const int> signs);

  std::size_t crossings() const noexcept { return chords_.size(); }
  std::size_t length() const noexcept { return sequence_.size(); }
  bool empty() const noexcept { return sequence_.empty(); }

  std::span<const Endpoint> endpoints() const noexcept { return sequence_; }
  std::span<const Chord> chords() const noexcept { return chords_; }

  /// Position-indexed accessors (1-based, matching the written code).
  const Endpoint& at(std::size_t pos) const { return sequence_[pos - 1]; }
  const Chord& chord_at(std::size_t pos) const { return chords_[at(pos).chord]; }
  std::size_t partner(std::size_t pos) const;

  std::optional<std::uint32_t> find(Label label) const noexcept;
  /// Throws lvk::Error(UnknownLabel).
  const Chord& chord_by_label(Label label) const;

  Label max_label() const noexcept;
  bool is_canonical() const noexcept;

  /// Compact byte string identifying the diagram exactly (labels included
  /// only through their first-appearance order); equal for equal canonical forms.
  std::string key() const;

  friend bool operator==(const GaussDiagram&, const GaussDiagram&) = default;

private:
  std::vector<Endpoint> sequence_;
  std::vector<Chord> chords_;
};

GaussDiagram parse_gauss_code(std::string_view text);
std::string serialize(const GaussDiagram& d);
GaussDiagram canonicalize(const GaussDiagram& d);

/// Negates every sign and swaps Over/Under at every endpoint.
GaussDiagram mirror(const GaussDiagram& d);

/// Reverses the orientation of the line: endpoint order is reversed and
/// crossing signs are kept (reversing both strands preserves the sign).
GaussDiagram reverse(const GaussDiagram& d);

/// True iff exactly one endpoint of `b` lies strictly between the endpoints of `a`.
bool linked(const GaussDiagram& d, Label a, Label b);

/// Number of chords interleaved with the chord at dense index `chord`.
std::size_t linked_count(const GaussDiagram& d, std::uint32_t chord);

/// Total order on canonical forms: by crossing count, then by key.
bool canonical_less(const GaussDiagram& a, const GaussDiagram& b);

/// Reads a code file: one code per line, '#' starts a comment line, blank
/// lines are ignored. Returns the raw code strings in file order.
std::vector<std::string> read_code_lines(const std::string& path);

}  // namespace lvk
