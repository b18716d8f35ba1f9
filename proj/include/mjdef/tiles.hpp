// Tile, hand and knowledge-base model for the 108-tile (three suits, no
// honours) Mahjong variant.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mjdef {

inline constexpr int kColours = 3;
inline constexpr int kRanks = 9;
inline constexpr int kKinds = kColours * kRanks;
inline constexpr int kMaxCopies = 4;

// Sentinel cost used everywhere for "no completion exists".
inline constexpr int kIncompletable = 100;

// Per-kind multiplicities, indexed by 9*colour + rank - 1.
using Counts = std::array<std::uint8_t, kKinds>;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tile {
  int colour = 0;  // 0 = B (bamboo), 1 = C (character), 2 = D (dot)
  int rank = 1;    // 1..9

  constexpr int index() const { return kRanks * colour + rank - 1; }
  static constexpr Tile from_index(int i) { return Tile{i / kRanks, i % kRanks + 1}; }
  friend constexpr auto operator<=>(const Tile&, const Tile&) = default;
};

std::string to_string(Tile t);
Tile parse_tile(std::string_view token);

// (colour, rank + step) when that rank exists, otherwise nothing.
std::optional<Tile> tile_succ(Tile t, int step);

struct KnowledgeBase {
  Counts counts{};

  int operator[](int kind) const { return counts[kind]; }
  int operator[](Tile t) const { return counts[t.index()]; }
  int total() const;
  // Some kind with at least two copies (a pair can be drawn entirely from it).
  bool has_pair() const;
  // Some kind with at least three copies, or some chow with every tile available.
  bool has_meld() const;
  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

class Hand {
 public:
  Hand() = default;
  // Validates the 4-copy limit and the size rule |tiles| in {13-3k, 14-3k}.
  explicit Hand(std::vector<Tile> tiles, int melds_fixed = 0);
  static Hand from_counts(const Counts& counts, int melds_fixed = 0);

  const std::vector<Tile>& tiles() const { return tiles_; }
  const Counts& counts() const { return counts_; }
  int melds_fixed() const { return melds_fixed_; }
  int size() const { return static_cast<int>(tiles_.size()); }
  int multiplicity(Tile t) const { return counts_[t.index()]; }
  // True for the 14-3k size (a hand that can be complete); false for 13-3k.
  bool is_full() const { return size() == 14 - 3 * melds_fixed_; }
  // Number of melds the concealed tiles must still supply.
  int melds_needed() const { return 4 - melds_fixed_; }
  // Colours that occur in the hand, as a bitmask over {B, C, D}.
  int colour_mask() const;

  friend bool operator==(const Hand& a, const Hand& b) {
    return a.melds_fixed_ == b.melds_fixed_ && a.counts_ == b.counts_;
  }

 private:
  std::vector<Tile> tiles_;
  Counts counts_{};
  int melds_fixed_ = 0;
};

// Hand grammar: tokens <L><d> (L in B/C/D, d in 1..9), optionally separated by
// spaces or '|', with an optional ";k=<0..4>" suffix for consolidated melds.
Hand parse_hand(std::string_view text);
std::string format_hand(const Hand& hand);

// KB grammar: 27 digits 0..4, optionally with '|' after each group of nine.
KnowledgeBase parse_kb(std::string_view text);
std::string format_kb(const KnowledgeBase& kb);

// counts[t] = 4 - multiplicity(t, hand) for every kind.
KnowledgeBase kb_from_hand(const Hand& hand);
// The complement restricted to the colours selected by colour_mask.
KnowledgeBase kb_from_hand(const Hand& hand, int colour_mask);

bool compatible(const Hand& hand, const KnowledgeBase& kb);
// Throws std::invalid_argument when hand and kb together exceed 4 copies.
void require_compatible(const Hand& hand, const KnowledgeBase& kb);

// Replace one copy of `out` by `in`, drawing `in` from the knowledge base.
// The discarded tile is not returned to the knowledge base.
std::pair<Hand, KnowledgeBase> replace_tile(const Hand& hand, Tile out, Tile in,
                                            const KnowledgeBase& kb);

// Relabel colours: colour c becomes perm[c]. Used by invariance checks.
Hand permute_colours(const Hand& hand, const std::array<int, 3>& perm);
KnowledgeBase permute_colours(const KnowledgeBase& kb, const std::array<int, 3>& perm);

}  // namespace mjdef
