// Winning-hand test (melds plus one eye; seven pairs does not count) and
// decomposition enumeration.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "mjdef/tiles.hpp"

namespace mjdef {

struct Decomposition {
  std::vector<std::array<Tile, 3>> melds;  // canonical order
  std::array<Tile, 2> eye{};
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

std::string to_string(const Decomposition& d);

// Throws std::invalid_argument unless |hand| = 14 - 3k.
bool is_complete(const Hand& hand);
std::vector<Decomposition> decompositions(const Hand& hand);

// Unchecked fast path: counts must sum to 3*melds_needed + 2.
bool is_complete_counts(const Counts& counts);

// Per-suit lookup: a suit is encoded as sum(count[r] * 5^r) over ranks 0..8.
inline constexpr int kSuitCodes = 1953125;  // 5^9
extern const int kPow5[kRanks + 1];
int suit_code(const Counts& counts, int colour);
// True when the suit splits into melds only / melds plus exactly one eye.
bool suit_melds_only(int code);
bool suit_melds_and_eye(int code);
// Completeness of a hand given its three suit codes and suit sizes.
bool complete_from_suits(const int codes[kColours], const int sizes[kColours]);

}  // namespace mjdef
