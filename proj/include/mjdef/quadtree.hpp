// Exhaustive pre-decomposition search (the baseline), extended with the two
// stand-alone pchow actions so that knowledge-base-blocked chows do not hide
// cheaper pre-decompositions.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mjdef/tiles.hpp"

namespace mjdef {

// Five holders: 0..3 meld holders (meld, pmeld, single tile or empty) and
// holder 4 for the eye (pair, single tile or empty).
struct PDcmp {
  std::array<std::vector<Tile>, 5> holders;
};

// Minimal number of tiles borrowed from the knowledge base to complete every
// holder (pmelds completed, singles grown, empty holders seeded from a
// remainder tile or built from knowledge-base tiles alone), with knowledge-base
// consumption kept consistent across holders. kIncompletable when impossible.
int pdcmp_cost(const PDcmp& pdcmp, const KnowledgeBase& kb, const Hand& hand);

struct QuadtreeStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t bound_cuts = 0;
};

// Knowledge-aware deficiency by exhaustive search; exact. Accepts 14-3k and
// 13-3k hands (for the latter the result counts the extra draw).
int quadtree_dfncy(const Hand& hand, const KnowledgeBase& kb, QuadtreeStats* stats = nullptr);

}  // namespace mjdef
