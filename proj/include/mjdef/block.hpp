// Knowledge-aware block deficiency: split the hand into KB-connected blocks,
// enumerate each block's quasi-decompositions, compress them to type tuples,
// join the per-block type sets and evaluate every global type in O(1).
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mjdef/tiles.hpp"

namespace mjdef {

struct Block {
  int colour = 0;
  std::vector<Tile> tiles;  // sorted, nonempty, single colour
  friend bool operator==(const Block&, const Block&) = default;
};

std::string to_string(const Block& b);

enum class PartKind : std::uint8_t { Meld, Pair, PChow };

struct Part {
  PartKind kind = PartKind::Meld;
  std::vector<Tile> tiles;  // sorted
  friend auto operator<=>(const Part&, const Part&) = default;
};

struct QDcmp {
  std::vector<Part> parts;       // sorted
  std::vector<Tile> remainder;   // sorted
  friend auto operator<=>(const QDcmp&, const QDcmp&) = default;
};

std::string to_string(const QDcmp& q);

struct TypeTuple {
  int m = 0;   // melds
  int n = 0;   // pmelds (pairs and completable pchows)
  int p = 0;   // pairs
  int e = 0;   // pairs that the KB cannot complete
  int re = 0;  // some remainder tile can become the eye
  int rm = 0;  // some remainder tile can become a meld
  int em = 0;  // eye and meld cannot both be grown from the remainder
  friend auto operator<=>(const TypeTuple&, const TypeTuple&) = default;
};

std::string to_string(const TypeTuple& t);

struct KbFlags {
  bool ke = false;  // the KB alone supplies a pair
  bool km = false;  // the KB alone supplies a meld
};

KbFlags kb_flags(const KnowledgeBase& kb);

// Type refined for knowledge-base consumption; computed per colour because
// holders of one colour compete for that colour's KB tiles only.
//   t.re, t.rm, t.em: evaluated on what the KB holds after the qDCMP's pmelds
//                     are completed (all of them, or all but the forced eye);
//   rmx: a remainder meld fits once one pair of this colour is kept as the eye
//        (left 0 when t.rm is already set, where it cannot matter);
//   ke:  this colour's KB still holds a pair after the completions.
struct RefinedType {
  TypeTuple t;
  int rmx = 0;
  int ke = 0;
  friend auto operator<=>(const RefinedType&, const RefinedType&) = default;
};

struct BlockOptions {
  // Evaluate types against the KB left after completing pmelds (exact up to
  // deficiency 4). When false, follow the plain per-block attribute model,
  // which treats each KB requirement in isolation.
  bool consumption_aware = true;
  // Skip qDCMPs holding a pchow whose every KB-available completion lies in
  // the block's own remainder (the chow with that tile dominates it).
  bool prune_remainder_completions = true;
  // Drop local types dominated in every attribute by another local type.
  bool dominance_pruning = false;
};

struct BlockStats {
  std::uint64_t blocks = 0;
  std::uint64_t local_types = 0;   // summed over blocks
  std::uint64_t global_types = 0;  // after the final join
};

// Partition of the hand into maximal KB-connected blocks, sorted by
// (colour, lowest rank).
std::vector<Block> kb_blocks(const Hand& hand, const KnowledgeBase& kb);

// Every qDCMP of the block, each listed once. Each pchow must be completable
// and at most one pair may be incompletable; with opts.consumption_aware the
// pmelds must moreover be completable together, except possibly one pair.
std::vector<QDcmp> enumerate_qdcmps(const Block& block, const KnowledgeBase& kb, const BlockOptions& opts = {});

// Attribute tuple of a qDCMP, each KB requirement checked in isolation.
TypeTuple type_of(const QDcmp& q, const Block& block, const KnowledgeBase& kb);

// Distinct types of the block's qDCMPs, sorted.
std::vector<TypeTuple> local_types(const Block& block, const KnowledgeBase& kb, const BlockOptions& opts = {});

// Pairwise combination of two type sets; result sorted and deduplicated.
std::vector<TypeTuple> join_types(const std::vector<TypeTuple>& a, const std::vector<TypeTuple>& b);

// Distinct refined types of one colour's tiles (possibly none) under kb.
std::vector<RefinedType> colour_types(const Hand& hand, int colour, const KnowledgeBase& kb,
                                      const BlockOptions& opts = {});
std::vector<RefinedType> join_refined(const std::vector<RefinedType>& a, const std::vector<RefinedType>& b);
int decide_refined(const RefinedType& t, bool km);

// Cost of a global type (kIncompletable when no completion exists).
int decide(const TypeTuple& t, bool ke, bool km);

// Accepts 14-3k and 13-3k hands.
int block_dfncy(const Hand& hand, const KnowledgeBase& kb, BlockStats* stats = nullptr,
                const BlockOptions& opts = {});

}  // namespace mjdef
