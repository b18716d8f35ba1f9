#include "mjdef/oracle.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "mjdef/completeness.hpp"

namespace mjdef {

namespace {

// A state packs hand counts (3 bits each) into lo/mid and kb counts into
// mid/hi: 27 kinds x 3 bits x 2 = 162 bits.
struct State {
  std::uint64_t w[3] = {0, 0, 0};
  friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::uint64_t h = s.w[0] * 0x9E3779B97F4A7C15ULL;
    h ^= (s.w[1] + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2));
    h ^= (s.w[2] + 0x94D049BB133111EBULL + (h << 6) + (h >> 2));
    return static_cast<std::size_t>(h);
  }
};

void put(State& s, int slot, int value) {
  const int bit = 3 * slot;
  s.w[bit / 64] |= static_cast<std::uint64_t>(value) << (bit % 64);
  if (bit % 64 > 61) s.w[bit / 64 + 1] |= static_cast<std::uint64_t>(value) >> (64 - bit % 64);
}

int get(const State& s, int slot) {
  const int bit = 3 * slot;
  std::uint64_t v = s.w[bit / 64] >> (bit % 64);
  if (bit % 64 > 61) v |= s.w[bit / 64 + 1] << (64 - bit % 64);
  return static_cast<int>(v & 7);
}

State pack(const Counts& hand, const Counts& kb) {
  State s;
  for (int i = 0; i < kKinds; ++i) {
    put(s, i, hand[i]);
    put(s, kKinds + i, kb[i]);
  }
  return s;
}

void unpack(const State& s, Counts& hand, Counts& kb) {
  for (int i = 0; i < kKinds; ++i) {
    hand[i] = static_cast<std::uint8_t>(get(s, i));
    kb[i] = static_cast<std::uint8_t>(get(s, kKinds + i));
  }
}

// Visits every replace_tile successor of (hand, kb). The callback receives the
// successor and whether it is complete; returning true stops the scan.
template <typename F>
bool for_each_successor(const Counts& hand, const Counts& kb, F&& f) {
  int codes[kColours];
  int sizes[kColours];
  for (int c = 0; c < kColours; ++c) {
    codes[c] = suit_code(hand, c);
    sizes[c] = 0;
    for (int r = 0; r < kRanks; ++r) sizes[c] += hand[kRanks * c + r];
  }
  for (int out = 0; out < kKinds; ++out) {
    if (hand[out] == 0) continue;
    for (int in = 0; in < kKinds; ++in) {
      if (in == out || kb[in] == 0) continue;
      int c2[kColours] = {codes[0], codes[1], codes[2]};
      int s2[kColours] = {sizes[0], sizes[1], sizes[2]};
      c2[out / kRanks] -= kPow5[out % kRanks];
      --s2[out / kRanks];
      c2[in / kRanks] += kPow5[in % kRanks];
      ++s2[in / kRanks];
      const bool complete = complete_from_suits(c2, s2);
      if (f(out, in, complete)) return true;
    }
  }
  return false;
}

}  // namespace

int oracle_dfncy(const Hand& hand, const KnowledgeBase& kb, int cap) {
  if (!hand.is_full()) {
    throw std::invalid_argument("oracle_dfncy needs a " + std::to_string(14 - 3 * hand.melds_fixed()) +
                                "-tile hand");
  }
  if (cap < 0) throw std::invalid_argument("cap must be non-negative");
  require_compatible(hand, kb);
  if (is_complete_counts(hand.counts())) return 0;

  // Every replacement consumes one knowledge-base tile, so a state can only
  // occur at one BFS level; deduplication is per level.
  std::vector<State> frontier{pack(hand.counts(), kb.counts)};
  for (int level = 1; level <= cap; ++level) {
    const bool last = level == cap;
    std::unordered_set<State, StateHash> next;
    Counts h;
    Counts k;
    for (const State& s : frontier) {
      unpack(s, h, k);
      const bool found = for_each_successor(h, k, [&](int out, int in, bool complete) {
        if (complete) return true;
        if (!last) {
          --h[out];
          ++h[in];
          --k[in];
          next.insert(pack(h, k));
          ++h[out];
          --h[in];
          ++k[in];
        }
        return false;
      });
      if (found) return level;
    }
    if (last || next.empty()) break;
    frontier.assign(next.begin(), next.end());
  }
  return kIncompletable;
}

int oracle_dfncy13(const Hand& hand, const KnowledgeBase& kb, int cap) {
  if (hand.is_full()) {
    throw std::invalid_argument("oracle_dfncy13 needs a " + std::to_string(13 - 3 * hand.melds_fixed()) +
                                "-tile hand");
  }
  if (cap < 1) throw std::invalid_argument("cap must be at least 1 for a short hand");
  require_compatible(hand, kb);
  int best = kIncompletable;
  for (int t = 0; t < kKinds; ++t) {
    if (kb.counts[t] == 0) continue;
    Counts counts = hand.counts();
    ++counts[t];
    KnowledgeBase rest = kb;
    --rest.counts[t];
    // A draw can only help if it leaves room below the current best.
    const int sub_cap = std::min(cap, best - 1) - 1;
    if (sub_cap < 0) continue;
    const int d = oracle_dfncy(Hand::from_counts(counts, hand.melds_fixed()), rest, sub_cap);
    if (d != kIncompletable) best = std::min(best, d + 1);
  }
  return best;
}

int oracle_deficiency(const Hand& hand, const KnowledgeBase& kb, int cap) {
  return hand.is_full() ? oracle_dfncy(hand, kb, cap) : oracle_dfncy13(hand, kb, cap);
}

}  // namespace mjdef
