#include "mjdef/completeness.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <tuple>

namespace mjdef {

const int kPow5[kRanks + 1] = {1, 5, 25, 125, 625, 3125, 15625, 78125, 390625, 1953125};

namespace {

// Bit 0: the suit decomposes into melds; bit 1: into melds plus one eye.
struct SuitTable {
  std::unique_ptr<std::uint8_t[]> bits{new std::uint8_t[kSuitCodes]};

  SuitTable() {
    // Every branch below removes tiles, so it refers to a smaller code that
    // has already been filled in.
    for (int code = 0; code < kSuitCodes; ++code) {
      int c[kRanks];
      int rest = code;
      int first = -1;
      for (int r = 0; r < kRanks; ++r) {
        c[r] = rest % 5;
        rest /= 5;
        if (first < 0 && c[r] > 0) first = r;
      }
      if (first < 0) {
        bits[code] = 1;
        continue;
      }
      std::uint8_t v = 0;
      const int r = first;
      // The leftmost tile is in a pong, a chow starting at it, or the eye.
      if (c[r] >= 3) v |= bits[code - 3 * kPow5[r]];
      if (r + 2 < kRanks && c[r + 1] > 0 && c[r + 2] > 0) {
        v |= bits[code - kPow5[r] - kPow5[r + 1] - kPow5[r + 2]];
      }
      if (c[r] >= 2 && (bits[code - 2 * kPow5[r]] & 1)) v |= 2;
      bits[code] = v;
    }
  }
};

const SuitTable& table() {
  static const SuitTable t;
  return t;
}

void enumerate(Counts& counts, int melds_left, bool need_eye, std::vector<std::array<Tile, 3>>& melds,
               std::array<Tile, 2>& eye, std::vector<Decomposition>& out) {
  int i = 0;
  while (i < kKinds && counts[i] == 0) ++i;
  if (i == kKinds) {
    if (melds_left == 0 && !need_eye) out.push_back(Decomposition{melds, eye});
    return;
  }
  const Tile t = Tile::from_index(i);
  if (need_eye && counts[i] >= 2) {
    counts[i] -= 2;
    eye = {t, t};
    enumerate(counts, melds_left, false, melds, eye, out);
    counts[i] += 2;
  }
  if (melds_left > 0 && counts[i] >= 3) {
    counts[i] -= 3;
    melds.push_back({t, t, t});
    enumerate(counts, melds_left - 1, need_eye, melds, eye, out);
    melds.pop_back();
    counts[i] += 3;
  }
  if (melds_left > 0 && t.rank <= 7 && counts[i + 1] > 0 && counts[i + 2] > 0) {
    --counts[i];
    --counts[i + 1];
    --counts[i + 2];
    melds.push_back({t, Tile::from_index(i + 1), Tile::from_index(i + 2)});
    enumerate(counts, melds_left - 1, need_eye, melds, eye, out);
    melds.pop_back();
    ++counts[i];
    ++counts[i + 1];
    ++counts[i + 2];
  }
}

void require_full(const Hand& hand) {
  if (!hand.is_full()) {
    throw std::invalid_argument("completeness needs a " + std::to_string(14 - 3 * hand.melds_fixed()) +
                                "-tile hand");
  }
}

}  // namespace

std::string to_string(const Decomposition& d) {
  std::string s;
  for (const auto& m : d.melds) s += "(" + to_string(m[0]) + to_string(m[1]) + to_string(m[2]) + ")";
  s += ";(" + to_string(d.eye[0]) + to_string(d.eye[1]) + ")";
  return s;
}

int suit_code(const Counts& counts, int colour) {
  int code = 0;
  for (int r = kRanks - 1; r >= 0; --r) code = code * 5 + counts[kRanks * colour + r];
  return code;
}

bool suit_melds_only(int code) { return table().bits[code] & 1; }
bool suit_melds_and_eye(int code) { return table().bits[code] & 2; }

bool complete_from_suits(const int codes[kColours], const int sizes[kColours]) {
  const auto& bits = table().bits;
  int eyes = 0;
  for (int c = 0; c < kColours; ++c) {
    switch (sizes[c] % 3) {
      case 0:
        if (!(bits[codes[c]] & 1)) return false;
        break;
      case 2:
        if (++eyes > 1 || !(bits[codes[c]] & 2)) return false;
        break;
      default:
        return false;
    }
  }
  return eyes == 1;
}

bool is_complete_counts(const Counts& counts) {
  int codes[kColours];
  int sizes[kColours];
  for (int c = 0; c < kColours; ++c) {
    codes[c] = suit_code(counts, c);
    sizes[c] = 0;
    for (int r = 0; r < kRanks; ++r) sizes[c] += counts[kRanks * c + r];
  }
  return complete_from_suits(codes, sizes);
}

bool is_complete(const Hand& hand) {
  require_full(hand);
  return is_complete_counts(hand.counts());
}

std::vector<Decomposition> decompositions(const Hand& hand) {
  require_full(hand);
  Counts counts = hand.counts();
  std::vector<std::array<Tile, 3>> melds;
  std::array<Tile, 2> eye{};
  std::vector<Decomposition> out;
  enumerate(counts, hand.melds_needed(), true, melds, eye, out);
  // Leftmost-tile branching can reach the same multiset of melds along
  // different paths only through identical pongs/chows; drop repeats.
  std::sort(out.begin(), out.end(), [](const Decomposition& a, const Decomposition& b) {
    return std::tie(a.melds, a.eye) < std::tie(b.melds, b.eye);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mjdef
