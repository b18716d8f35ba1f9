#include "mjdef/tiles.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace mjdef {

namespace {

constexpr char kColourLetters[kColours] = {'B', 'C', 'D'};

int colour_from_letter(char c) {
  switch (c) {
    case 'B': return 0;
    case 'C': return 1;
    case 'D': return 2;
    default: return -1;
  }
}

}  // namespace

std::string to_string(Tile t) {
  std::string s;
  s += kColourLetters[t.colour];
  s += static_cast<char>('0' + t.rank);
  return s;
}

Tile parse_tile(std::string_view token) {
  if (token.size() != 2) throw ParseError("malformed tile token '" + std::string(token) + "'");
  const int colour = colour_from_letter(token[0]);
  const char d = token[1];
  if (colour < 0 || d < '1' || d > '9') {
    throw ParseError("malformed tile token '" + std::string(token) + "'");
  }
  return Tile{colour, d - '0'};
}

std::optional<Tile> tile_succ(Tile t, int step) {
  if (t.rank + step > kRanks || t.rank + step < 1) return std::nullopt;
  return Tile{t.colour, t.rank + step};
}

int KnowledgeBase::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

bool KnowledgeBase::has_pair() const {
  return std::any_of(counts.begin(), counts.end(), [](std::uint8_t c) { return c >= 2; });
}

bool KnowledgeBase::has_meld() const {
  for (int i = 0; i < kKinds; ++i) {
    if (counts[i] >= 3) return true;
  }
  for (int c = 0; c < kColours; ++c) {
    for (int r = 0; r + 2 < kRanks; ++r) {
      const int i = kRanks * c + r;
      if (counts[i] && counts[i + 1] && counts[i + 2]) return true;
    }
  }
  return false;
}

Hand::Hand(std::vector<Tile> tiles, int melds_fixed) : tiles_(std::move(tiles)), melds_fixed_(melds_fixed) {
  if (melds_fixed < 0 || melds_fixed > 4) {
    throw std::invalid_argument("melds_fixed must be in 0..4");
  }
  for (const Tile& t : tiles_) {
    if (t.colour < 0 || t.colour >= kColours || t.rank < 1 || t.rank > kRanks) {
      throw std::invalid_argument("tile out of range");
    }
    if (++counts_[t.index()] > kMaxCopies) {
      throw std::invalid_argument("more than four copies of " + to_string(t));
    }
  }
  const int n = size();
  if (n != 13 - 3 * melds_fixed && n != 14 - 3 * melds_fixed) {
    throw std::invalid_argument("hand has " + std::to_string(n) + " tiles; expected " +
                                std::to_string(13 - 3 * melds_fixed) + " or " +
                                std::to_string(14 - 3 * melds_fixed));
  }
  std::sort(tiles_.begin(), tiles_.end());
}

Hand Hand::from_counts(const Counts& counts, int melds_fixed) {
  std::vector<Tile> tiles;
  for (int i = 0; i < kKinds; ++i) {
    for (int j = 0; j < counts[i]; ++j) tiles.push_back(Tile::from_index(i));
  }
  return Hand(std::move(tiles), melds_fixed);
}

int Hand::colour_mask() const {
  int mask = 0;
  for (const Tile& t : tiles_) mask |= 1 << t.colour;
  return mask;
}

Hand parse_hand(std::string_view text) {
  int melds_fixed = 0;
  if (const auto semi = text.find(';'); semi != std::string_view::npos) {
    std::string_view suffix = text.substr(semi + 1);
    while (!suffix.empty() && suffix.front() == ' ') suffix.remove_prefix(1);
    while (!suffix.empty() && suffix.back() == ' ') suffix.remove_suffix(1);
    if (suffix.size() != 3 || suffix[0] != 'k' || suffix[1] != '=' || suffix[2] < '0' ||
        suffix[2] > '4') {
      throw ParseError("malformed melds suffix '" + std::string(suffix) + "'");
    }
    melds_fixed = suffix[2] - '0';
    text = text.substr(0, semi);
  }
  std::vector<Tile> tiles;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '|' || c == '\t') {
      ++i;
      continue;
    }
    if (i + 1 >= text.size()) throw ParseError("truncated tile token at end of hand");
    tiles.push_back(parse_tile(text.substr(i, 2)));
    i += 2;
  }
  try {
    return Hand(std::move(tiles), melds_fixed);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string format_hand(const Hand& hand) {
  std::string s;
  for (const Tile& t : hand.tiles()) s += to_string(t);
  if (hand.melds_fixed() > 0) s += ";k=" + std::to_string(hand.melds_fixed());
  return s;
}

KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  int n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '|') {
      if (n == 0 || n % kRanks != 0) throw ParseError("misplaced '|' in knowledge base");
      continue;
    }
    if (c < '0' || c > '9') throw ParseError(std::string("unexpected character '") + c + "' in knowledge base");
    if (c > '4') throw ParseError(std::string("knowledge-base count ") + c + " exceeds 4");
    if (n >= kKinds) throw ParseError("knowledge base has more than 27 digits");
    kb.counts[n++] = static_cast<std::uint8_t>(c - '0');
  }
  if (n != kKinds) throw ParseError("knowledge base has " + std::to_string(n) + " digits; expected 27");
  return kb;
}

std::string format_kb(const KnowledgeBase& kb) {
  std::string s;
  for (int i = 0; i < kKinds; ++i) {
    if (i > 0 && i % kRanks == 0) s += '|';
    s += static_cast<char>('0' + kb.counts[i]);
  }
  return s;
}

KnowledgeBase kb_from_hand(const Hand& hand) { return kb_from_hand(hand, 0b111); }

KnowledgeBase kb_from_hand(const Hand& hand, int colour_mask) {
  KnowledgeBase kb;
  for (int i = 0; i < kKinds; ++i) {
    if (colour_mask & (1 << (i / kRanks))) {
      kb.counts[i] = static_cast<std::uint8_t>(kMaxCopies - hand.counts()[i]);
    }
  }
  return kb;
}

bool compatible(const Hand& hand, const KnowledgeBase& kb) {
  for (int i = 0; i < kKinds; ++i) {
    if (kb.counts[i] > kMaxCopies || hand.counts()[i] + kb.counts[i] > kMaxCopies) return false;
  }
  return true;
}

void require_compatible(const Hand& hand, const KnowledgeBase& kb) {
  for (int i = 0; i < kKinds; ++i) {
    if (hand.counts()[i] + kb.counts[i] > kMaxCopies) {
      throw std::invalid_argument("hand and knowledge base hold more than four copies of " +
                                  to_string(Tile::from_index(i)));
    }
  }
}

std::pair<Hand, KnowledgeBase> replace_tile(const Hand& hand, Tile out, Tile in,
                                            const KnowledgeBase& kb) {
  if (out == in) throw std::invalid_argument("replacement must change the tile");
  if (hand.multiplicity(out) == 0) throw std::invalid_argument(to_string(out) + " is not in the hand");
  if (kb[in] == 0) throw std::invalid_argument(to_string(in) + " is not available");
  Counts counts = hand.counts();
  --counts[out.index()];
  ++counts[in.index()];
  KnowledgeBase next = kb;
  --next.counts[in.index()];
  return {Hand::from_counts(counts, hand.melds_fixed()), next};
}

Hand permute_colours(const Hand& hand, const std::array<int, 3>& perm) {
  std::vector<Tile> tiles;
  for (const Tile& t : hand.tiles()) tiles.push_back(Tile{perm[t.colour], t.rank});
  return Hand(std::move(tiles), hand.melds_fixed());
}

KnowledgeBase permute_colours(const KnowledgeBase& kb, const std::array<int, 3>& perm) {
  KnowledgeBase out;
  for (int i = 0; i < kKinds; ++i) {
    const Tile t = Tile::from_index(i);
    out.counts[Tile{perm[t.colour], t.rank}.index()] = kb.counts[i];
  }
  return out;
}

}  // namespace mjdef
