#include <doctest.h>

#include <numeric>
#include <random>

#include "../fixtures.hpp"
#include "mjdef/tiles.hpp"

using namespace mjdef;

TEST_CASE("tile order, index and successors") {
  CHECK(Tile{0, 1}.index() == 0);
  CHECK(Tile{1, 1}.index() == 9);
  CHECK(Tile{2, 9}.index() == 26);
  for (int i = 0; i < kKinds; ++i) CHECK(Tile::from_index(i).index() == i);
  CHECK(Tile{0, 9} < Tile{1, 1});
  CHECK(Tile{1, 2} < Tile{1, 3});
  CHECK(tile_succ(Tile{0, 8}, 1) == Tile{0, 9});
  CHECK_FALSE(tile_succ(Tile{0, 8}, 2).has_value());
  CHECK(tile_succ(Tile{2, 1}, 2) == Tile{2, 3});
  CHECK(to_string(Tile{1, 7}) == "C7");
  CHECK(parse_tile("D4") == Tile{2, 4});
  CHECK_THROWS_AS(parse_tile("E4"), ParseError);
  CHECK_THROWS_AS(parse_tile("B0"), ParseError);
}

TEST_CASE("parse_hand accepts the complete example and canonicalises order") {
  const Hand h = parse_hand(fixtures::kCompleteHand);
  CHECK(h.size() == 14);
  CHECK(h.melds_fixed() == 0);
  CHECK(h.is_full());
  CHECK(format_hand(h) == fixtures::kCompleteHand);
  CHECK(parse_hand("D6 D5 D4 | C1 C1 B7B7B7B4B3B3B2B2B1") == h);
  CHECK(h.multiplicity(Tile{0, 7}) == 3);
  CHECK(h.colour_mask() == 0b111);
}

TEST_CASE("parse_hand rejects malformed hands") {
  CHECK_THROWS_AS(parse_hand("B1B1"), ParseError);
  CHECK_THROWS_AS(parse_hand("C5C5C5C5C5C9C9C9C9B1B2B3D1D2"), ParseError);
  CHECK_THROWS_AS(parse_hand("B1B2B3B4B5B6B7B8B9C1C2C3C4X5"), ParseError);
  CHECK_THROWS_AS(parse_hand("B1B2B3B4B5B6B7B8B9C1C2C3C4C"), ParseError);
}

TEST_CASE("consolidated melds shrink the hand by three tiles each") {
  const Hand h = parse_hand("B1B2B3B4B5B6B7B8B9C1C2;k=1");
  CHECK(h.melds_fixed() == 1);
  CHECK(h.size() == 11);
  CHECK(h.is_full());
  CHECK(format_hand(h) == "B1B2B3B4B5B6B7B8B9C1C2;k=1");
  CHECK(parse_hand("B1B2B3B4B5B6B7B8B9C1;k=1").size() == 10);
  CHECK_THROWS_AS(parse_hand("B1B2B3B4B5B6B7B8B9C1C2C3;k=1"), ParseError);
  CHECK_THROWS_AS(parse_hand("B1B2;k=5"), ParseError);
}

TEST_CASE("knowledge-base grammar") {
  const KnowledgeBase kb = parse_kb(fixtures::kRunningKb);
  CHECK(kb[Tile{1, 2}] == 1);
  CHECK(kb[Tile{1, 8}] == 3);
  CHECK(kb[Tile{2, 4}] == 2);
  CHECK(kb.total() == 6 + 4 + 19);
  CHECK(format_kb(kb) == fixtures::kRunningKb);
  CHECK(parse_kb("001100121010000030032242321") == kb);
  CHECK(parse_kb(std::string(27, '0')).total() == 0);
  const KnowledgeBase q = parse_kb(fixtures::kTT2KbPrinted);
  CHECK(q[Tile{0, 8}] == 2);
  CHECK(q[Tile{1, 1}] == 4);
  CHECK_THROWS_AS(parse_kb("00110012"), ParseError);
  CHECK_THROWS_AS(parse_kb(std::string(27, '5')), ParseError);
  CHECK_THROWS_AS(parse_kb(std::string(28, '0')), ParseError);
  CHECK_THROWS_AS(parse_kb("0011|00121010000030032242321"), ParseError);
}

TEST_CASE("has_pair / has_meld") {
  KnowledgeBase kb;
  CHECK_FALSE(kb.has_pair());
  CHECK_FALSE(kb.has_meld());
  kb.counts[Tile{0, 1}.index()] = 1;
  kb.counts[Tile{0, 2}.index()] = 1;
  CHECK_FALSE(kb.has_meld());
  kb.counts[Tile{0, 3}.index()] = 1;
  CHECK(kb.has_meld());
  CHECK_FALSE(kb.has_pair());
  kb.counts[Tile{2, 9}.index()] = 2;
  CHECK(kb.has_pair());
  KnowledgeBase wrap;  // B8 B9 C1 is not a chow
  wrap.counts[Tile{0, 8}.index()] = 1;
  wrap.counts[Tile{0, 9}.index()] = 1;
  wrap.counts[Tile{1, 1}.index()] = 1;
  CHECK_FALSE(wrap.has_meld());
  KnowledgeBase pong;
  pong.counts[5] = 3;
  CHECK(pong.has_meld());
}

TEST_CASE("kb_from_hand is the complement") {
  const Hand h = parse_hand(fixtures::kCompleteHand);
  const KnowledgeBase kb = kb_from_hand(h);
  CHECK(kb[Tile{0, 2}] == 2);
  CHECK(kb[Tile{0, 3}] == 2);
  CHECK(kb[Tile{0, 7}] == 1);
  CHECK(kb[Tile{1, 1}] == 2);
  for (int r = 4; r <= 6; ++r) CHECK(kb[Tile{2, r}] == 3);
  CHECK(kb[Tile{0, 9}] == 4);
  CHECK(kb.total() + h.size() == 108);
  CHECK(compatible(h, kb));
  const KnowledgeBase bc = kb_from_hand(h, 0b011);
  CHECK(bc[Tile{2, 4}] == 0);
  CHECK(bc[Tile{1, 1}] == 2);
  CHECK(bc.total() == 72 - 11);
}

TEST_CASE("compatibility") {
  const Hand h = parse_hand(fixtures::kTT2Hand);
  CHECK_FALSE(compatible(h, parse_kb(fixtures::kTT2KbPrinted)));
  CHECK(compatible(h, parse_kb(fixtures::kTT2Kb)));
  CHECK_THROWS_AS(require_compatible(h, parse_kb(fixtures::kTT2KbPrinted)), std::invalid_argument);
}

TEST_CASE("replace_tile") {
  const Hand h = parse_hand(fixtures::kCompleteHand);
  const KnowledgeBase kb = kb_from_hand(h);
  const auto [h2, kb2] = replace_tile(h, Tile{0, 1}, Tile{1, 1}, kb);
  CHECK(h2.size() == 14);
  CHECK(h2.multiplicity(Tile{0, 1}) == 0);
  CHECK(h2.multiplicity(Tile{1, 1}) == 3);
  CHECK(kb2[Tile{1, 1}] == kb[Tile{1, 1}] - 1);
  CHECK(kb2[Tile{0, 1}] == kb[Tile{0, 1}]);  // the discard is not returned to the KB
  CHECK(compatible(h2, kb2));
  CHECK_THROWS_AS(replace_tile(h, Tile{0, 1}, Tile{0, 1}, kb), std::invalid_argument);
  CHECK_THROWS_AS(replace_tile(h, Tile{0, 9}, Tile{0, 8}, kb), std::invalid_argument);
  KnowledgeBase none;
  CHECK_THROWS_AS(replace_tile(h, Tile{0, 1}, Tile{0, 9}, none), std::invalid_argument);
}

TEST_CASE("random round trips and invariants") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    Counts c{};
    std::vector<int> wall;
    for (int i = 0; i < kKinds; ++i)
      for (int k = 0; k < 4; ++k) wall.push_back(i);
    std::shuffle(wall.begin(), wall.end(), rng);
    const int size = trial % 2 == 0 ? 14 : 13;
    for (int i = 0; i < size; ++i) ++c[wall[i]];
    const Hand h = Hand::from_counts(c);
    CHECK(parse_hand(format_hand(h)) == h);
    const KnowledgeBase kb = kb_from_hand(h);
    CHECK(parse_kb(format_kb(kb)) == kb);
    CHECK(kb.total() + h.size() == 108);
    for (const Tile& t : h.tiles()) {
      for (int j = 0; j < kKinds; ++j) {
        const Tile in = Tile::from_index(j);
        if (in == t || kb[in] == 0) continue;
        const auto [h2, kb2] = replace_tile(h, t, in, kb);
        CHECK(h2.size() == h.size());
        CHECK(compatible(h2, kb2));
      }
      break;
    }
  }
}

TEST_CASE("colour permutation acts on hands and KBs jointly") {
  const Hand h = parse_hand(fixtures::kCompleteHand);
  const std::array<int, 3> perm{2, 0, 1};
  const Hand p = permute_colours(h, perm);
  CHECK(p.multiplicity(Tile{2, 7}) == 3);
  CHECK(p.multiplicity(Tile{1, 4}) == 1);  // D4 -> C4
  CHECK(p.multiplicity(Tile{0, 1}) == 2);  // C1 -> B1
  CHECK(permute_colours(kb_from_hand(h), perm) == kb_from_hand(p));
}
