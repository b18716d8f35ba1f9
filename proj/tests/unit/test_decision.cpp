#include <doctest.h>

#include <map>

#include "../fixtures.hpp"
#include "mjdef/bench.hpp"
#include "mjdef/decision.hpp"
#include "mjdef/quadtree.hpp"

using namespace mjdef;

namespace {

// delta(t) recomputed from its definition with the quadtree.
std::map<Tile, int> reference_deltas(const Hand& h, const KnowledgeBase& kb) {
  const int d = quadtree_dfncy(h, kb);
  std::map<Tile, int> out;
  for (const Tile& t : h.tiles()) {
    if (out.count(t)) continue;
    int sum = 0;
    for (int i = 0; i < kKinds; ++i) {
      const Tile in = Tile::from_index(i);
      if (in == t || kb[in] == 0) continue;
      const auto [h2, kb2] = replace_tile(h, t, in, kb);
      if (quadtree_dfncy(h2, kb2) < d) sum += kb[in];
    }
    out[t] = sum;
  }
  return out;
}

}  // namespace

TEST_CASE("backend names") {
  CHECK(parse_backend("block") == Backend::Block);
  CHECK(parse_backend("quadtree") == Backend::Quadtree);
  CHECK(parse_backend("oracle") == Backend::Oracle);
  CHECK(to_string(Backend::Quadtree) == "quadtree");
  CHECK_THROWS_AS(parse_backend("fast"), ParseError);
}

TEST_CASE("deficiency dispatch") {
  const Hand h = parse_hand(fixtures::kTT2Hand);
  const KnowledgeBase kb = parse_kb(fixtures::kTT2Kb);
  for (Backend b : {Backend::Block, Backend::Quadtree, Backend::Oracle}) CHECK(deficiency(h, kb, b) == 3);
  CHECK(deficiency(h, kb, Backend::Oracle, 2) == kIncompletable);
}

TEST_CASE("discard example reproduces the printed value vector") {
  const Hand h = parse_hand(fixtures::kDiscardHand);
  const KnowledgeBase kb = parse_kb(fixtures::kDiscardKb);
  const std::map<std::string, int> expected = {{"C1", 9},  {"C5", 13}, {"C6", 9},  {"C8", 19},
                                               {"C9", 9},  {"D3", 14}, {"D4", 11}, {"D5", 14}};
  for (Backend backend : {Backend::Quadtree, Backend::Block, Backend::Oracle}) {
    CAPTURE(to_string(backend));
    const DiscardReport r = discard_values(h, kb, backend);
    CHECK(r.dfncy == fixtures::kDiscardDfncy);
    std::map<std::string, int> got;
    for (const auto& [t, v] : r.values) got[to_string(t)] = v;
    CHECK(got == expected);
    REQUIRE(r.chosen.has_value());
    CHECK(to_string(*r.chosen) == "C8");
  }
  // Expanded per tile copy, the values follow the printed 13-entry vector.
  std::vector<int> per_copy;
  const DiscardReport r = discard_values(h, kb, Backend::Quadtree);
  for (const Tile& t : h.tiles())
    for (const auto& [u, v] : r.values)
      if (u == t) per_copy.push_back(v);
  per_copy.erase(per_copy.begin() + 6);  // the reconstructed extra C9
  CHECK(per_copy == std::vector<int>{9, 9, 9, 13, 9, 19, 9, 9, 14, 14, 11, 14, 14});
}

TEST_CASE("printed 13-tile discard hand") {
  // As printed the hand is one tile short; it still points at C8.
  const Hand h = parse_hand(fixtures::kDiscardHandPrinted);
  const KnowledgeBase kb = parse_kb(fixtures::kDiscardKb);
  const DiscardReport r = discard_values(h, kb, Backend::Quadtree);
  REQUIRE(r.chosen.has_value());
  CHECK(to_string(*r.chosen) == "C8");
}

TEST_CASE("degenerate reports") {
  const Hand complete = parse_hand(fixtures::kCompleteHand);
  const DiscardReport done = discard_values(complete, kb_from_hand(complete), Backend::Block);
  CHECK(done.dfncy == 0);
  CHECK(done.values.empty());
  CHECK_FALSE(done.chosen.has_value());

  const Hand h = parse_hand(fixtures::kTT2Hand);
  const DiscardReport empty = discard_values(h, KnowledgeBase{}, Backend::Quadtree);
  CHECK(empty.dfncy == kIncompletable);
  REQUIRE_FALSE(empty.values.empty());
  for (const auto& [t, v] : empty.values) CHECK(v == 0);
  REQUIRE(empty.chosen.has_value());
  CHECK(*empty.chosen == h.tiles().front());
}

TEST_CASE("values follow the definition and agree across backends") {
  const FuzzConfig cfg{.n = 40, .cap = 0, .seed = 88, .colours = 0};
  for (std::uint64_t i = 0; i < cfg.n; ++i) {
    const auto [h, kb] = fuzz_instance(cfg, i);
    const DiscardReport q = discard_values(h, kb, Backend::Quadtree);
    if (q.dfncy == 0) continue;
    const auto ref = reference_deltas(h, kb);
    int best = -1;
    for (const auto& [t, v] : q.values) {
      CHECK(v == ref.at(t));
      CHECK(v <= kb.total());
      best = std::max(best, v);
    }
    REQUIRE(q.chosen.has_value());
    CHECK(ref.at(*q.chosen) == best);
    // Block matches whenever every probed deficiency is in the exact band.
    bool in_band = q.dfncy <= 4;
    if (in_band) {
      const DiscardReport b = discard_values(h, kb, Backend::Block);
      CHECK(b.values == q.values);
      CHECK(b.chosen == q.chosen);
    }
  }
}

TEST_CASE("chosen tile follows a colour permutation") {
  const Hand h = parse_hand(fixtures::kDiscardHand);
  const KnowledgeBase kb = parse_kb(fixtures::kDiscardKb);
  const std::array<int, 3> perm{2, 0, 1};
  const DiscardReport r = discard_values(permute_colours(h, perm), permute_colours(kb, perm), Backend::Block);
  REQUIRE(r.chosen.has_value());
  CHECK(*r.chosen == Tile{0, 8});  // C8 with characters mapped to bamboo
}
