#include <doctest.h>

#include <set>
#include <sstream>

#include "mjdef/bench.hpp"
#include "mjdef/block.hpp"

using namespace mjdef;

TEST_CASE("instance streams are deterministic and independent") {
  Rng a = instance_rng(1, 7, 1);
  Rng b = instance_rng(1, 7, 1);
  CHECK(a() == b());
  CHECK(instance_rng(1, 7, 1)() != instance_rng(1, 7, 2)());
  CHECK(instance_rng(1, 7, 1)() != instance_rng(1, 8, 1)());
  CHECK(instance_rng(1, 7, 1)() != instance_rng(2, 7, 1)());
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("gen_hand") {
  Rng rng(3);
  for (int colours = 1; colours <= 3; ++colours) {
    for (int i = 0; i < 200; ++i) {
      const Hand h = gen_hand(colours, rng);
      CHECK(h.size() == 14);
      CHECK(__builtin_popcount(static_cast<unsigned>(h.colour_mask())) == colours);
    }
  }
  Rng r1 = instance_rng(5, 0, 1), r2 = instance_rng(5, 0, 1);
  CHECK(gen_hand(3, r1) == gen_hand(3, r2));
  CHECK_THROWS_AS(gen_hand(0, rng), std::invalid_argument);
  CHECK_THROWS_AS(gen_hand(4, rng), std::invalid_argument);
}

TEST_CASE("gen_kb and capacity") {
  Rng rng(9);
  for (int colours = 1; colours <= 3; ++colours) {
    const Hand h = gen_hand(colours, rng);
    const int cap = kb_capacity(h);
    CHECK(cap == 36 * colours - 14);
    CHECK(gen_kb(h, 0, rng).total() == 0);
    const KnowledgeBase full = gen_kb(h, cap, rng);
    CHECK(full == kb_from_hand(h, h.colour_mask()));
    const KnowledgeBase half = gen_kb(h, cap / 2, rng);
    CHECK(half.total() == cap / 2);
    CHECK(compatible(h, half));
    for (int i = 0; i < kKinds; ++i) CHECK(half.counts[i] <= full.counts[i]);
    CHECK_THROWS_AS(gen_kb(h, cap + 1, rng), std::invalid_argument);
  }
}

TEST_CASE("KB size sampling") {
  Rng rng(4);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const int s = sample_kb_size(94, rng);
    CHECK(s >= 0);
    CHECK(s <= 94);
    sum += s;
  }
  CHECK(sum / n == doctest::Approx(47).epsilon(0.02));
  CHECK(sample_kb_size(94, rng, 10.0, 0.0) == 10);
  CHECK(sample_kb_size(22, rng, 500.0, 0.0) == 22);
}

TEST_CASE("bucket edges") {
  CHECK(bucket_edges(1) == std::vector<int>{0, 5, 10, 15, 22});
  CHECK(bucket_edges(2) == std::vector<int>{0, 10, 20, 30, 40, 50, 58});
  CHECK(bucket_edges(3) == std::vector<int>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 94});
}

TEST_CASE("bench rows and CSV") {
  BenchConfig cfg;
  cfg.colours = 2;
  cfg.hands = 20;
  cfg.kbs_per_hand = 5;
  cfg.seed = 42;
  const BenchResult r = run_bench(cfg);
  REQUIRE(r.rows.size() == 6);
  std::uint64_t pairs = 0;
  for (const BenchRow& row : r.rows) {
    pairs += row.pairs;
    CHECK(row.agree_rate() == 1.0);
    if (row.pairs) CHECK(row.quad_max_ms >= row.quad_mean_ms);
  }
  CHECK(pairs == 100);
  CHECK(r.total.pairs == 100);
  const std::string csv = bench_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "kb_bucket,pairs,quad_max_ms,quad_mean_ms,block_max_ms,block_mean_ms,ratio,agree_rate_le4");
  std::vector<std::string> labels;
  while (std::getline(in, line)) labels.push_back(line.substr(0, line.find(',')));
  CHECK(labels == std::vector<std::string>{"0-10", "10-20", "20-30", "30-40", "40-50", "50-58", "total"});
}

TEST_CASE("bench with one backend leaves the other columns empty") {
  BenchConfig cfg;
  cfg.colours = 1;
  cfg.hands = 3;
  cfg.kbs_per_hand = 4;
  cfg.run_quadtree = false;
  std::istringstream in(bench_csv(run_bench(cfg)));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream cells(line + ",");
    for (std::string f; std::getline(cells, f, ',');) fields.push_back(f);
    REQUIRE(fields.size() == 8);
    CHECK(fields[2].empty());
    CHECK(fields[3].empty());
    CHECK(fields[6].empty());
    CHECK(fields[7].empty());
    CHECK(fields[5].empty() == (fields[1] == "0"));
  }
}

TEST_CASE("bucket assignment follows the KB size") {
  // A size sampler pinned to one value puts every pair in one bucket.
  BenchConfig cfg;
  cfg.colours = 3;
  cfg.hands = 4;
  cfg.kbs_per_hand = 3;
  cfg.kb_size_mean = 20.0;
  cfg.kb_size_std = 0.0;
  const BenchResult r = run_bench(cfg);
  for (const BenchRow& row : r.rows) CHECK(row.pairs == (row.label == "20-30" ? 12u : 0u));
  cfg.kb_size_mean = 94.0;
  const BenchResult top = run_bench(cfg);
  CHECK(top.rows.back().pairs == 12);
  cfg.repeats = 0;
  CHECK_THROWS_AS(run_bench(cfg), std::invalid_argument);
}

TEST_CASE("fuzz report") {
  const FuzzConfig cfg{.n = 400, .cap = 2, .seed = 1, .colours = 0};
  const FuzzReport r = fuzz_diff(cfg);
  CHECK(r.pairs == 400);
  CHECK(r.oracle_checked == 400);
  CHECK(r.oracle_mismatches.empty());
  CHECK(r.in_band_mismatches() == 0);
  CHECK_FALSE(r.failed());
  for (const FuzzCase& c : r.block_mismatches) {
    CHECK(c.quadtree > 4);
    const auto [h, kb] = fuzz_instance(cfg, c.index);
    CHECK(h == c.hand);
    CHECK(kb == c.kb);
  }
  const std::string text = to_string(r);
  CHECK(text.find("pairs 400") == 0);
  CHECK(fuzz_diff(cfg).block_mismatches.size() == r.block_mismatches.size());
  CHECK_THROWS_AS(fuzz_diff(FuzzConfig{.n = 0}), std::invalid_argument);
}

TEST_CASE("fuzz colour cycling") {
  const FuzzConfig cfg{.n = 9, .cap = 0, .seed = 2, .colours = 0};
  for (std::uint64_t i = 0; i < cfg.n; ++i) {
    const auto [h, kb] = fuzz_instance(cfg, i);
    CHECK(__builtin_popcount(static_cast<unsigned>(h.colour_mask())) == static_cast<int>(i % 3) + 1);
  }
}

TEST_CASE("count_stats") {
  // Pure block of 14 tiles with the full-complement KB.
  std::vector<Hand> hands;
  std::vector<KnowledgeBase> kbs;
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const Hand h = gen_hand(1, rng);
    hands.push_back(h);
    kbs.push_back(kb_from_hand(h, h.colour_mask()));
  }
  const auto rows = count_stats(hands, kbs);
  std::uint64_t blocks = 0;
  for (const auto& [size, row] : rows) {
    CHECK(row.mean_types <= row.mean_qdcmps);
    blocks += row.blocks;
  }
  CHECK(blocks >= 20);
  const Hand two = parse_hand("B1B1C4C4C4D2D3D4D7D8D9C9C9C9");
  const auto small = count_stats({two}, {kb_from_hand(two)});
  REQUIRE(small.count(2));
  CHECK(small.at(2).mean_qdcmps == small.at(2).mean_types);
  CHECK_THROWS_AS(count_stats({two}, {}), std::invalid_argument);
}
