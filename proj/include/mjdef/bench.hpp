// Random instance generation, differential fuzzing, the pure-hand census,
// qDCMP/type counts and the quadtree-vs-block timing harness.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mjdef/decision.hpp"
#include "mjdef/tiles.hpp"

namespace mjdef {

using Rng = std::mt19937_64;

// One step of the splitmix64 sequence; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);
// Generator for instance `index` of the run seeded with `seed`; `stream`
// separates independent uses (hand, knowledge base, ...) of one instance.
Rng instance_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream);

// Uniformly drawn colour set of the given size, then 14 tiles drawn without
// replacement from that colour set's 36*colours physical tiles, redrawn until
// every selected colour occurs.
Hand gen_hand(int colours, Rng& rng);

// Tiles of the hand's colours that the hand does not hold (22 / 58 / 94 for a
// 14-tile hand with one / two / three colours).
int kb_capacity(const Hand& hand);

// `size` tiles drawn without replacement from that complement.
KnowledgeBase gen_kb(const Hand& hand, int size, Rng& rng);

// Normal(capacity / 2, capacity / 4), rounded and clamped to [0, capacity].
int sample_kb_size(int capacity, Rng& rng, std::optional<double> mean = {}, std::optional<double> stddev = {});

// Bucket edges by colour count: {0,5,10,15,22}, {0,10,...,50,58} and
// {0,10,...,90,94}. Buckets are [lo, hi) except the last, which is closed.
std::vector<int> bucket_edges(int colours);

struct BenchConfig {
  int colours = 3;
  int hands = 100;
  int kbs_per_hand = 30;
  std::uint64_t seed = 1;
  std::optional<double> kb_size_mean;  // default: capacity / 2
  std::optional<double> kb_size_std;   // default: capacity / 4
  bool run_quadtree = true;
  bool run_block = true;
  // Timed runs per pair; the pair's time is their median, which filters out
  // scheduler spikes. 1 means a single cold run.
  int repeats = 1;
};

struct BenchRow {
  std::string label;  // "lo-hi", or "total"
  int lo = 0;
  int hi = 0;
  std::uint64_t pairs = 0;
  double quad_max_ms = 0, quad_mean_ms = 0;
  double block_max_ms = 0, block_mean_ms = 0;
  double ratio = 0;  // quad_mean_ms / block_mean_ms
  std::uint64_t in_band = 0;  // pairs with quadtree result <= 4
  std::uint64_t agree = 0;    // in-band pairs where block matches quadtree
  std::uint64_t agree_all = 0;  // pairs where block matches quadtree, any value
  double agree_rate() const { return in_band ? static_cast<double>(agree) / static_cast<double>(in_band) : 1.0; }
};

struct BenchResult {
  BenchConfig config;
  std::vector<BenchRow> rows;  // one per bucket
  BenchRow total;
};

BenchResult run_bench(const BenchConfig& cfg);
// Header kb_bucket,pairs,quad_max_ms,quad_mean_ms,block_max_ms,block_mean_ms,
// ratio,agree_rate_le4; one row per bucket and a final "total" row. Columns of
// a backend that was not run are left empty.
std::string bench_csv(const BenchResult& result);

// Deficiency histogram of every pure 14-tile (ranks 1..9 of one colour, at
// most four copies) under the full-complement knowledge base.
std::map<int, std::uint64_t> pure_census(Backend backend = Backend::Block);

struct FuzzConfig {
  std::uint64_t n = 1000;
  int cap = 3;          // oracle depth; 0 disables the oracle
  std::uint64_t seed = 1;
  int colours = 0;      // 1..3, or 0 to cycle through 1, 2, 3
};

struct FuzzCase {
  std::uint64_t index = 0;  // replay with instance_rng(seed, index, .)
  Hand hand;
  KnowledgeBase kb;
  int quadtree = kIncompletable;
  int block = kIncompletable;
  std::optional<int> oracle;
  // block - quadtree (positive: block overestimates)
  int signed_error() const;
};

struct FuzzReport {
  FuzzConfig config;
  std::uint64_t pairs = 0;
  std::uint64_t in_band = 0;             // quadtree result <= 4
  std::uint64_t oracle_checked = 0;
  std::vector<FuzzCase> block_mismatches;   // all block != quadtree cases
  std::vector<FuzzCase> oracle_mismatches;  // quadtree != oracle within the cap
  std::uint64_t in_band_mismatches() const;
  // In-band block errors or any oracle disagreement.
  bool failed() const;
};

// The (hand, kb) pair of fuzz instance `index`.
std::pair<Hand, KnowledgeBase> fuzz_instance(const FuzzConfig& cfg, std::uint64_t index);
// Throws std::invalid_argument when cfg.n == 0.
FuzzReport fuzz_diff(const FuzzConfig& cfg);
std::string to_string(const FuzzReport& report);

struct CountRow {
  std::uint64_t blocks = 0;
  double mean_qdcmps = 0;
  double mean_types = 0;
};

// Per KB-block of every (hands[i], kbs[i]) pair: the number of distinct
// qDCMPs and of distinct types, averaged per block size.
std::map<int, CountRow> count_stats(const std::vector<Hand>& hands, const std::vector<KnowledgeBase>& kbs);

}  // namespace mjdef
