#include "mjdef/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "mjdef/block.hpp"
#include "mjdef/oracle.hpp"
#include "mjdef/quadtree.hpp"

namespace mjdef {

namespace {

constexpr std::uint64_t kStreamHand = 1;
constexpr std::uint64_t kStreamKbSize = 2;
constexpr std::uint64_t kStreamKb = 3;

double elapsed_ms(std::chrono::steady_clock::time_point from, std::chrono::steady_clock::time_point to) {
  return std::chrono::duration<double, std::milli>(to - from).count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Median wall time of `repeats` runs of f, in milliseconds.
template <typename F>
double timed(int repeats, F&& f) {
  std::vector<double> times;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    times.push_back(elapsed_ms(t0, std::chrono::steady_clock::now()));
  }
  std::nth_element(times.begin(), times.begin() + repeats / 2, times.end());
  return times[static_cast<std::size_t>(repeats / 2)];
}

// Runs f(i) for i in [0, n) on all hardware threads.
template <typename F>
void parallel_for(std::uint64_t n, F&& f) {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng instance_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ index) ^ stream));
}

Hand gen_hand(int colours, Rng& rng) {
  if (colours < 1 || colours > kColours) throw std::invalid_argument("colours must be 1, 2 or 3");
  std::vector<int> palette{0, 1, 2};
  std::shuffle(palette.begin(), palette.end(), rng);
  palette.resize(static_cast<std::size_t>(colours));
  std::vector<int> wall;
  for (int c : palette) {
    for (int r = 0; r < kRanks; ++r) {
      for (int copy = 0; copy < kMaxCopies; ++copy) wall.push_back(kRanks * c + r);
    }
  }
  for (;;) {
    std::shuffle(wall.begin(), wall.end(), rng);
    Counts counts{};
    int seen = 0;
    for (int i = 0; i < 14; ++i) {
      ++counts[wall[i]];
      seen |= 1 << (wall[i] / kRanks);
    }
    if (__builtin_popcount(seen) == colours) return Hand::from_counts(counts);
  }
}

int kb_capacity(const Hand& hand) {
  const KnowledgeBase full = kb_from_hand(hand, hand.colour_mask());
  return full.total();
}

KnowledgeBase gen_kb(const Hand& hand, int size, Rng& rng) {
  const KnowledgeBase full = kb_from_hand(hand, hand.colour_mask());
  if (size < 0 || size > full.total()) {
    throw std::invalid_argument("knowledge-base size " + std::to_string(size) + " outside [0, " +
                                std::to_string(full.total()) + "]");
  }
  std::vector<int> pool;
  for (int i = 0; i < kKinds; ++i) {
    for (int copy = 0; copy < full.counts[i]; ++copy) pool.push_back(i);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  KnowledgeBase kb;
  for (int i = 0; i < size; ++i) ++kb.counts[pool[i]];
  return kb;
}

int sample_kb_size(int capacity, Rng& rng, std::optional<double> mean, std::optional<double> stddev) {
  const double mu = mean.value_or(capacity / 2.0);
  const double sigma = stddev.value_or(capacity / 4.0);
  if (sigma < 0) throw std::invalid_argument("standard deviation must be non-negative");
  double x = mu;
  if (sigma > 0) x = std::normal_distribution<double>(mu, sigma)(rng);
  return std::clamp(static_cast<int>(std::lround(x)), 0, capacity);
}

std::vector<int> bucket_edges(int colours) {
  switch (colours) {
    case 1:
      return {0, 5, 10, 15, 22};
    case 2:
      return {0, 10, 20, 30, 40, 50, 58};
    case 3:
      return {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 94};
    default:
      throw std::invalid_argument("colours must be 1, 2 or 3");
  }
}

BenchResult run_bench(const BenchConfig& cfg) {
  if (cfg.hands <= 0 || cfg.kbs_per_hand <= 0) throw std::invalid_argument("hands and kbs must be positive");
  if (cfg.repeats <= 0) throw std::invalid_argument("repeats must be positive");
  const std::vector<int> edges = bucket_edges(cfg.colours);
  BenchResult result;
  result.config = cfg;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    BenchRow row;
    row.lo = edges[i];
    row.hi = edges[i + 1];
    row.label = std::to_string(row.lo) + "-" + std::to_string(row.hi);
    result.rows.push_back(row);
  }
  result.total.label = "total";
  result.total.lo = edges.front();
  result.total.hi = edges.back();

  std::vector<double> quad_sum(result.rows.size() + 1, 0.0);
  std::vector<double> block_sum(result.rows.size() + 1, 0.0);
  auto record = [&](std::size_t slot, BenchRow& row, double tq, double tb, int q, int b) {
    ++row.pairs;
    quad_sum[slot] += tq;
    block_sum[slot] += tb;
    row.quad_max_ms = std::max(row.quad_max_ms, tq);
    row.block_max_ms = std::max(row.block_max_ms, tb);
    if (cfg.run_quadtree && cfg.run_block) {
      if (q == b) ++row.agree_all;
      if (q <= 4) {
        ++row.in_band;
        if (q == b) ++row.agree;
      }
    }
  };

  // Timing runs on this thread only, so measurements see no competing load.
  for (int h = 0; h < cfg.hands; ++h) {
    Rng hand_rng = instance_rng(cfg.seed, static_cast<std::uint64_t>(h), kStreamHand);
    const Hand hand = gen_hand(cfg.colours, hand_rng);
    const int capacity = kb_capacity(hand);
    for (int k = 0; k < cfg.kbs_per_hand; ++k) {
      const std::uint64_t index = static_cast<std::uint64_t>(h) * static_cast<std::uint64_t>(cfg.kbs_per_hand) +
                                  static_cast<std::uint64_t>(k);
      Rng size_rng = instance_rng(cfg.seed, index, kStreamKbSize);
      Rng kb_rng = instance_rng(cfg.seed, index, kStreamKb);
      const int size = sample_kb_size(capacity, size_rng, cfg.kb_size_mean, cfg.kb_size_std);
      const KnowledgeBase kb = gen_kb(hand, size, kb_rng);

      int q = kIncompletable;
      int b = kIncompletable;
      double tq = 0;
      double tb = 0;
      if (cfg.run_quadtree) tq = timed(cfg.repeats, [&] { q = quadtree_dfncy(hand, kb); });
      if (cfg.run_block) tb = timed(cfg.repeats, [&] { b = block_dfncy(hand, kb); });
      std::size_t slot = result.rows.size() - 1;
      for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (size < result.rows[i].hi) {
          slot = i;
          break;
        }
      }
      record(slot, result.rows[slot], tq, tb, q, b);
      record(result.rows.size(), result.total, tq, tb, q, b);
    }
  }

  auto finish = [&](std::size_t slot, BenchRow& row) {
    if (row.pairs == 0) return;
    const double n = static_cast<double>(row.pairs);
    row.quad_mean_ms = quad_sum[slot] / n;
    row.block_mean_ms = block_sum[slot] / n;
    row.ratio = row.block_mean_ms > 0 ? row.quad_mean_ms / row.block_mean_ms : 0.0;
  };
  for (std::size_t i = 0; i < result.rows.size(); ++i) finish(i, result.rows[i]);
  finish(result.rows.size(), result.total);
  return result;
}

std::string bench_csv(const BenchResult& result) {
  const BenchConfig& cfg = result.config;
  std::ostringstream out;
  out << "kb_bucket,pairs,quad_max_ms,quad_mean_ms,block_max_ms,block_mean_ms,ratio,agree_rate_le4\n";
  auto line = [&](const BenchRow& row) {
    const bool any = row.pairs > 0;
    const bool both = cfg.run_quadtree && cfg.run_block;
    out << row.label << ',' << row.pairs << ',';
    out << (cfg.run_quadtree && any ? format_double(row.quad_max_ms) : "") << ',';
    out << (cfg.run_quadtree && any ? format_double(row.quad_mean_ms) : "") << ',';
    out << (cfg.run_block && any ? format_double(row.block_max_ms) : "") << ',';
    out << (cfg.run_block && any ? format_double(row.block_mean_ms) : "") << ',';
    out << (both && any ? format_double(row.ratio) : "") << ',';
    out << (both && any ? format_double(row.agree_rate()) : "") << '\n';
  };
  for (const BenchRow& row : result.rows) line(row);
  line(result.total);
  return out.str();
}

std::map<int, std::uint64_t> pure_census(Backend backend) {
  // All rank-count vectors with entries 0..4 summing to 14.
  std::vector<Counts> hands;
  Counts c{};
  auto rec = [&](auto&& self, int r, int left) -> void {
    if (r == kRanks) {
      if (left == 0) hands.push_back(c);
      return;
    }
    for (int k = 0; k <= std::min(kMaxCopies, left); ++k) {
      c[r] = static_cast<std::uint8_t>(k);
      self(self, r + 1, left - k);
    }
    c[r] = 0;
  };
  rec(rec, 0, 14);

  std::vector<int> values(hands.size());
  parallel_for(hands.size(), [&](std::uint64_t i) {
    const Hand hand = Hand::from_counts(hands[i]);
    values[i] = deficiency(hand, kb_from_hand(hand), backend);
  });
  std::map<int, std::uint64_t> histogram;
  for (int v : values) ++histogram[v];
  return histogram;
}

int FuzzCase::signed_error() const { return block - quadtree; }

std::uint64_t FuzzReport::in_band_mismatches() const {
  return static_cast<std::uint64_t>(
      std::count_if(block_mismatches.begin(), block_mismatches.end(), [](const FuzzCase& c) { return c.quadtree <= 4; }));
}

bool FuzzReport::failed() const { return in_band_mismatches() > 0 || !oracle_mismatches.empty(); }

std::pair<Hand, KnowledgeBase> fuzz_instance(const FuzzConfig& cfg, std::uint64_t index) {
  const int colours = cfg.colours == 0 ? static_cast<int>(index % 3) + 1 : cfg.colours;
  Rng hand_rng = instance_rng(cfg.seed, index, kStreamHand);
  Rng size_rng = instance_rng(cfg.seed, index, kStreamKbSize);
  Rng kb_rng = instance_rng(cfg.seed, index, kStreamKb);
  Hand hand = gen_hand(colours, hand_rng);
  const int capacity = kb_capacity(hand);
  // Fuzzing covers the whole size range uniformly, including the extremes.
  const int size = std::uniform_int_distribution<int>(0, capacity)(size_rng);
  KnowledgeBase kb = gen_kb(hand, size, kb_rng);
  return {std::move(hand), kb};
}

FuzzReport fuzz_diff(const FuzzConfig& cfg) {
  if (cfg.n == 0) throw std::invalid_argument("fuzz needs at least one pair");
  if (cfg.cap < 0) throw std::invalid_argument("oracle cap must be non-negative");
  if (cfg.colours < 0 || cfg.colours > kColours) throw std::invalid_argument("colours must be 0..3");
  std::vector<FuzzCase> cases(cfg.n);
  parallel_for(cfg.n, [&](std::uint64_t i) {
    FuzzCase& fc = cases[i];
    fc.index = i;
    std::tie(fc.hand, fc.kb) = fuzz_instance(cfg, i);
    fc.quadtree = quadtree_dfncy(fc.hand, fc.kb);
    fc.block = block_dfncy(fc.hand, fc.kb);
    if (cfg.cap > 0) fc.oracle = oracle_dfncy(fc.hand, fc.kb, cfg.cap);
  });
  FuzzReport report;
  report.config = cfg;
  report.pairs = cfg.n;
  for (const FuzzCase& fc : cases) {
    if (fc.quadtree <= 4) ++report.in_band;
    if (fc.block != fc.quadtree) report.block_mismatches.push_back(fc);
    if (fc.oracle) {
      ++report.oracle_checked;
      // Within the cap both must agree; beyond it the oracle reports nothing.
      const int expected = fc.quadtree <= cfg.cap ? fc.quadtree : kIncompletable;
      if (*fc.oracle != expected) report.oracle_mismatches.push_back(fc);
    }
  }
  return report;
}

std::string to_string(const FuzzReport& r) {
  std::ostringstream out;
  out << "pairs " << r.pairs << "\n";
  out << "in_band " << r.in_band << "\n";
  out << "block_mismatches " << r.block_mismatches.size() << " (in band " << r.in_band_mismatches() << ")\n";
  out << "oracle_checked " << r.oracle_checked << " (cap " << r.config.cap << ")\n";
  out << "oracle_mismatches " << r.oracle_mismatches.size() << "\n";
  auto show = [&](const char* what, const FuzzCase& c) {
    out << what << " index=" << c.index << " seed=" << r.config.seed << " hand=" << format_hand(c.hand)
        << " kb=" << format_kb(c.kb) << " quadtree=" << c.quadtree << " block=" << c.block;
    if (c.oracle) out << " oracle=" << *c.oracle;
    out << " error=" << (c.signed_error() > 0 ? "+" : "") << c.signed_error() << "\n";
  };
  for (const FuzzCase& c : r.block_mismatches) show("block", c);
  for (const FuzzCase& c : r.oracle_mismatches) show("oracle", c);
  return out.str();
}

std::map<int, CountRow> count_stats(const std::vector<Hand>& hands, const std::vector<KnowledgeBase>& kbs) {
  if (hands.size() != kbs.size()) throw std::invalid_argument("hands and knowledge bases differ in number");
  // Counts follow the plain block model: blocks are KB-connected components
  // and qDCMPs are not filtered by joint completability.
  BlockOptions opts;
  opts.consumption_aware = false;
  opts.prune_remainder_completions = false;
  std::map<int, std::pair<double, double>> sums;
  std::map<int, CountRow> rows;
  for (std::size_t i = 0; i < hands.size(); ++i) {
    for (const Block& b : kb_blocks(hands[i], kbs[i])) {
      const int size = static_cast<int>(b.tiles.size());
      sums[size].first += static_cast<double>(enumerate_qdcmps(b, kbs[i], opts).size());
      sums[size].second += static_cast<double>(local_types(b, kbs[i], opts).size());
      ++rows[size].blocks;
    }
  }
  for (auto& [size, row] : rows) {
    row.mean_qdcmps = sums[size].first / static_cast<double>(row.blocks);
    row.mean_types = sums[size].second / static_cast<double>(row.blocks);
  }
  return rows;
}

}  // namespace mjdef
