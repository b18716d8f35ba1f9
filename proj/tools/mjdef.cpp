// mjdef: command-line front end for the deficiency library.
//
//   mjdef dfncy   --hand H --kb KB [--algo block|quadtree|oracle] [--melds-fixed k]
//   mjdef discard --hand H --kb KB [--algo ...]
//   mjdef blocks  --hand H --kb KB
//   mjdef census  [--algo block|quadtree]
//   mjdef bench   --colours c --hands n --kbs m --seed s [--out path]
//   mjdef fuzz    --n N --cap C --seed s
//
// Exit codes: 0 success, 1 fuzz found an in-band disagreement, 2 bad input.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "mjdef/bench.hpp"
#include "mjdef/block.hpp"
#include "mjdef/decision.hpp"
#include "mjdef/tiles.hpp"

namespace {

constexpr int kExitFuzzFailure = 1;
constexpr int kExitBadInput = 2;

// The brute-force oracle grows exponentially with depth; the CLI stops at a
// depth that answers interactively and reports deeper hands as incompletable.
constexpr int kCliOracleCap = 4;

const char* const kKbHelp =
    "knowledge base: 27 digits 0..4 (B1..B9 C1..C9 D1..D9, '|' between colours allowed), "
    "or 'complement' for 4 minus the hand's multiplicity";

struct PairArgs {
  std::string hand;
  std::string kb;
  std::string algo = "block";
  int melds_fixed = -1;
  int cap = kCliOracleCap;
};

void add_pair_options(CLI::App* cmd, PairArgs& args, bool with_algo) {
  cmd->add_option("--hand", args.hand, "tiles such as C1C1C5 D3D4 (optional ';k=<melds>' suffix)")->required();
  cmd->add_option("--kb", args.kb, kKbHelp)->required();
  if (with_algo) {
    cmd->add_option("--algo", args.algo, "block, quadtree or oracle")->capture_default_str();
    cmd->add_option("--cap", args.cap, "oracle search depth")->capture_default_str()->check(CLI::Range(0, 14));
  }
  cmd->add_option("--melds-fixed", args.melds_fixed, "melds already consolidated (overrides ';k=')")
      ->check(CLI::Range(0, 4));
}

std::pair<mjdef::Hand, mjdef::KnowledgeBase> load_pair(const PairArgs& args) {
  // The flag replaces any ';k=' suffix so the tile count is checked against it.
  std::string text = args.hand;
  if (args.melds_fixed >= 0) text = text.substr(0, text.find(';')) + ";k=" + std::to_string(args.melds_fixed);
  const mjdef::Hand hand = mjdef::parse_hand(text);
  const mjdef::KnowledgeBase kb = args.kb == "complement" ? mjdef::kb_from_hand(hand) : mjdef::parse_kb(args.kb);
  mjdef::require_compatible(hand, kb);
  return {hand, kb};
}

std::string show_value(int d) { return d >= mjdef::kIncompletable ? "incompletable" : std::to_string(d); }

int run_dfncy(const PairArgs& args) {
  const auto [hand, kb] = load_pair(args);
  std::cout << show_value(mjdef::deficiency(hand, kb, mjdef::parse_backend(args.algo), args.cap)) << "\n";
  return 0;
}

int run_discard(const PairArgs& args) {
  const auto [hand, kb] = load_pair(args);
  const mjdef::DiscardReport report = mjdef::discard_values(hand, kb, mjdef::parse_backend(args.algo), args.cap);
  std::cout << "dfncy " << show_value(report.dfncy) << "\n";
  for (const auto& [tile, delta] : report.values) std::cout << "delta " << mjdef::to_string(tile) << " " << delta << "\n";
  std::cout << "discard " << (report.chosen ? mjdef::to_string(*report.chosen) : std::string("none")) << "\n";
  return 0;
}

int run_blocks(const PairArgs& args) {
  const auto [hand, kb] = load_pair(args);
  for (const mjdef::Block& b : mjdef::kb_blocks(hand, kb)) std::cout << mjdef::to_string(b) << "\n";
  return 0;
}

int run_census(const std::string& algo) {
  const mjdef::Backend backend = mjdef::parse_backend(algo);
  if (backend == mjdef::Backend::Oracle) throw mjdef::ParseError("census supports block or quadtree");
  for (const auto& [d, count] : mjdef::pure_census(backend)) std::cout << d << " " << count << "\n";
  return 0;
}

int run_bench(mjdef::BenchConfig cfg, const std::string& algo, const std::string& out) {
  if (algo == "block") {
    cfg.run_quadtree = false;
  } else if (algo == "quadtree") {
    cfg.run_block = false;
  } else if (algo != "both") {
    throw mjdef::ParseError("unknown --algo '" + algo + "' (expected both, block or quadtree)");
  }
  const std::string csv = mjdef::bench_csv(mjdef::run_bench(cfg));
  if (out.empty() || out == "-") {
    std::cout << csv;
    return 0;
  }
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out);
  file << csv;
  return 0;
}

int run_fuzz(const mjdef::FuzzConfig& cfg) {
  const mjdef::FuzzReport report = mjdef::fuzz_diff(cfg);
  std::cout << mjdef::to_string(report);
  return report.failed() ? kExitFuzzFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-aware Mahjong deficiency: oracle, quadtree and block algorithms"};
  app.require_subcommand(1);

  PairArgs dfncy_args;
  add_pair_options(app.add_subcommand("dfncy", "print the deficiency number (or 'incompletable')"), dfncy_args, true);

  PairArgs discard_args;
  add_pair_options(app.add_subcommand("discard", "print 'dfncy d', one 'delta <tile> <value>' line per tile, then "
                                                 "'discard <tile>' (or 'discard none' for a complete hand)"),
                   discard_args, true);

  PairArgs blocks_args;
  add_pair_options(app.add_subcommand("blocks", "print the KB-block partition, one block per line"), blocks_args,
                   false);

  std::string census_algo = "block";
  CLI::App* census = app.add_subcommand("census", "print '<deficiency> <count>' over all pure 14-tiles");
  census->add_option("--algo", census_algo, "block or quadtree")->capture_default_str();

  mjdef::BenchConfig bench_cfg;
  std::string bench_algo = "both";
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench", "time quadtree against block and write the bucketed CSV");
  bench->add_option("--colours", bench_cfg.colours, "colours per hand")->capture_default_str()->check(
      CLI::Range(1, 3));
  bench->add_option("--hands", bench_cfg.hands, "random hands")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--kbs", bench_cfg.kbs_per_hand, "knowledge bases per hand")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_cfg.seed, "instance seed")->capture_default_str();
  bench->add_option("--algo", bench_algo, "both, block or quadtree")->capture_default_str();
  bench->add_option("--repeats", bench_cfg.repeats, "timed runs per pair, median kept")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "CSV path (default: standard output)");

  mjdef::FuzzConfig fuzz_cfg;
  CLI::App* fuzz =
      app.add_subcommand("fuzz", "compare block with quadtree (and the oracle up to --cap); exit 1 on in-band errors");
  fuzz->add_option("--n", fuzz_cfg.n, "random pairs")->capture_default_str()->check(CLI::PositiveNumber);
  fuzz->add_option("--cap", fuzz_cfg.cap, "oracle depth, 0 to skip the oracle")
      ->capture_default_str()
      ->check(CLI::Range(0, 6));
  fuzz->add_option("--seed", fuzz_cfg.seed, "instance seed")->capture_default_str();
  fuzz->add_option("--colours", fuzz_cfg.colours, "1..3, or 0 to cycle")->capture_default_str()->check(
      CLI::Range(0, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "mjdef: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "dfncy") return run_dfncy(dfncy_args);
    if (name == "discard") return run_discard(discard_args);
    if (name == "blocks") return run_blocks(blocks_args);
    if (name == "census") return run_census(census_algo);
    if (name == "bench") return run_bench(bench_cfg, bench_algo, bench_out);
    return run_fuzz(fuzz_cfg);
  } catch (const std::exception& e) {
    std::cerr << "mjdef: " << e.what() << "\n";
    return kExitBadInput;
  }
}
