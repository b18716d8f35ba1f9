#include "mjdef/decision.hpp"

#include "mjdef/block.hpp"
#include "mjdef/quadtree.hpp"

namespace mjdef {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::Oracle:
      return "oracle";
    case Backend::Quadtree:
      return "quadtree";
    case Backend::Block:
      return "block";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "oracle") return Backend::Oracle;
  if (name == "quadtree") return Backend::Quadtree;
  if (name == "block") return Backend::Block;
  throw ParseError("unknown algorithm '" + std::string(name) + "' (expected block, quadtree or oracle)");
}

int deficiency(const Hand& hand, const KnowledgeBase& kb, Backend backend, int oracle_cap) {
  switch (backend) {
    case Backend::Oracle:
      return oracle_deficiency(hand, kb, oracle_cap);
    case Backend::Quadtree:
      return quadtree_dfncy(hand, kb);
    case Backend::Block:
      return block_dfncy(hand, kb);
  }
  return kIncompletable;
}

DiscardReport discard_values(const Hand& hand, const KnowledgeBase& kb, Backend backend, int oracle_cap) {
  require_compatible(hand, kb);
  DiscardReport report;
  report.dfncy = deficiency(hand, kb, backend, oracle_cap);
  if (report.dfncy == 0) return report;

  int best = -1;
  const Counts& counts = hand.counts();
  for (int out = 0; out < kKinds; ++out) {
    if (counts[out] == 0) continue;
    const Tile t = Tile::from_index(out);
    int delta = 0;
    for (int in = 0; in < kKinds; ++in) {
      if (in == out || kb.counts[in] == 0) continue;
      const auto [next_hand, next_kb] = replace_tile(hand, t, Tile::from_index(in), kb);
      int d;
      if (backend == Backend::Oracle) {
        // Only "lower than the current value" matters, so the search can stop
        // one level short of it.
        const int cap = report.dfncy == kIncompletable ? oracle_cap : report.dfncy - 1;
        if (cap < 0 || (!next_hand.is_full() && cap < 1)) continue;
        d = oracle_deficiency(next_hand, next_kb, cap);
      } else {
        d = deficiency(next_hand, next_kb, backend);
      }
      if (d < report.dfncy) delta += kb.counts[in];
    }
    report.values.emplace_back(t, delta);
    if (delta > best) {
      best = delta;
      report.chosen = t;
    }
  }
  return report;
}

}  // namespace mjdef
