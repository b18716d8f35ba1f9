// Deficiency-driven discard heuristic: a tile is worth discarding in
// proportion to how many available tiles would replace it and lower the
// deficiency.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mjdef/oracle.hpp"
#include "mjdef/tiles.hpp"

namespace mjdef {

enum class Backend { Oracle, Quadtree, Block };

std::string to_string(Backend b);
// Accepts "oracle", "quadtree" and "block"; throws ParseError otherwise.
Backend parse_backend(std::string_view name);

// Knowledge-aware deficiency of a 14-3k or 13-3k hand through the chosen
// backend. oracle_cap only applies to the oracle.
int deficiency(const Hand& hand, const KnowledgeBase& kb, Backend backend, int oracle_cap = kDefaultOracleCap);

struct DiscardReport {
  int dfncy = kIncompletable;                 // deficiency of the hand itself
  std::vector<std::pair<Tile, int>> values;   // (distinct hand tile, delta), canonical order
  std::optional<Tile> chosen;                 // empty when the hand is already complete
};

// delta(t) = sum of kb(t') over tiles t' whose replacement of one copy of t
// lowers the deficiency. The chosen tile maximises delta; ties go to the
// smallest tile. A complete hand gets no recommendation and no values.
DiscardReport discard_values(const Hand& hand, const KnowledgeBase& kb, Backend backend,
                             int oracle_cap = kDefaultOracleCap);

}  // namespace mjdef
