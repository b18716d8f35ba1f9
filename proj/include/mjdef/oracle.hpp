// Reference knowledge-aware deficiency: literal breadth-first expansion of the
// recursive definition over (hand, knowledge base) states. Slow by design.
#pragma once

#include "mjdef/tiles.hpp"

namespace mjdef {

inline constexpr int kDefaultOracleCap = 6;

// Full-size hand (14 - 3k tiles). Returns the first BFS level holding a
// complete hand, or kIncompletable when none exists within `cap` levels.
int oracle_dfncy(const Hand& hand, const KnowledgeBase& kb, int cap = kDefaultOracleCap);

// Short hand (13 - 3k tiles): 1 + min over available draws t of
// oracle_dfncy(hand + t, kb - t, cap - 1).
int oracle_dfncy13(const Hand& hand, const KnowledgeBase& kb, int cap = kDefaultOracleCap);

// Dispatches on hand size.
int oracle_deficiency(const Hand& hand, const KnowledgeBase& kb, int cap = kDefaultOracleCap);

}  // namespace mjdef
