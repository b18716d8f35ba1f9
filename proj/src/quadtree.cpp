#include "mjdef/quadtree.hpp"

#include <algorithm>
#include <unordered_map>

namespace mjdef {

namespace {

// ---------------------------------------------------------------------------
// Holder completion: choose, for every holder, the tiles borrowed from the
// knowledge base (and optionally one seed tile recycled from the remainder)
// so that the holder becomes a meld / the eye, minimising the total borrowed.

struct Option {
  std::int8_t add[3] = {-1, -1, -1};
  std::int8_t nadd = 0;
  std::int8_t seed = -1;  // remainder kind recycled into an empty holder
};

struct HolderSpec {
  std::vector<Option> options;  // sorted by nadd
  int key = -1;                 // identical consecutive specs share a key (symmetry breaking)
};

bool same_colour(int a, int b) { return a / kRanks == b / kRanks; }

Option make_option(std::initializer_list<int> add, int seed = -1) {
  Option o;
  for (int k : add) o.add[o.nadd++] = static_cast<std::int8_t>(k);
  o.seed = static_cast<std::int8_t>(seed);
  return o;
}

// Every meld (as a list of kinds) that contains kind t.
void melds_containing(int t, std::vector<std::array<int, 3>>& out) {
  out.push_back({t, t, t});
  const int r = t % kRanks;
  for (int start = r - 2; start <= r; ++start) {
    if (start < 0 || start + 2 >= kRanks) continue;
    const int base = t - r + start;
    out.push_back({base, base + 1, base + 2});
  }
}

// Options for a holder with the given content (kinds). Empty holders get seed
// options from the remainder kinds listed in `rem` and scratch options.
std::vector<Option> holder_options(const std::vector<int>& content, bool eye, const Counts& rem) {
  std::vector<Option> opts;
  const int n = static_cast<int>(content.size());
  if (eye) {
    if (n == 2) {
      if (content[0] == content[1]) opts.push_back(make_option({}));
    } else if (n == 1) {
      opts.push_back(make_option({content[0]}));
    } else if (n == 0) {
      for (int r = 0; r < kKinds; ++r) {
        if (rem[r]) opts.push_back(make_option({r}, r));
      }
      for (int t = 0; t < kKinds; ++t) opts.push_back(make_option({t, t}));
    }
    return opts;
  }
  if (n == 3) {
    std::array<int, 3> s = {content[0], content[1], content[2]};
    std::sort(s.begin(), s.end());
    const bool pong = s[0] == s[2];
    const bool chow = same_colour(s[0], s[2]) && s[1] == s[0] + 1 && s[2] == s[0] + 2;
    if (pong || chow) opts.push_back(make_option({}));
  } else if (n == 2) {
    const int a = std::min(content[0], content[1]);
    const int b = std::max(content[0], content[1]);
    if (a == b) {
      opts.push_back(make_option({a}));
    } else if (same_colour(a, b) && b - a == 1) {
      if (a % kRanks >= 1) opts.push_back(make_option({a - 1}));
      if (b % kRanks <= kRanks - 2) opts.push_back(make_option({b + 1}));
    } else if (same_colour(a, b) && b - a == 2) {
      opts.push_back(make_option({a + 1}));
    }
  } else if (n == 1) {
    std::vector<std::array<int, 3>> melds;
    melds_containing(content[0], melds);
    for (auto m : melds) {
      // Remove one copy of the held tile; borrow the other two.
      auto it = std::find(m.begin(), m.end(), content[0]);
      std::vector<int> rest;
      for (auto j = m.begin(); j != m.end(); ++j) {
        if (j != it) rest.push_back(*j);
      }
      opts.push_back(make_option({rest[0], rest[1]}));
    }
  } else if (n == 0) {
    std::vector<std::array<int, 3>> melds;
    for (int r = 0; r < kKinds; ++r) {
      if (!rem[r]) continue;
      melds.clear();
      melds_containing(r, melds);
      for (auto m : melds) {
        auto it = std::find(m.begin(), m.end(), r);
        std::vector<int> rest;
        for (auto j = m.begin(); j != m.end(); ++j) {
          if (j != it) rest.push_back(*j);
        }
        opts.push_back(make_option({rest[0], rest[1]}, r));
      }
    }
    for (int t = 0; t < kKinds; ++t) opts.push_back(make_option({t, t, t}));
    for (int c = 0; c < kColours; ++c) {
      for (int r = 0; r + 2 < kRanks; ++r) {
        const int t = kRanks * c + r;
        opts.push_back(make_option({t, t + 1, t + 2}));
      }
    }
  }
  std::stable_sort(opts.begin(), opts.end(), [](const Option& x, const Option& y) { return x.nadd < y.nadd; });
  return opts;
}

class Completer {
 public:
  Completer(const std::vector<HolderSpec>& specs, Counts kb, Counts rem)
      : specs_(specs), kb_(kb), rem_(rem), suffix_(specs.size() + 1, 0) {
    for (int i = static_cast<int>(specs.size()) - 1; i >= 0; --i) {
      const int lo = specs[i].options.empty() ? kIncompletable : specs[i].options.front().nadd;
      suffix_[i] = std::min(kIncompletable, suffix_[i + 1] + lo);
    }
  }

  // Minimal total borrowed below `budget`, or `budget` if none is cheaper.
  int solve(int budget) {
    best_ = budget;
    if (suffix_[0] < best_) dfs(0, 0, 0);
    return best_;
  }

 private:
  void dfs(std::size_t h, int cost, std::size_t first) {
    if (h == specs_.size()) {
      best_ = std::min(best_, cost);
      return;
    }
    if (cost + suffix_[h] >= best_) return;
    const auto& opts = specs_[h].options;
    const bool next_same = h + 1 < specs_.size() && specs_[h + 1].key >= 0 && specs_[h + 1].key == specs_[h].key;
    for (std::size_t i = first; i < opts.size(); ++i) {
      const Option& o = opts[i];
      if (cost + o.nadd + suffix_[h + 1] >= best_) break;  // options sorted by cost
      if (o.seed >= 0 && rem_[o.seed] == 0) continue;
      bool ok = true;
      int k = 0;
      for (; k < o.nadd; ++k) {
        if (kb_[o.add[k]] == 0) {
          ok = false;
          break;
        }
        --kb_[o.add[k]];
      }
      if (ok) {
        if (o.seed >= 0) --rem_[o.seed];
        dfs(h + 1, cost + o.nadd, next_same ? i : 0);
        if (o.seed >= 0) ++rem_[o.seed];
      }
      for (int j = 0; j < k; ++j) ++kb_[o.add[j]];
      if (best_ == suffix_[0]) return;  // cannot do better than the lower bound
    }
  }

  const std::vector<HolderSpec>& specs_;
  Counts kb_;
  Counts rem_;
  std::vector<int> suffix_;
  int best_ = kIncompletable;
};

// ---------------------------------------------------------------------------
// The search proper.

struct NodeKey {
  std::uint64_t w[4] = {0, 0, 0, 0};
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::uint64_t w : k.w) {
      h ^= w;
      h *= 0x100000001B3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

class QuadtreeSearch {
 public:
  QuadtreeSearch(const Hand& hand, const KnowledgeBase& kb, QuadtreeStats* stats)
      : meld_holders_(hand.melds_needed()), pend_(hand.counts()), kb_(kb.counts), stats_(stats) {
    pend_size_ = hand.size();
    // Empty-holder specs are reused at every leaf; build them once per shape.
  }

  int run() {
    dfs();
    return best_;
  }

 private:
  NodeKey key() const {
    NodeKey k;
    int bit = 0;
    auto push = [&](std::uint64_t v, int width) {
      k.w[bit / 64] |= v << (bit % 64);
      if (bit % 64 + width > 64) k.w[bit / 64 + 1] |= v >> (64 - bit % 64);
      bit += width;
    };
    for (int i = 0; i < kKinds; ++i) push(pend_[i], 3);
    for (int i = 0; i < kKinds; ++i) push(rem_[i], 3);
    for (int i = 0; i < kKinds; ++i) push(kb_[i], 3);
    push(static_cast<std::uint64_t>(used_), 3);
    push(eye_ ? 1 : 0, 1);
    return k;
  }

  void leaf() {
    if (stats_) ++stats_->leaves;
    const int a = meld_holders_ - used_;
    const int budget = best_ - g_;
    if (budget <= 0) return;
    std::vector<HolderSpec> specs;
    if (!eye_) {
      HolderSpec s;
      s.options = holder_options({}, true, rem_);
      specs.push_back(std::move(s));
    }
    if (a > 0) {
      HolderSpec s;
      s.options = holder_options({}, false, rem_);
      s.key = 1;
      for (int i = 0; i < a; ++i) specs.push_back(s);
    }
    Completer c(specs, kb_, rem_);
    const int extra = c.solve(budget);
    if (extra < budget) best_ = g_ + extra;
  }

  // Place `tiles` (kinds) from pending into a meld holder, borrowing `borrow`
  // (or -1) from the knowledge base, then recurse.
  void place_meld(std::initializer_list<int> tiles, int borrow) {
    for (int t : tiles) --pend_[t];
    pend_size_ -= static_cast<int>(tiles.size());
    if (borrow >= 0) {
      --kb_[borrow];
      ++g_;
    }
    ++used_;
    dfs();
    --used_;
    if (borrow >= 0) {
      ++kb_[borrow];
      --g_;
    }
    pend_size_ += static_cast<int>(tiles.size());
    for (int t : tiles) ++pend_[t];
  }

  // The pchow (a, b) with a < b placed alone, once per available completion.
  void place_pchow(int a, int b) {
    const int ra = a % kRanks;
    if (b == a + 1) {
      if (ra >= 1 && kb_[a - 1]) place_meld({a, b}, a - 1);
      if (ra + 2 < kRanks && kb_[a + 2]) place_meld({a, b}, a + 2);
    } else if (kb_[a + 1]) {
      place_meld({a, b}, a + 1);
    }
  }

  void dfs() {
    if (stats_) ++stats_->nodes;
    if (best_ <= g_) return;
    if (used_ == meld_holders_ && eye_) {
      best_ = g_;
      return;
    }
    if (pend_size_ == 0) {
      leaf();
      return;
    }
    const int a = meld_holders_ - used_;
    const int b = eye_ ? 0 : 1;
    const int rem_size = rem_total_;
    const int open_slots = 3 * a + 2 * b;
    const int lb = std::max(0, open_slots - pend_size_ - std::min(rem_size, a + b));
    if (g_ + lb >= best_) {
      if (stats_) ++stats_->bound_cuts;
      return;
    }
    const NodeKey k = key();
    auto [it, inserted] = memo_.try_emplace(k, static_cast<std::uint8_t>(g_));
    if (!inserted) {
      if (it->second <= g_) {
        if (stats_) ++stats_->memo_hits;
        return;
      }
      it->second = static_cast<std::uint8_t>(g_);
    }

    int i = 0;
    while (pend_[i] == 0) ++i;
    const int r = i % kRanks;
    const bool has1 = r + 1 < kRanks && pend_[i + 1] > 0;
    const bool has2 = r + 2 < kRanks && pend_[i + 2] > 0;
    const bool meld_free = used_ < meld_holders_;

    // (2) make chow: (t, t+, t++) intersected with the pending tiles.
    if (meld_free && (has1 || has2)) {
      if (has1 && has2) {
        place_meld({i, i + 1, i + 2}, -1);
      } else if (has1) {
        place_pchow(i, i + 1);
      } else {
        place_pchow(i, i + 2);
      }
      if (best_ == 0) return;
    }
    // (4) make pong: (ttt) intersected with the pending tiles, needs (tt).
    if (meld_free && pend_[i] >= 2) {
      if (pend_[i] >= 3) {
        place_meld({i, i, i}, -1);
      } else if (kb_[i]) {
        place_meld({i, i}, i);
      }
      if (best_ == 0) return;
    }
    // (3) make eye.
    if (!eye_ && pend_[i] >= 2) {
      pend_[i] -= 2;
      pend_size_ -= 2;
      eye_ = true;
      dfs();
      eye_ = false;
      pend_size_ += 2;
      pend_[i] += 2;
      if (best_ == 0) return;
    }
    // (5) pchow (t, t+) alone and (6) pchow (t, t++) alone; when the third
    // chow tile is not pending these coincide with action (2).
    if (meld_free && has1 && has2) {
      place_pchow(i, i + 1);
      if (best_ == 0) return;
      place_pchow(i, i + 2);
      if (best_ == 0) return;
    }
    // (1) pass: t goes to the remainder.
    --pend_[i];
    --pend_size_;
    ++rem_[i];
    ++rem_total_;
    dfs();
    --rem_total_;
    --rem_[i];
    ++pend_size_;
    ++pend_[i];
  }

  const int meld_holders_;
  Counts pend_;
  Counts rem_{};
  Counts kb_;
  int pend_size_ = 0;
  int rem_total_ = 0;
  int used_ = 0;
  bool eye_ = false;
  int g_ = 0;
  int best_ = kIncompletable;
  QuadtreeStats* stats_;
  std::unordered_map<NodeKey, std::uint8_t, NodeKeyHash> memo_;
};

}  // namespace

int pdcmp_cost(const PDcmp& pdcmp, const KnowledgeBase& kb, const Hand& hand) {
  require_compatible(hand, kb);
  Counts rem = hand.counts();
  for (const auto& holder : pdcmp.holders) {
    for (const Tile& t : holder) {
      if (rem[t.index()] == 0) throw std::invalid_argument("pre-decomposition is not drawn from the hand");
      --rem[t.index()];
    }
  }
  for (int h = hand.melds_needed(); h < 4; ++h) {
    if (!pdcmp.holders[h].empty()) {
      throw std::invalid_argument("meld holder " + std::to_string(h) + " is taken by a consolidated meld");
    }
  }
  std::vector<HolderSpec> specs;
  for (int h = 0; h < 5; ++h) {
    if (h < 4 && h >= hand.melds_needed()) continue;
    const auto& holder = pdcmp.holders[h];
    if ((h == 4 && holder.size() > 2) || holder.size() > 3) return kIncompletable;
    std::vector<int> content;
    for (const Tile& t : holder) content.push_back(t.index());
    HolderSpec s;
    s.options = holder_options(content, h == 4, rem);
    if (s.options.empty()) return kIncompletable;
    if (content.empty()) s.key = h == 4 ? 2 : 1;
    specs.push_back(std::move(s));
  }
  // Group identical empty meld holders so the symmetry breaking applies.
  std::stable_sort(specs.begin(), specs.end(), [](const HolderSpec& x, const HolderSpec& y) { return x.key < y.key; });
  Completer c(specs, kb.counts, rem);
  return c.solve(kIncompletable);
}

int quadtree_dfncy(const Hand& hand, const KnowledgeBase& kb, QuadtreeStats* stats) {
  require_compatible(hand, kb);
  QuadtreeSearch search(hand, kb, stats);
  return search.run();
}

}  // namespace mjdef
