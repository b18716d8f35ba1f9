#include "mjdef/block.hpp"

#include <algorithm>
#include <numeric>

namespace mjdef {

namespace {

bool pchow_completable(int a, int b, const int kb[kRanks]) {
  if (b == a + 1) return (a >= 1 && kb[a - 1] > 0) || (b + 1 < kRanks && kb[b + 1] > 0);
  return kb[a + 1] > 0;
}

// Ranks whose single tile grows into a meld given the ranks with at least one
// and at least two available copies (bit r for rank r).
unsigned meld_mask(unsigned avail, unsigned pairs) {
  const unsigned a = avail;
  return (pairs | ((a << 1) & (a << 2)) | ((a << 1) & (a >> 1)) | ((a >> 1) & (a >> 2))) & 0x1FFu;
}

// One suit of the knowledge base with its availability masks kept in step.
struct SuitKb {
  int cnt[kRanks] = {};
  unsigned avail = 0;  // ranks with a copy left
  unsigned pairs = 0;  // ranks with two copies left

  explicit SuitKb(const int kb[kRanks]) {
    for (int r = 0; r < kRanks; ++r) {
      cnt[r] = kb[r];
      if (kb[r] > 0) avail |= 1u << r;
      if (kb[r] >= 2) pairs |= 1u << r;
    }
  }
  void take(int r) {
    --cnt[r];
    if (cnt[r] == 0) avail &= ~(1u << r);
    if (cnt[r] == 1) pairs &= ~(1u << r);
  }
  void give(int r) {
    ++cnt[r];
    if (cnt[r] == 1) avail |= 1u << r;
    if (cnt[r] == 2) pairs |= 1u << r;
  }
  unsigned melds() const { return meld_mask(avail, pairs); }
};

// Remainder ranks present / present at least twice.
struct RemMasks {
  unsigned any = 0;
  unsigned multi = 0;

  explicit RemMasks(const int rem[kRanks]) {
    for (int r = 0; r < kRanks; ++r) {
      if (rem[r]) any |= 1u << r;
      if (rem[r] >= 2) multi |= 1u << r;
    }
  }
};

// Remainder attributes on a given KB: eye seed, meld seed, and whether an eye
// seed and a meld seed (distinct copies) fit together.
struct SeedFlags {
  bool re = false;
  bool rm = false;
  bool both = false;
};

SeedFlags seed_flags(const RemMasks& rem, const SuitKb& kb) {
  SeedFlags f;
  f.re = (rem.any & kb.avail) != 0;
  f.rm = (rem.any & kb.melds()) != 0;
  if (!f.re || !f.rm) return f;
  for (unsigned eyes = rem.any & kb.avail; eyes && !f.both; eyes &= eyes - 1) {
    const int r1 = __builtin_ctz(eyes);
    const unsigned bit = 1u << r1;
    // Drawing the eye's partner uses one copy of r1 from the KB and one
    // remainder copy; the meld seed needs another remainder tile.
    const unsigned avail = kb.cnt[r1] == 1 ? kb.avail & ~bit : kb.avail;
    const unsigned pairs = kb.cnt[r1] == 2 ? kb.pairs & ~bit : kb.pairs;
    const unsigned seeds = (rem.any & ~bit) | (rem.multi & bit);
    if (seeds & meld_mask(avail, pairs)) f.both = true;
  }
  return f;
}

struct LocalPart {
  PartKind kind;
  int a, b, c;  // ranks; c = -1 for two-tile parts
};

// At most five parts; a fixed buffer keeps the enumeration allocation-free.
struct PartList {
  LocalPart items[5];
  std::size_t count = 0;
  std::size_t size() const { return count; }
  const LocalPart& operator[](std::size_t i) const { return items[i]; }
  const LocalPart* begin() const { return items; }
  const LocalPart* end() const { return items + count; }
  void push_back(const LocalPart& p) { items[count++] = p; }
  void pop_back() { --count; }
};

// Ranks that turn the pmeld into a meld.
int completions(const LocalPart& part, int out[2]) {
  if (part.kind == PartKind::Pair) {
    out[0] = part.a;
    return 1;
  }
  if (part.b == part.a + 2) {
    out[0] = part.a + 1;
    return 1;
  }
  int k = 0;
  if (part.a >= 1) out[k++] = part.a - 1;
  if (part.b + 1 < kRanks) out[k++] = part.b + 1;
  return k;
}

// Calls f(kb) for every way of completing all pmelds except part `skip`, each
// drawing its own tile from kb; f returns true to stop. Returns true if stopped.
template <typename F>
bool for_each_completion(const PartList& parts, std::size_t i, std::size_t skip, SuitKb& kb, F&& f) {
  while (i < parts.size() && (i == skip || parts[i].kind == PartKind::Meld)) ++i;
  if (i == parts.size()) return f(static_cast<const SuitKb&>(kb));
  int opts[2];
  const int k = completions(parts[i], opts);
  for (int j = 0; j < k; ++j) {
    if (kb.cnt[opts[j]] == 0) continue;
    kb.take(opts[j]);
    const bool stop = for_each_completion(parts, i + 1, skip, kb, f);
    kb.give(opts[j]);
    if (stop) return true;
  }
  return false;
}

void count_parts(const PartList& parts, TypeTuple& t) {
  for (const LocalPart& part : parts) {
    if (part.kind == PartKind::Meld) {
      ++t.m;
    } else {
      ++t.n;
      if (part.kind == PartKind::Pair) ++t.p;
    }
  }
}

// Plain attributes: every KB requirement is checked on the untouched KB.
TypeTuple classify_plain(const PartList& parts, const int rem[kRanks], const int kb[kRanks]) {
  TypeTuple t;
  count_parts(parts, t);
  for (const LocalPart& part : parts) {
    if (part.kind == PartKind::Pair && kb[part.a] == 0) ++t.e;
  }
  const SeedFlags f = seed_flags(RemMasks(rem), SuitKb(kb));
  t.re = f.re;
  t.rm = f.rm;
  t.em = (t.e == 0 && f.re && f.rm && !f.both) ? 1 : 0;
  return t;
}

// Consumption-aware attributes; false when the pmelds cannot be completed
// together even leaving one pair out.
bool classify_refined(const PartList& parts, const int rem[kRanks], SuitKb& kb, RefinedType& out) {
  out = RefinedType{};
  TypeTuple& t = out.t;
  count_parts(parts, t);
  const RemMasks rem_masks(rem);
  bool completable = false;
  bool both = false;
  auto absorb = [&](const SuitKb& res) {
    const SeedFlags f = seed_flags(rem_masks, res);
    t.re |= f.re;
    t.rm |= f.rm;
    both |= f.both;
    out.ke |= res.pairs != 0;
    return t.re && t.rm && both && out.ke;
  };
  for_each_completion(parts, 0, parts.size(), kb, [&](const SuitKb& res) {
    completable = true;
    return absorb(res);
  });
  if (completable) {
    // rmx only matters while no remainder meld fits outright; it stays 0
    // otherwise so that equivalent types coincide.
    const unsigned rem_mask = t.rm ? 0u : rem_masks.any;
    for (std::size_t i = 0; i < parts.size() && !out.rmx && rem_mask; ++i) {
      if (parts[i].kind != PartKind::Pair) continue;
      for_each_completion(parts, 0, i, kb, [&](const SuitKb& res) {
        if (rem_mask & res.melds()) out.rmx = 1;
        return out.rmx == 1;
      });
    }
    t.em = (t.re && t.rm && !both) ? 1 : 0;
    return true;
  }
  // Not completable together: some pair has to stay uncompleted as the eye.
  bool eye_found = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].kind != PartKind::Pair) continue;
    for_each_completion(parts, 0, i, kb, [&](const SuitKb& res) {
      eye_found = true;
      return absorb(res);
    });
  }
  if (!eye_found) return false;
  t.e = 1;
  t.em = 0;
  return true;
}

enum Action : int { kPass = 0, kPong, kChow, kPair, kPChow1, kPChow2 };

// Leftmost-tile enumeration of the candidate qDCMPs of one suit's tiles.
// Copies of the same kind take their actions in non-increasing order so every
// candidate is produced once. The sink receives (parts, remainder).
template <typename Sink>
class QdcmpWalker {
 public:
  QdcmpWalker(const int cnt[kRanks], const int kb[kRanks], const BlockOptions& opts, Sink& sink)
      : opts_(opts), sink_(sink) {
    std::copy(cnt, cnt + kRanks, cnt_);
    std::copy(kb, kb + kRanks, kb_);
  }

  void run() { dfs(-1, kPChow2); }

 private:
  bool dominated_pchow() const {
    for (const LocalPart& part : parts_) {
      if (part.kind != PartKind::PChow) continue;
      int opts[2];
      const int k = completions(part, opts);
      bool any = false;
      bool outside = false;
      for (int j = 0; j < k; ++j) {
        if (kb_[opts[j]] == 0) continue;
        any = true;
        if (rem_[opts[j]] == 0) outside = true;
      }
      if (any && !outside) return true;
    }
    return false;
  }

  void leaf() {
    if (m_ + n_ == 5 && p_ == 0) return;
    if (opts_.prune_remainder_completions && dominated_pchow()) return;
    sink_(parts_, static_cast<const int*>(rem_));
  }

  void push(PartKind kind, int a, int b, int c, int rank, int action) {
    cnt_[a]--;
    cnt_[b]--;
    if (c >= 0) cnt_[c]--;
    parts_.push_back({kind, a, b, c});
    dfs(rank, action);
    parts_.pop_back();
    if (c >= 0) cnt_[c]++;
    cnt_[b]++;
    cnt_[a]++;
  }

  void dfs(int prev_rank, int prev_action) {
    // Every action removes the leftmost tile, so the scan resumes there.
    int r = std::max(prev_rank, 0);
    while (r < kRanks && cnt_[r] == 0) ++r;
    if (r == kRanks) {
      leaf();
      return;
    }
    const int limit = r == prev_rank ? prev_action : kPChow2;
    const bool room = m_ + n_ < 5;
    if (room && limit >= kPChow2 && r + 2 < kRanks && cnt_[r + 2] && kb_[r + 1] > 0) {
      ++n_;
      push(PartKind::PChow, r, r + 2, -1, r, kPChow2);
      --n_;
    }
    if (room && limit >= kPChow1 && r + 1 < kRanks && cnt_[r + 1] && pchow_completable(r, r + 1, kb_)) {
      ++n_;
      push(PartKind::PChow, r, r + 1, -1, r, kPChow1);
      --n_;
    }
    if (room && limit >= kPair && cnt_[r] >= 2) {
      const int dead = kb_[r] == 0 ? 1 : 0;
      if (e_ + dead <= 1) {
        ++n_;
        ++p_;
        e_ += dead;
        push(PartKind::Pair, r, r, -1, r, kPair);
        e_ -= dead;
        --p_;
        --n_;
      }
    }
    if (room && limit >= kChow && r + 2 < kRanks && cnt_[r + 1] && cnt_[r + 2]) {
      ++m_;
      push(PartKind::Meld, r, r + 1, r + 2, r, kChow);
      --m_;
    }
    if (room && limit >= kPong && cnt_[r] >= 3) {
      ++m_;
      push(PartKind::Meld, r, r, r, r, kPong);
      --m_;
    }
    // Pass: the tile joins the remainder.
    cnt_[r]--;
    rem_[r]++;
    dfs(r, kPass);
    rem_[r]--;
    cnt_[r]++;
  }

  const BlockOptions& opts_;
  Sink& sink_;
  int cnt_[kRanks];
  int kb_[kRanks];
  int rem_[kRanks] = {};
  PartList parts_;
  int m_ = 0, n_ = 0, p_ = 0, e_ = 0;
};

void suit_kb(const KnowledgeBase& kb, int colour, int kbs[kRanks]) {
  for (int r = 0; r < kRanks; ++r) kbs[r] = kb.counts[kRanks * colour + r];
}

void suit_arrays(const Block& block, const KnowledgeBase& kb, int cnt[kRanks], int kbs[kRanks]) {
  std::fill(cnt, cnt + kRanks, 0);
  for (const Tile& t : block.tiles) {
    if (t.colour != block.colour) throw std::invalid_argument("block mixes colours");
    ++cnt[t.rank - 1];
  }
  suit_kb(kb, block.colour, kbs);
}

bool jointly_valid(const PartList& parts, const int kb_in[kRanks]) {
  SuitKb kb(kb_in);
  auto found = [](const SuitKb&) { return true; };
  if (for_each_completion(parts, 0, parts.size(), kb, found)) return true;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].kind == PartKind::Pair && for_each_completion(parts, 0, i, kb, found)) return true;
  }
  return false;
}

// Dense indices of type tuples, used to deduplicate quickly.
int type_index(const TypeTuple& t) {
  return ((((t.m * 6 + t.n) * 6 + t.p) * 2 + t.e) * 2 + t.re) * 4 + t.rm * 2 + t.em;
}
int type_index(const RefinedType& t) { return (type_index(t.t) * 2 + t.rmx) * 2 + t.ke; }
constexpr int kRefinedIndices = 6 * 6 * 6 * 2 * 2 * 4 * 2 * 2;

// Set of refined type indices that is emptied in O(1) by bumping a generation.
class TypeIndexSet {
 public:
  TypeIndexSet() {
    if (++generation_ == 0) {
      stamps_.fill(0);
      generation_ = 1;
    }
  }
  // True when the index was not yet present.
  bool insert(int index) {
    if (stamps_[index] == generation_) return false;
    stamps_[index] = generation_;
    return true;
  }

 private:
  static thread_local std::array<std::uint32_t, kRefinedIndices> stamps_;
  static thread_local std::uint32_t generation_;
};

thread_local std::array<std::uint32_t, kRefinedIndices> TypeIndexSet::stamps_{};
thread_local std::uint32_t TypeIndexSet::generation_ = 0;

bool dominates(const TypeTuple& a, const TypeTuple& b) {
  // a is at least as good as b in every attribute that lowers the cost.
  return a.m >= b.m && a.n >= b.n && a.p >= b.p && a.e <= b.e && a.re >= b.re && a.rm >= b.rm && a.em <= b.em;
}

bool dominates_refined(const RefinedType& a, const RefinedType& b) {
  return dominates(a.t, b.t) && a.rmx >= b.rmx && a.ke >= b.ke;
}

template <typename T>
void drop_dominated(std::vector<T>& types, bool (*dom)(const T&, const T&)) {
  std::vector<T> kept;
  for (const T& t : types) {
    const bool dominated =
        std::any_of(types.begin(), types.end(), [&](const T& u) { return u != t && dom(u, t); });
    if (!dominated) kept.push_back(t);
  }
  types.swap(kept);
}

// Combination rule shared by both type flavours; false when the pair is
// dropped (two forced eyes, too many parts, or five parts without a pair).
bool join_one(const TypeTuple& x, const TypeTuple& y, TypeTuple& z) {
  z.m = x.m + y.m;
  z.n = x.n + y.n;
  z.p = x.p + y.p;
  z.e = x.e + y.e;
  if (z.e > 1 || z.m + z.n > 5 || (z.m + z.n == 5 && z.p == 0)) return false;
  z.re = std::max(x.re, y.re);
  z.rm = std::max(x.rm, y.rm);
  z.em = ((x.em == 1 && y.re == 0 && y.rm == 0) || (y.em == 1 && x.re == 0 && x.rm == 0)) ? 1 : 0;
  return true;
}

int find(std::array<int, kKinds>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::string to_string(const Block& b) {
  std::string s = "(";
  for (const Tile& t : b.tiles) s += to_string(t);
  return s + ")";
}

std::string to_string(const QDcmp& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.parts.size(); ++i) {
    if (i) s += ",";
    s += "(";
    for (const Tile& t : q.parts[i].tiles) s += to_string(t);
    s += ")";
  }
  s += ") rem=";
  for (const Tile& t : q.remainder) s += to_string(t);
  return s;
}

std::string to_string(const TypeTuple& t) {
  return "(" + std::to_string(t.m) + "," + std::to_string(t.n) + "," + std::to_string(t.p) + "," +
         std::to_string(t.e) + "," + std::to_string(t.re) + "," + std::to_string(t.rm) + "," +
         std::to_string(t.em) + ")";
}

KbFlags kb_flags(const KnowledgeBase& kb) { return {kb.has_pair(), kb.has_meld()}; }

std::vector<Block> kb_blocks(const Hand& hand, const KnowledgeBase& kb) {
  require_compatible(hand, kb);
  const Counts& h = hand.counts();
  auto present = [&](int c, int r) {
    return r >= 0 && r < kRanks && (h[kRanks * c + r] > 0 || kb.counts[kRanks * c + r] > 0);
  };
  std::array<int, kKinds> parent;
  std::iota(parent.begin(), parent.end(), 0);
  for (int c = 0; c < kColours; ++c) {
    for (int r = 0; r < kRanks; ++r) {
      const int a = kRanks * c + r;
      if (!h[a]) continue;
      // Adjacent ranks: a chow needs the tile below or above the two.
      if (r + 1 < kRanks && h[a + 1] && (present(c, r - 1) || present(c, r + 2))) {
        parent[find(parent, a)] = find(parent, a + 1);
      }
      // Ranks two apart: a chow needs the middle tile.
      if (r + 2 < kRanks && h[a + 2] && present(c, r + 1)) parent[find(parent, a)] = find(parent, a + 2);
    }
  }
  std::vector<Block> blocks;
  std::array<int, kKinds> slot;
  slot.fill(-1);
  for (const Tile& t : hand.tiles()) {  // sorted, so blocks come out by (colour, min rank)
    const int root = find(parent, t.index());
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(blocks.size());
      blocks.push_back(Block{t.colour, {}});
    }
    blocks[slot[root]].tiles.push_back(t);
  }
  return blocks;
}

std::vector<QDcmp> enumerate_qdcmps(const Block& block, const KnowledgeBase& kb, const BlockOptions& opts) {
  int cnt[kRanks];
  int kbs[kRanks];
  suit_arrays(block, kb, cnt, kbs);
  std::vector<QDcmp> out;
  auto sink = [&](const PartList& parts, const int* rem) {
    if (opts.consumption_aware && !jointly_valid(parts, kbs)) return;
    QDcmp q;
    for (const LocalPart& lp : parts) {
      Part p{lp.kind, {}};
      for (int r : {lp.a, lp.b, lp.c}) {
        if (r >= 0) p.tiles.push_back(Tile{block.colour, r + 1});
      }
      q.parts.push_back(std::move(p));
    }
    std::sort(q.parts.begin(), q.parts.end());
    for (int r = 0; r < kRanks; ++r) {
      for (int i = 0; i < rem[r]; ++i) q.remainder.push_back(Tile{block.colour, r + 1});
    }
    out.push_back(std::move(q));
  };
  QdcmpWalker<decltype(sink)> walker(cnt, kbs, opts, sink);
  walker.run();
  std::sort(out.begin(), out.end());
  return out;
}

TypeTuple type_of(const QDcmp& q, const Block& block, const KnowledgeBase& kb) {
  int cnt[kRanks];
  int kbs[kRanks];
  suit_arrays(block, kb, cnt, kbs);
  if (q.parts.size() > 5) throw std::invalid_argument("not a quasi-decomposition (too many parts): " + to_string(q));
  PartList parts;
  for (const Part& part : q.parts) {
    LocalPart lp{part.kind, part.tiles.at(0).rank - 1, part.tiles.at(1).rank - 1, -1};
    if (part.tiles.size() == 3) lp.c = part.tiles[2].rank - 1;
    if (part.kind == PartKind::PChow && !pchow_completable(lp.a, lp.b, kbs)) {
      throw std::invalid_argument("not a quasi-decomposition (incompletable pchow): " + to_string(q));
    }
    parts.push_back(lp);
  }
  int rem[kRanks] = {};
  for (const Tile& r : q.remainder) ++rem[r.rank - 1];
  const TypeTuple t = classify_plain(parts, rem, kbs);
  if (t.e > 1) throw std::invalid_argument("not a quasi-decomposition (two incompletable pairs): " + to_string(q));
  return t;
}

std::vector<TypeTuple> local_types(const Block& block, const KnowledgeBase& kb, const BlockOptions& opts) {
  int cnt[kRanks];
  int kbs[kRanks];
  suit_arrays(block, kb, cnt, kbs);
  std::vector<TypeTuple> out;
  std::vector<int> seen;
  auto sink = [&](const PartList& parts, const int* rem) {
    if (opts.consumption_aware && !jointly_valid(parts, kbs)) return;
    const TypeTuple t = classify_plain(parts, rem, kbs);
    const int key = type_index(t);
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      seen.push_back(key);
      out.push_back(t);
    }
  };
  QdcmpWalker<decltype(sink)> walker(cnt, kbs, opts, sink);
  walker.run();
  if (opts.dominance_pruning) drop_dominated<TypeTuple>(out, dominates);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TypeTuple> join_types(const std::vector<TypeTuple>& a, const std::vector<TypeTuple>& b) {
  std::vector<TypeTuple> out;
  for (const TypeTuple& x : a) {
    for (const TypeTuple& y : b) {
      TypeTuple z;
      if (join_one(x, y, z)) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Distinct refined types of one colour, appended to `out` in discovery order.
void append_colour_types(const Hand& hand, int colour, const KnowledgeBase& kb, const BlockOptions& opts,
                         std::vector<RefinedType>& out) {
  int cnt[kRanks];
  int kbs[kRanks];
  for (int r = 0; r < kRanks; ++r) cnt[r] = hand.counts()[kRanks * colour + r];
  suit_kb(kb, colour, kbs);
  TypeIndexSet seen;
  SuitKb suit(kbs);  // borrowed and restored by every classification
  auto sink = [&](const PartList& parts, const int* rem) {
    RefinedType t;
    if (classify_refined(parts, rem, suit, t) && seen.insert(type_index(t))) out.push_back(t);
  };
  QdcmpWalker<decltype(sink)> walker(cnt, kbs, opts, sink);
  walker.run();
  if (opts.dominance_pruning) drop_dominated<RefinedType>(out, dominates_refined);
}

bool join_refined_one(const RefinedType& x, const RefinedType& y, RefinedType& z) {
  if (!join_one(x.t, y.t, z.t)) return false;
  z.rmx = std::max(x.rmx, y.rmx);
  z.ke = std::max(x.ke, y.ke);
  return true;
}

// Distinct joins of a and b, written to `out` in discovery order.
void join_refined_into(const std::vector<RefinedType>& a, const std::vector<RefinedType>& b,
                       std::vector<RefinedType>& out) {
  out.clear();
  TypeIndexSet seen;
  for (const RefinedType& x : a) {
    for (const RefinedType& y : b) {
      RefinedType z;
      if (join_refined_one(x, y, z) && seen.insert(type_index(z))) out.push_back(z);
    }
  }
}

}  // namespace

std::vector<RefinedType> colour_types(const Hand& hand, int colour, const KnowledgeBase& kb,
                                      const BlockOptions& opts) {
  std::vector<RefinedType> out;
  append_colour_types(hand, colour, kb, opts, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RefinedType> join_refined(const std::vector<RefinedType>& a, const std::vector<RefinedType>& b) {
  std::vector<RefinedType> out;
  join_refined_into(a, b, out);
  std::sort(out.begin(), out.end());
  return out;
}

int decide_refined(const RefinedType& r, bool km) {
  TypeTuple t = r.t;
  // Without a forced eye, a pair may serve as the eye and free KB tiles for a
  // remainder meld in its own colour.
  if (t.e == 0 && r.rmx) t.rm = 1;
  return decide(t, r.ke != 0, km);
}

int decide(const TypeTuple& t, bool ke_flag, bool km_flag) {
  const int ke = ke_flag ? 1 : 0;
  const int km = km_flag ? 1 : 0;
  const int mn = t.m + t.n;
  // No eye can be formed.
  if (t.p == 0 && t.re == 0 && ke == 0) return kIncompletable;
  // Not enough melds, and neither an eye nor a meld can be grown.
  if (mn <= 4 && t.re == 0 && ke == 0 && t.rm == 0 && km == 0) return kIncompletable;
  // Some meld must be grown but nothing can supply it.
  if (mn - t.e <= 3 && t.rm == 0 && km == 0) return kIncompletable;
  // Eye and meld compete for the same remainder/KB tiles.
  if (mn <= 3 && t.p == 0 && ke == 0 && km == 0 && t.em == 1) return kIncompletable;

  if (mn > 4) return 4 - t.m;
  if (mn == 4) {
    return ((t.e == 0 && t.re == 1) || (t.p > 0 && t.rm == 1)) ? 4 - t.m + 1 : 4 - t.m + 2;
  }
  const int mcost = 2 * t.rm + 3 * (1 - t.rm);
  const int ecost = t.re + 2 * (1 - t.re);
  if (t.e == 1) return (t.n - 1) + mcost * (5 - mn);
  if (t.p == 0) return t.n + mcost * (4 - mn) + ecost + t.em;
  return std::min(t.n + mcost * (4 - mn) + ecost, t.n - 1 + mcost * (5 - mn));
}

int block_dfncy(const Hand& hand, const KnowledgeBase& kb, BlockStats* stats, const BlockOptions& opts) {
  require_compatible(hand, kb);
  const KbFlags flags = kb_flags(kb);
  int best = kIncompletable;
  if (opts.consumption_aware) {
    // Scratch buffers are reused across calls to keep this path allocation-free.
    thread_local std::vector<RefinedType> local[kColours];
    thread_local std::vector<RefinedType> acc;
    thread_local std::vector<RefinedType> next;
    for (int c = 0; c < kColours; ++c) {
      local[c].clear();
      append_colour_types(hand, c, kb, opts, local[c]);
      if (stats) {
        ++stats->blocks;
        stats->local_types += local[c].size();
      }
    }
    // Consolidated melds enter as extra melds in the seed of the fold.
    RefinedType seed;
    seed.t.m = hand.melds_fixed();
    acc.assign(1, seed);
    for (int c = 0; c + 1 < kColours; ++c) {
      join_refined_into(acc, local[c], next);
      acc.swap(next);
    }
    if (stats) {
      join_refined_into(acc, local[kColours - 1], next);
      stats->global_types += next.size();
    }
    // The last join is evaluated on the fly instead of being materialised.
    for (const RefinedType& x : acc) {
      for (const RefinedType& y : local[kColours - 1]) {
        RefinedType z;
        if (!join_refined_one(x, y, z)) continue;
        best = std::min(best, decide_refined(z, flags.km));
        if (best == 0) return 0;
      }
    }
    return best;
  }
  TypeTuple seed;
  seed.m = hand.melds_fixed();
  std::vector<TypeTuple> acc{seed};
  for (const Block& b : kb_blocks(hand, kb)) {
    const std::vector<TypeTuple> local = local_types(b, kb, opts);
    if (stats) {
      ++stats->blocks;
      stats->local_types += local.size();
    }
    acc = join_types(acc, local);
  }
  if (stats) stats->global_types += acc.size();
  for (const TypeTuple& t : acc) {
    best = std::min(best, decide(t, flags.ke, flags.km));
    if (best == 0) break;
  }
  return best;
}

}  // namespace mjdef
