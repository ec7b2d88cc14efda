#include "epsnim/cgt.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>

namespace epsnim {

namespace {

void sort_unique(std::vector<GameId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string intern_key(const std::vector<GameId>& left, const std::vector<GameId>& right) {
  std::string key;
  key.resize((1 + left.size() + right.size()) * sizeof(GameId));
  char* out = key.data();
  GameId n_left = static_cast<GameId>(left.size());
  std::memcpy(out, &n_left, sizeof(GameId));
  out += sizeof(GameId);
  std::memcpy(out, left.data(), left.size() * sizeof(GameId));
  out += left.size() * sizeof(GameId);
  std::memcpy(out, right.data(), right.size() * sizeof(GameId));
  return key;
}

constexpr std::size_t kOptionBudget = 65536;

}  // namespace

GameArena::GameArena() {
  nodes_.push_back({});  // id 0 is {|}
  intern_table_.emplace(intern_key({}, {}), 0);
}

GameId GameArena::intern(std::vector<GameId> left, std::vector<GameId> right) {
  sort_unique(left);
  sort_unique(right);
  std::string key = intern_key(left, right);
  auto it = intern_table_.find(key);
  if (it != intern_table_.end()) return it->second;
  if (nodes_.size() >= node_budget_) {
    throw budget_error("canonical-form budget of " + std::to_string(node_budget_) + " nodes exceeded");
  }
  GameId id = static_cast<GameId>(nodes_.size());
  nodes_.push_back({std::move(left), std::move(right), kNoId});
  intern_table_.emplace(std::move(key), id);
  return id;
}

GameId GameArena::one() {
  if (one_ == kNoId) one_ = make({zero()}, {});
  return one_;
}

GameId GameArena::neg_one() {
  if (neg_one_ == kNoId) neg_one_ = make({}, {zero()});
  return neg_one_;
}

GameId GameArena::star() {
  if (star_ == kNoId) star_ = make({zero()}, {zero()});
  return star_;
}

bool GameArena::leq(GameId g, GameId h) {
  if (g == h) return true;
  const std::uint64_t key = static_cast<std::uint64_t>(g) << 32 | h;
  auto it = leq_memo_.find(key);
  if (it != leq_memo_.end()) return it->second != 0;

  // g <= h unless some left option of g is >= h, or some right option of h
  // is <= g.
  bool result = true;
  for (GameId gl : nodes_[g].left) {
    if (leq(h, gl)) {
      result = false;
      break;
    }
  }
  if (result) {
    for (GameId hr : nodes_[h].right) {
      if (leq(hr, g)) {
        result = false;
        break;
      }
    }
  }
  leq_memo_.emplace(key, result ? 1 : 0);
  return result;
}

bool GameArena::leq_id_raw(GameId g, const RawGame& h) {
  for (GameId gl : nodes_[g].left) {
    if (leq_raw_id(h, gl)) return false;
  }
  for (GameId hr : h.right) {
    if (leq(hr, g)) return false;
  }
  return true;
}

bool GameArena::leq_raw_id(const RawGame& g, GameId h) {
  for (GameId gl : g.left) {
    if (leq(h, gl)) return false;
  }
  for (GameId hr : nodes_[h].right) {
    if (leq_id_raw(hr, g)) return false;
  }
  return true;
}

GameId GameArena::make(std::vector<GameId> left, std::vector<GameId> right) {
  sort_unique(left);
  sort_unique(right);

  // Interned options are unique canonical forms, so distinct ids are never
  // equal as games: domination is strict and ties cannot arise.
  auto drop_dominated = [&](std::vector<GameId>& opts, bool left_side) {
    std::vector<GameId> kept;
    for (GameId a : opts) {
      bool dominated = false;
      for (GameId b : opts) {
        if (a == b) continue;
        if (left_side ? leq(a, b) : leq(b, a)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(a);
    }
    bool changed = kept.size() != opts.size();
    opts = std::move(kept);
    return changed;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    if (left.size() + right.size() > kOptionBudget) {
      throw budget_error("per-game option budget exceeded");
    }
    drop_dominated(left, true);
    drop_dominated(right, false);

    const RawGame raw{left, right};
    // A left option is reversible when one of its right options is <= the
    // whole game; it then contributes exactly that option's left options.
    for (std::size_t i = 0; i < left.size() && !progress; ++i) {
      for (GameId through : nodes_[left[i]].right) {
        if (leq_id_raw(through, raw)) {
          std::vector<GameId> replacement(nodes_[through].left.begin(), nodes_[through].left.end());
          left.erase(left.begin() + static_cast<std::ptrdiff_t>(i));
          left.insert(left.end(), replacement.begin(), replacement.end());
          sort_unique(left);
          progress = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < right.size() && !progress; ++i) {
      for (GameId through : nodes_[right[i]].left) {
        if (leq_raw_id(raw, through)) {
          std::vector<GameId> replacement(nodes_[through].right.begin(), nodes_[through].right.end());
          right.erase(right.begin() + static_cast<std::ptrdiff_t>(i));
          right.insert(right.end(), replacement.begin(), replacement.end());
          sort_unique(right);
          progress = true;
          break;
        }
      }
    }
  }
  return intern(std::move(left), std::move(right));
}

GameId GameArena::negate(GameId g) {
  if (nodes_[g].negation != kNoId) return nodes_[g].negation;
  // Copy the option lists: recursion may reallocate nodes_.
  std::vector<GameId> gl(nodes_[g].left), gr(nodes_[g].right);
  std::vector<GameId> nl, nr;
  nl.reserve(gr.size());
  nr.reserve(gl.size());
  for (GameId r : gr) nl.push_back(negate(r));
  for (GameId l : gl) nr.push_back(negate(l));
  // The negation of a canonical form is canonical, so intern directly.
  GameId ng = intern(std::move(nl), std::move(nr));
  nodes_[g].negation = ng;
  nodes_[ng].negation = g;
  return ng;
}

GameId GameArena::sum(GameId g, GameId h) {
  if (g == zero()) return h;
  if (h == zero()) return g;
  const std::uint64_t key = g <= h ? (static_cast<std::uint64_t>(g) << 32 | h)
                                   : (static_cast<std::uint64_t>(h) << 32 | g);
  auto it = sum_memo_.find(key);
  if (it != sum_memo_.end()) return it->second;

  std::vector<GameId> gls(nodes_[g].left), grs(nodes_[g].right);
  std::vector<GameId> hls(nodes_[h].left), hrs(nodes_[h].right);
  std::vector<GameId> left, right;
  left.reserve(gls.size() + hls.size());
  right.reserve(grs.size() + hrs.size());
  for (GameId gl : gls) left.push_back(sum(gl, h));
  for (GameId hl : hls) left.push_back(sum(g, hl));
  for (GameId gr : grs) right.push_back(sum(gr, h));
  for (GameId hr : hrs) right.push_back(sum(g, hr));
  GameId out = make(std::move(left), std::move(right));
  sum_memo_.emplace(key, out);
  return out;
}

Outcome GameArena::outcome(GameId g) {
  bool ge_zero = leq(zero(), g);
  bool le_zero = leq(g, zero());
  if (ge_zero && le_zero) return Outcome::P;
  if (ge_zero) return Outcome::L;
  if (le_zero) return Outcome::R;
  return Outcome::N;
}

std::string GameArena::bracket(GameId g) const {
  std::unordered_map<GameId, std::string> memo;
  auto render = [&](auto&& self, GameId id) -> const std::string& {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    std::string text = "{";
    const Node& node = nodes_[id];
    for (std::size_t i = 0; i < node.left.size(); ++i) {
      if (i) text += ',';
      text += self(self, node.left[i]);
    }
    text += '|';
    for (std::size_t i = 0; i < node.right.size(); ++i) {
      if (i) text += ',';
      text += self(self, node.right[i]);
    }
    text += '}';
    return memo.emplace(id, std::move(text)).first->second;
  };
  return render(render, g);
}

nlohmann::json GameArena::dag_json(GameId g) const {
  std::unordered_map<GameId, std::size_t> local;
  nlohmann::json nodes = nlohmann::json::array();
  auto visit = [&](auto&& self, GameId id) -> std::size_t {
    auto it = local.find(id);
    if (it != local.end()) return it->second;
    const Node& node = nodes_[id];
    nlohmann::json left = nlohmann::json::array();
    nlohmann::json right = nlohmann::json::array();
    for (GameId l : node.left) left.push_back(self(self, l));
    for (GameId r : node.right) right.push_back(self(self, r));
    std::size_t idx = nodes.size();
    nodes.push_back({{"id", idx}, {"left", std::move(left)}, {"right", std::move(right)}});
    local.emplace(id, idx);
    return idx;
  };
  std::size_t root = visit(visit, g);
  return nlohmann::json{{"root", root}, {"nodes", std::move(nodes)}};
}

ValueSequence::ValueSequence(GameSpec spec) : spec_(std::move(spec)) {
  for (std::int64_t m = 0; m < spec_.set().min(); ++m) {
    Outcome t = spec_.terminal().at(m);
    if (t != Outcome::L && t != Outcome::R) {
      throw std::invalid_argument("value normalization needs terminals in {L, R}");
    }
  }
}

void ValueSequence::extend_to(std::int64_t count) {
  const std::int64_t min_s = spec_.set().min();
  for (std::int64_t n = size(); n < count; ++n) {
    if (n < min_s) {
      values_.push_back(spec_.terminal().at(n) == Outcome::L ? arena_.one() : arena_.neg_one());
      continue;
    }
    std::vector<GameId> opts;
    for (std::int64_t s : spec_.set().members_up_to(n)) {
      opts.push_back(values_[static_cast<std::size_t>(n - s)]);
    }
    sort_unique(opts);
    std::vector<GameId> opts_copy = opts;
    values_.push_back(arena_.make(std::move(opts), std::move(opts_copy)));
  }
}

GameId ValueSequence::value(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("position must be >= 0");
  extend_to(n + 1);
  return values_[static_cast<std::size_t>(n)];
}

Outcome ValueSequence::value_outcome(std::int64_t n) { return arena_.outcome(value(n)); }

std::string ValueSequence::bracket(std::int64_t n) { return arena_.bracket(value(n)); }

ValuePeriodCheck ValueSequence::check_period(std::int64_t p, std::int64_t window,
                                             std::int64_t search_limit) {
  if (p < 1 || window < 0 || search_limit < 0) throw std::invalid_argument("bad period-check arguments");
  extend_to(search_limit + window + p + 1);
  std::int64_t last_mismatch = -1;
  for (std::int64_t n = 0; n <= search_limit + window; ++n) {
    if (values_[static_cast<std::size_t>(n)] != values_[static_cast<std::size_t>(n + p)]) {
      last_mismatch = n;
    }
  }
  for (std::int64_t a = 0; a <= search_limit; ++a) {
    if (last_mismatch < a) return {true, a, -1};
    if (last_mismatch <= a + window) {
      // A window starting here still sees the mismatch; later windows that
      // clear it are handled by the first branch.
      continue;
    }
    bool ok = true;
    for (std::int64_t n = a; n <= a + window; ++n) {
      if (values_[static_cast<std::size_t>(n)] != values_[static_cast<std::size_t>(n + p)]) {
        ok = false;
        break;
      }
    }
    if (ok) return {true, a, -1};
  }
  return {false, -1, last_mismatch};
}

Outcome ValueSequence::difference_outcome(std::span<const DiffTerm> terms, std::int64_t n) {
  GameId total = arena_.zero();
  for (const DiffTerm& term : terms) {
    std::int64_t pos = n + term.offset;
    if (pos < 0) throw std::invalid_argument("difference term reaches below position 0");
    GameId base = value(pos);
    if (term.multiplier < 0) base = arena_.negate(base);
    for (std::int64_t k = 0; k < std::abs(term.multiplier); ++k) total = arena_.sum(total, base);
  }
  return arena_.outcome(total);
}

}  // namespace epsnim
