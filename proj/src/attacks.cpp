#include "pcaag/attacks.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

using Clock = AttackOptions::Clock;
using Tuple = std::vector<GroupElement>;

struct TraceLink {
  std::shared_ptr<const TraceLink> prev;
  std::uint32_t index;
  int sign;
};
using Trace = std::shared_ptr<const TraceLink>;

// A conjugator over the public set: its letters and collected value.
struct Move {
  std::vector<KeyFactor> letters;
  GroupElement element;
  GroupElement inverse;
};

struct Node {
  Tuple tuple;
  Integer total;
  Trace trace;
  std::uint64_t seq = 0;
};

struct Key {
  Integer total;
  std::uint64_t seq;
  friend bool operator<(const Key& a, const Key& b) {
    if (auto c = a.total <=> b.total; c != 0) return c < 0;
    return a.seq < b.seq;
  }
};

struct HeapGreater {
  bool operator()(const Node& a, const Node& b) const {
    if (auto c = a.total <=> b.total; c != 0) return c > 0;
    return a.seq > b.seq;
  }
};

struct Timeout {};
struct Found {
  RecoveredKey key;
};

class Search {
 public:
  Search(const EavesdropperView& view, const AttackOptions& options)
      : view_(view), c_(*view.collector), options_(options), start_(Clock::now()) {
    if (view.collector == nullptr) throw InvalidParameter("attack view has no collector");
    if (view.bob_public.size() != view.bob_conjugated.size()) {
      throw InvalidParameter("public and conjugated tuples differ in size");
    }
    target_.assign(view.bob_public.begin(), view.bob_public.end());
    for (std::size_t i = 0; i < view.alice_public.size(); ++i) {
      for (int sign : {1, -1}) {
        GroupElement e = sign > 0 ? view.alice_public[i] : c_.invert(view.alice_public[i]);
        GroupElement inv = sign > 0 ? c_.invert(view.alice_public[i]) : view.alice_public[i];
        singles_.push_back(Move{{{i, sign}}, std::move(e), std::move(inv)});
      }
    }
  }

  AttackResult finish(Outcome outcome, std::optional<RecoveredKey> key = std::nullopt) {
    AttackResult r;
    r.outcome = outcome;
    r.recovered = std::move(key);
    r.stats = stats_;
    r.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return r;
  }

  template <typename Body>
  AttackResult run(Body&& body) {
    try {
      Tuple root(view_.bob_conjugated.begin(), view_.bob_conjugated.end());
      if (root == target_) throw Found{recover(nullptr, nullptr)};
      body(Node{std::move(root), tuple_length(view_.bob_conjugated), nullptr, next_seq()});
      return finish(Outcome::kFailExhausted);
    } catch (const Timeout&) {
      return finish(Outcome::kFailTimeout);
    } catch (Found& f) {
      return finish(Outcome::kSuccess, std::move(f.key));
    }
  }

  // c^m, counting one tuple conjugation and honouring the deadline.
  Tuple conjugate(const Tuple& c, const Move& m) {
    if (Clock::now() >= options_.deadline) throw Timeout{};
    ++stats_.conjugations;
    Tuple out;
    out.reserve(c.size());
    for (const auto& g : c) out.push_back(c_.conjugate(g, m.element, m.inverse));
    return out;
  }

  Trace extend(Trace t, const Move& m) const {
    for (const auto& f : m.letters) {
      t = std::make_shared<const TraceLink>(
          TraceLink{std::move(t), static_cast<std::uint32_t>(f.index), f.sign});
    }
    return t;
  }

  // Raises Found when c^m equals the target.
  void test_success(const Tuple& child, const Node& parent, const Move& m) {
    if (child == target_) throw Found{recover(parent.trace, &m)};
  }

  void expanded(const Node& node) {
    ++stats_.nodes_expanded;
    if (options_.check_trace_every != 0 && stats_.nodes_expanded % options_.check_trace_every == 0) {
      GroupElement x = evaluate_factors(c_, view_.alice_public, letters(node.trace, nullptr));
      GroupElement x_inv = c_.invert(x);
      for (std::size_t i = 0; i < node.tuple.size(); ++i) {
        if (c_.conjugate(view_.bob_conjugated[i], x, x_inv) != node.tuple[i]) {
          throw std::logic_error("search node tuple does not match its trace");
        }
      }
    }
  }

  void observe_size(std::size_t n) {
    stats_.peak_set_size = std::max<std::uint64_t>(stats_.peak_set_size, n);
  }

  std::uint64_t next_seq() { return seq_++; }

  const std::vector<Move>& singles() const { return singles_; }
  const Collector& collector() const { return c_; }
  const AttackOptions& options() const { return options_; }

  Move product(std::initializer_list<const Move*> parts) const {
    Move m{{}, c_.identity(), c_.identity()};
    for (const Move* p : parts) {
      m.letters.insert(m.letters.end(), p->letters.begin(), p->letters.end());
      m.element = c_.multiply(m.element, p->element);
    }
    m.inverse = c_.invert(m.element);
    return m;
  }

 private:
  std::vector<KeyFactor> letters(const Trace& trace, const Move* last) const {
    std::vector<KeyFactor> out;
    for (const TraceLink* l = trace.get(); l != nullptr; l = l->prev.get()) {
      out.push_back({l->index, l->sign});
    }
    std::reverse(out.begin(), out.end());
    if (last != nullptr) out.insert(out.end(), last->letters.begin(), last->letters.end());
    return out;
  }

  // A' is the inverse of the accumulated conjugator x.
  RecoveredKey recover(const Trace& trace, const Move* last) {
    std::vector<KeyFactor> x = letters(trace, last);
    std::vector<KeyFactor> a;
    for (auto it = x.rbegin(); it != x.rend(); ++it) a.push_back({it->index, -it->sign});
    RecoveredKey key;
    for (const auto& f : a) key.word.push_back(f.index, f.sign);
    key.element = evaluate_factors(c_, view_.alice_public, a);
    if (!verify_candidate(view_, key.element)) {
      throw std::logic_error("recovered conjugator fails verification");
    }
    return key;
  }

  const EavesdropperView& view_;
  const Collector& c_;
  AttackOptions options_;
  Clock::time_point start_;
  Tuple target_;
  std::vector<Move> singles_;
  AttackStats stats_;
  std::uint64_t seq_ = 0;
};

class MinHeap {
 public:
  void push(Node n) {
    nodes_.push_back(std::move(n));
    std::push_heap(nodes_.begin(), nodes_.end(), HeapGreater{});
  }
  Node pop() {
    std::pop_heap(nodes_.begin(), nodes_.end(), HeapGreater{});
    Node n = std::move(nodes_.back());
    nodes_.pop_back();
    return n;
  }
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
};

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kBacktrack: return "backtrack";
    case Variant::kDynamic: return "dynamic";
    case Variant::kMemory: return "memory";
    case Variant::kStar: return "star";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kSuccess: return "SUCCESS";
    case Outcome::kFailExhausted: return "FAIL_EXHAUSTED";
    case Outcome::kFailTimeout: return "FAIL_TIMEOUT";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "backtrack") return Variant::kBacktrack;
  if (text == "dynamic") return Variant::kDynamic;
  if (text == "memory") return Variant::kMemory;
  if (text == "star") return Variant::kStar;
  throw InvalidParameter("unknown variant '" + std::string(text) +
                         "' (expected backtrack, dynamic, memory or star)");
}

AttackOptions AttackOptions::with_timeout(double seconds) {
  AttackOptions o;
  if (seconds > 0 && seconds < 1e9) {
    o.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(seconds));
  }
  return o;
}

bool verify_candidate(const EavesdropperView& view, const GroupElement& candidate) {
  const Collector& c = *view.collector;
  if (view.bob_public.size() != view.bob_conjugated.size()) return false;
  GroupElement inv = c.invert(candidate);
  for (std::size_t i = 0; i < view.bob_public.size(); ++i) {
    if (c.conjugate(view.bob_public[i], candidate, inv) != view.bob_conjugated[i]) return false;
  }
  return true;
}

AttackResult lba_backtracking(const EavesdropperView& view, const AttackOptions& options) {
  Search s(view, options);
  return s.run([&](Node root) {
    MinHeap open;
    open.push(std::move(root));
    s.observe_size(1);
    while (!open.empty()) {
      Node node = open.pop();
      s.expanded(node);
      for (const Move& m : s.singles()) {
        Tuple child = s.conjugate(node.tuple, m);
        s.test_success(child, node, m);
        Integer total = tuple_length(child);
        if (total < node.total) {
          open.push(Node{std::move(child), std::move(total), s.extend(node.trace, m), s.next_seq()});
        }
      }
      s.observe_size(open.size());
    }
  });
}

AttackResult lba_dynamic_set(const EavesdropperView& view, const AttackOptions& options) {
  Search s(view, options);
  const auto& singles = s.singles();
  const std::size_t k = singles.size();
  auto index_of = [&](std::size_t slot) { return singles[slot].letters[0].index; };

  // Extension moves beyond the singles, built on first use.
  std::optional<std::vector<Move>> all_pairs;
  std::unordered_map<std::size_t, std::vector<Move>> around;
  auto pairs_set = [&]() -> const std::vector<Move>& {
    if (!all_pairs) {
      all_pairs.emplace();
      for (std::size_t i = 0; i < k; ++i) {
        const Move& xi_inv = singles[i ^ 1];
        for (std::size_t j = 0; j < k; ++j) {
          if (index_of(i) == index_of(j)) continue;
          all_pairs->push_back(s.product({&singles[i], &singles[j], &xi_inv}));
          all_pairs->push_back(s.product({&singles[i], &singles[j]}));
        }
      }
      for (std::size_t i = 0; i < k; ++i) all_pairs->push_back(s.product({&singles[i], &singles[i]}));
    }
    return *all_pairs;
  };
  auto around_set = [&](std::size_t m) -> const std::vector<Move>& {
    auto it = around.find(m);
    if (it != around.end()) return it->second;
    std::vector<Move> moves;
    const Move& xm = singles[m];
    for (std::size_t j = 0; j < k; ++j) {
      if (index_of(j) == index_of(m)) continue;
      const Move& xj = singles[j];
      moves.push_back(s.product({&xj, &xm, &singles[j ^ 1]}));
      moves.push_back(s.product({&xm, &xj}));
      moves.push_back(s.product({&xj, &xm}));
    }
    moves.push_back(s.product({&xm, &xm}));
    return around.emplace(m, std::move(moves)).first->second;
  };

  return s.run([&](Node root) {
    MinHeap open;
    open.push(std::move(root));
    s.observe_size(1);
    while (!open.empty()) {
      Node node = open.pop();
      s.expanded(node);
      std::vector<Tuple> single_children;
      std::vector<Integer> single_totals;
      std::size_t best = 0;
      Integer best_delta;
      for (std::size_t i = 0; i < k; ++i) {
        single_children.push_back(s.conjugate(node.tuple, singles[i]));
        single_totals.push_back(tuple_length(single_children.back()));
        Integer delta = node.total - single_totals.back();
        if (i == 0 || delta > best_delta) {
          best = i;
          best_delta = std::move(delta);
        }
      }
      const bool reduced = k > 0 && best_delta.sign() > 0;
      const std::vector<Move>& extra = reduced ? around_set(best) : pairs_set();
      const std::size_t total_moves = k + extra.size();

      auto consider = [&](std::size_t idx, Tuple child, Integer total, const Move& m) {
        const bool last = idx + 1 == total_moves;
        if (!s.options().literal_alg2 || last) s.test_success(child, node, m);
        if (total < node.total) {
          open.push(Node{std::move(child), std::move(total), s.extend(node.trace, m), s.next_seq()});
        }
      };
      for (std::size_t i = 0; i < k; ++i) {
        consider(i, std::move(single_children[i]), std::move(single_totals[i]), singles[i]);
      }
      for (std::size_t e = 0; e < extra.size(); ++e) {
        Tuple child = s.conjugate(node.tuple, extra[e]);
        Integer total = tuple_length(child);
        consider(k + e, std::move(child), std::move(total), extra[e]);
      }
      s.observe_size(open.size());
    }
  });
}

AttackResult lba_memory(const EavesdropperView& view, const AttackOptions& options) {
  if (options.memory == 0) throw InvalidParameter("memory must be >= 1");
  Search s(view, options);
  return s.run([&](Node root) {
    std::unordered_set<std::size_t> visited;
    if (options.dedup) visited.insert(tuple_hash(root.tuple));
    std::vector<Node> beam;
    beam.push_back(std::move(root));
    s.observe_size(1);
    while (!beam.empty()) {
      // Bounded max-heap holding the M best children of this round.
      std::vector<Node> pool;
      std::unordered_set<std::size_t> round_seen;
      auto worse = [](const Node& a, const Node& b) { return HeapGreater{}(b, a); };
      for (Node& node : beam) {
        s.expanded(node);
        for (const Move& m : s.singles()) {
          Tuple child = s.conjugate(node.tuple, m);
          s.test_success(child, node, m);
          std::size_t h = 0;
          if (options.dedup) {
            h = tuple_hash(child);
            if (visited.contains(h) || !round_seen.insert(h).second) continue;
          }
          Integer total = tuple_length(child);
          const std::uint64_t seq = s.next_seq();
          if (pool.size() == options.memory) {
            const Node& worst = pool.front();
            if (!(total < worst.total)) continue;
            std::pop_heap(pool.begin(), pool.end(), worse);
            pool.pop_back();
          }
          pool.push_back(Node{std::move(child), std::move(total), s.extend(node.trace, m), seq});
          std::push_heap(pool.begin(), pool.end(), worse);
        }
      }
      std::sort(pool.begin(), pool.end(), [](const Node& a, const Node& b) { return HeapGreater{}(b, a); });
      if (options.dedup) {
        for (const Node& n : pool) visited.insert(tuple_hash(n.tuple));
      }
      beam = std::move(pool);
      s.observe_size(beam.size());
    }
  });
}

AttackResult lba_star(const EavesdropperView& view, const AttackOptions& options) {
  if (options.memory == 0) throw InvalidParameter("memory must be >= 1");
  Search s(view, options);
  return s.run([&](Node root) {
    std::unordered_set<std::size_t> visited;
    if (options.dedup) visited.insert(tuple_hash(root.tuple));
    std::map<Key, Node> store;
    Key root_key{root.total, root.seq};
    store.emplace(std::move(root_key), std::move(root));
    s.observe_size(1);
    while (!store.empty()) {
      Node node = std::move(store.extract(store.begin()).mapped());
      s.expanded(node);
      for (const Move& m : s.singles()) {
        Tuple child = s.conjugate(node.tuple, m);
        s.test_success(child, node, m);
        std::size_t h = 0;
        if (options.dedup) {
          h = tuple_hash(child);
          if (visited.contains(h)) continue;
        }
        Integer total = tuple_length(child);
        if (store.size() >= options.memory) {
          auto worst = std::prev(store.end());
          if (!(total < worst->first.total)) continue;
          store.erase(worst);
        }
        if (options.dedup) visited.insert(h);
        Key key{total, s.next_seq()};
        store.emplace(key, Node{std::move(child), std::move(total), s.extend(node.trace, m), key.seq});
        s.observe_size(store.size());
      }
    }
  });
}

AttackResult run_attack(Variant variant, const EavesdropperView& view, const AttackOptions& options) {
  switch (variant) {
    case Variant::kBacktrack: return lba_backtracking(view, options);
    case Variant::kDynamic: return lba_dynamic_set(view, options);
    case Variant::kMemory: return lba_memory(view, options);
    case Variant::kStar: return lba_star(view, options);
  }
  throw InvalidParameter("unknown variant");
}

}  // namespace pcaag
