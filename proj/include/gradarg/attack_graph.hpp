#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gradarg/errors.hpp"

namespace gradarg {

/// Dense index of an argument inside one graph (declaration order).
using ArgIndex = std::size_t;
using ArgSet = std::vector<ArgIndex>;  // sorted, duplicate-free
using Attack = std::pair<ArgIndex, ArgIndex>;

inline bool is_valid_argument_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

/// An argumentation system: arguments plus a binary attack relation.
///
/// Arguments are identified by name and numbered in declaration order;
/// every downstream computation works on those indices. Attackers and
/// attacked lists are kept sorted so that all queries are deterministic.
class AttackGraph {
public:
  AttackGraph() = default;

  /// Declares an argument. Re-declaring an existing name is a no-op.
  ArgIndex add_argument(std::string_view name) {
    if (!is_valid_argument_name(name)) {
      throw std::invalid_argument("invalid argument name '" + std::string(name) + "'");
    }
    if (auto found = find(name)) return *found;
    const ArgIndex idx = names_.size();
    names_.emplace_back(name);
    index_.emplace(names_.back(), idx);
    attackers_.emplace_back();
    attacked_.emplace_back();
    return idx;
  }

  /// Adds attacker -> target. Duplicate attacks are ignored.
  void add_attack(ArgIndex attacker, ArgIndex target) {
    check(attacker);
    check(target);
    auto& in = attackers_[target];
    auto pos = std::lower_bound(in.begin(), in.end(), attacker);
    if (pos != in.end() && *pos == attacker) return;
    in.insert(pos, attacker);
    auto& out = attacked_[attacker];
    out.insert(std::lower_bound(out.begin(), out.end(), target), target);
    ++attack_count_;
  }

  void add_attack(std::string_view attacker, std::string_view target) { add_attack(at(attacker), at(target)); }

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t attack_count() const noexcept { return attack_count_; }

  const std::string& name(ArgIndex a) const {
    check(a);
    return names_[a];
  }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<ArgIndex> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ArgIndex at(std::string_view name) const {
    if (auto found = find(name)) return *found;
    throw unknown_argument(std::string(name));
  }

  /// R-(a): the direct attackers of a.
  std::span<const ArgIndex> attackers(ArgIndex a) const {
    check(a);
    return attackers_[a];
  }

  /// R+(a): the arguments attacked by a.
  std::span<const ArgIndex> attacked(ArgIndex a) const {
    check(a);
    return attacked_[a];
  }

  bool attacks(ArgIndex attacker, ArgIndex target) const {
    auto in = attackers(target);
    return std::binary_search(in.begin(), in.end(), attacker);
  }

  bool is_leaf(ArgIndex a) const { return attackers(a).empty(); }

  /// All attacks ordered by (attacker index, target index).
  std::vector<Attack> attack_list() const {
    std::vector<Attack> out;
    out.reserve(attack_count_);
    for (ArgIndex a = 0; a < size(); ++a) {
      for (ArgIndex t : attacked_[a]) out.emplace_back(a, t);
    }
    return out;
  }

  std::vector<std::string> names_of(std::span<const ArgIndex> set) const {
    std::vector<std::string> out;
    out.reserve(set.size());
    for (ArgIndex a : set) out.push_back(name(a));
    return out;
  }

  friend bool operator==(const AttackGraph& lhs, const AttackGraph& rhs) {
    return lhs.names_ == rhs.names_ && lhs.attackers_ == rhs.attackers_;
  }

private:
  void check(ArgIndex a) const {
    if (a >= names_.size()) throw unknown_argument("#" + std::to_string(a));
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, ArgIndex> index_;
  std::vector<ArgSet> attackers_;
  std::vector<ArgSet> attacked_;
  std::size_t attack_count_ = 0;
};

/// Builds a graph from names and (attacker, target) name pairs.
inline AttackGraph make_graph(std::initializer_list<std::string_view> arguments,
                              std::initializer_list<std::pair<std::string_view, std::string_view>> attacks) {
  AttackGraph g;
  for (auto name : arguments) g.add_argument(name);
  for (auto [from, to] : attacks) g.add_attack(from, to);
  return g;
}

/// Subgraph induced by the arguments for which keep(a) is true.
/// Declaration order of the survivors is preserved.
template <typename Pred>
AttackGraph induced_subgraph(const AttackGraph& g, Pred keep) {
  AttackGraph out;
  std::vector<std::optional<ArgIndex>> remap(g.size());
  for (ArgIndex a = 0; a < g.size(); ++a) {
    if (keep(a)) remap[a] = out.add_argument(g.name(a));
  }
  for (auto [from, to] : g.attack_list()) {
    if (remap[from] && remap[to]) out.add_attack(*remap[from], *remap[to]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Attackers and defenders

inline ArgSet direct_attackers(const AttackGraph& g, ArgIndex a) {
  auto in = g.attackers(a);
  return ArgSet(in.begin(), in.end());
}

inline ArgSet direct_defenders(const AttackGraph& g, ArgIndex a) {
  ArgSet out;
  for (ArgIndex b : g.attackers(a)) {
    for (ArgIndex c : g.attackers(b)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

// Path-length classes used to answer the parity queries on possibly cyclic
// graphs: 0, 1, 2, odd >= 3, even >= 4.
enum class LengthClass : unsigned char { zero, one, two, odd_3plus, even_4plus };

inline LengthClass next_class(LengthClass c) {
  switch (c) {
    case LengthClass::zero: return LengthClass::one;
    case LengthClass::one: return LengthClass::two;
    case LengthClass::two: return LengthClass::odd_3plus;
    case LengthClass::odd_3plus: return LengthClass::even_4plus;
    case LengthClass::even_4plus: return LengthClass::odd_3plus;
  }
  return LengthClass::zero;
}

/// reach[x][c] is true iff some path x -> ... -> a has a length in class c.
inline std::vector<std::array<bool, 5>> backward_length_classes(const AttackGraph& g, ArgIndex a) {
  std::vector<std::array<bool, 5>> reach(g.size(), std::array<bool, 5>{});
  std::vector<std::pair<ArgIndex, LengthClass>> stack{{a, LengthClass::zero}};
  reach[a][0] = true;
  while (!stack.empty()) {
    auto [x, c] = stack.back();
    stack.pop_back();
    const LengthClass nc = next_class(c);
    for (ArgIndex y : g.attackers(x)) {
      auto& slot = reach[y][static_cast<std::size_t>(nc)];
      if (!slot) {
        slot = true;
        stack.emplace_back(y, nc);
      }
    }
  }
  return reach;
}

inline ArgSet collect_class(const std::vector<std::array<bool, 5>>& reach, LengthClass c) {
  ArgSet out;
  for (ArgIndex x = 0; x < reach.size(); ++x) {
    if (reach[x][static_cast<std::size_t>(c)]) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Arguments with a path of odd length >= 3 to a.
inline ArgSet indirect_attackers(const AttackGraph& g, ArgIndex a) {
  return detail::collect_class(detail::backward_length_classes(g, a), detail::LengthClass::odd_3plus);
}

/// Arguments with a path of even length >= 4 to a.
inline ArgSet indirect_defenders(const AttackGraph& g, ArgIndex a) {
  return detail::collect_class(detail::backward_length_classes(g, a), detail::LengthClass::even_4plus);
}

inline ArgSet leaves(const AttackGraph& g) {
  ArgSet out;
  for (ArgIndex a = 0; a < g.size(); ++a) {
    if (g.is_leaf(a)) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strongly connected components and mcycles

/// Strongly connected components listed in topological order of the
/// condensation (every attacker component precedes the components it
/// attacks). Members are sorted; ties between independent components are
/// broken by smallest member index.
inline std::vector<ArgSet> strongly_connected_components(const AttackGraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp_of(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<ArgIndex> stack;
  std::vector<ArgSet> comps;
  std::size_t counter = 0;

  // Iterative Tarjan over the attacked (R+) edges.
  struct Frame {
    ArgIndex node;
    std::size_t next_edge;
  };
  for (ArgIndex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto out = g.attacked(f.node);
      if (f.next_edge < out.size()) {
        ArgIndex w = out[f.next_edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const ArgIndex v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        ArgSet comp;
        ArgIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp_of[w] = comps.size();
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }

  // Kahn over the condensation, smallest-member-first for determinism.
  const std::size_t m = comps.size();
  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<std::size_t> indeg(m, 0);
  for (auto [from, to] : g.attack_list()) {
    const auto cf = comp_of[from], ct = comp_of[to];
    if (cf != ct) succ[cf].push_back(ct);
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto t : s) ++indeg[t];
  }
  auto key = [&](std::size_t c) { return comps[c].front(); };
  auto cmp = [&](std::size_t x, std::size_t y) { return key(x) > key(y); };
  std::vector<std::size_t> ready;
  for (std::size_t c = 0; c < m; ++c) {
    if (indeg[c] == 0) ready.push_back(c);
  }
  std::make_heap(ready.begin(), ready.end(), cmp);
  std::vector<ArgSet> ordered;
  ordered.reserve(m);
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), cmp);
    const std::size_t c = ready.back();
    ready.pop_back();
    ordered.push_back(comps[c]);
    for (auto t : succ[c]) {
      if (--indeg[t] == 0) {
        ready.push_back(t);
        std::push_heap(ready.begin(), ready.end(), cmp);
      }
    }
  }
  return ordered;
}

/// True iff the component lies on at least one cycle.
inline bool is_cyclic_component(const AttackGraph& g, const ArgSet& comp) {
  return comp.size() > 1 || g.attacks(comp.front(), comp.front());
}

/// A maximal group of interconnected cycles.
struct Mcycle {
  ArgSet members;
  ArgSet inputs;  ///< members with at least one attacker outside the mcycle

  bool isolated() const noexcept { return inputs.empty(); }
  bool contains(ArgIndex a) const { return std::binary_search(members.begin(), members.end(), a); }
  friend bool operator==(const Mcycle&, const Mcycle&) = default;
};

/// Mcycles in topological order. Interconnected cycles are exactly the
/// non-trivial strongly connected components, so no elementary cycle
/// enumeration is needed.
inline std::vector<Mcycle> find_mcycles(const AttackGraph& g) {
  std::vector<Mcycle> out;
  for (auto& comp : strongly_connected_components(g)) {
    if (!is_cyclic_component(g, comp)) continue;
    Mcycle mc{comp, {}};
    for (ArgIndex a : comp) {
      for (ArgIndex b : g.attackers(a)) {
        if (!mc.contains(b)) {
          mc.inputs.push_back(a);
          break;
        }
      }
    }
    out.push_back(std::move(mc));
  }
  return out;
}

/// Well-founded: no infinite backward attack chain, i.e. no cycle.
inline bool is_well_founded(const AttackGraph& g) {
  for (auto& comp : strongly_connected_components(g)) {
    if (is_cyclic_component(g, comp)) return false;
  }
  return true;
}

/// Arguments in an order where every attacker precedes its targets.
/// Throws computation_error on cyclic graphs.
inline std::vector<ArgIndex> topological_order(const AttackGraph& g) {
  std::vector<ArgIndex> order;
  for (auto& comp : strongly_connected_components(g)) {
    if (is_cyclic_component(g, comp)) throw computation_error("graph contains a cycle");
    order.push_back(comp.front());
  }
  return order;
}

/// True iff some elementary cycle has odd length. A strongly connected
/// component has an odd cycle iff it has an odd closed walk iff it cannot
/// be two-coloured along its internal edges.
inline bool has_odd_cycle(const AttackGraph& g) {
  std::vector<int> colour(g.size(), -1);
  std::vector<std::size_t> comp_of(g.size());
  auto comps = strongly_connected_components(g);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (ArgIndex a : comps[c]) comp_of[a] = c;
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!is_cyclic_component(g, comps[c])) continue;
    std::vector<ArgIndex> stack{comps[c].front()};
    colour[comps[c].front()] = 0;
    while (!stack.empty()) {
      ArgIndex x = stack.back();
      stack.pop_back();
      for (ArgIndex y : g.attacked(x)) {
        if (comp_of[y] != c) continue;
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          stack.push_back(y);
        } else if (colour[y] == colour[x]) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace gradarg
