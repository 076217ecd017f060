#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gradarg/attack_graph.hpp"
#include "gradarg/errors.hpp"
#include "gradarg/grad_tuple.hpp"

namespace gradarg {

/// Default maximum number of runs through a cycle.
inline constexpr std::size_t default_propagation_depth = 10;

namespace detail {

inline TupledValue tuple_step(const AttackGraph& g, ArgIndex a, const std::vector<TupledValue>& values) {
  if (g.is_leaf(a)) return TupledValue::leaf();
  TupledValue v;
  for (ArgIndex b : g.attackers(a)) {
    v.vp = concat(v.vp, shift(values[b].vi, 1));
    v.vi = concat(v.vi, shift(values[b].vp, 1));
  }
  return v;
}

inline bool is_simple_cycle(const AttackGraph& g, const Mcycle& mc) {
  for (ArgIndex x : mc.members) {
    std::size_t internal = 0;
    for (ArgIndex y : g.attackers(x)) internal += mc.contains(y);
    if (internal != 1) return false;
  }
  return true;
}

/// Values of the members of one mcycle, given final values for every
/// argument outside it. Element L of a member X counts the walks of length L
/// that end at X and start at a branch entering the mcycle (or anywhere in
/// the mcycle when it is isolated). Exact for lengths up to the returned
/// horizon.
inline void evaluate_mcycle(const AttackGraph& g, const Mcycle& mc, std::size_t depth,
                            std::vector<TupledValue>& values) {
  const std::size_t m = mc.members.size();
  auto local = [&](ArgIndex a) {
    return static_cast<std::size_t>(std::lower_bound(mc.members.begin(), mc.members.end(), a) - mc.members.begin());
  };

  constexpr std::uint64_t unbounded = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t runs = 2 * static_cast<std::uint64_t>(depth);

  if (mc.isolated() && is_simple_cycle(g, mc)) {
    // Exactly one walk of each length ends at every member.
    std::vector<std::uint64_t> even, odd;
    for (std::uint64_t len = 1; len <= runs; ++len) (len % 2 ? odd : even).push_back(len);
    for (ArgIndex x : mc.members) {
      values[x] = {GradTuple::truncated(even, runs), GradTuple::truncated(odd, runs)};
    }
    return;
  }

  struct Injection {
    std::size_t member;
    std::uint64_t length;
    std::uint64_t count;
  };
  std::vector<Injection> injections;
  std::vector<std::array<bool, 2>> start(m, std::array<bool, 2>{});
  std::uint64_t limit = unbounded;  // horizon imposed by truncated inputs
  std::uint64_t base = unbounded;   // shortest injected length

  if (mc.isolated()) {
    base = 0;
    for (std::size_t i = 0; i < m; ++i) {
      injections.push_back({i, 0, 1});
      start[i][0] = true;
    }
  } else {
    for (ArgIndex x : mc.inputs) {
      const std::size_t i = local(x);
      for (ArgIndex e : g.attackers(x)) {
        if (mc.contains(e)) continue;
        for (const GradTuple* t : {&values[e].vp, &values[e].vi}) {
          if (t->is_empty()) continue;
          const std::size_t parity = t == &values[e].vp ? 1 : 0;  // of the injected lengths
          start[i][parity] = true;
          if (t->is_zero_inf()) {
            injections.push_back({i, 1, 1});
            base = std::min<std::uint64_t>(base, 1);
            continue;
          }
          if (t->tail() == GradTuple::Tail::repeat) throw computation_error("unexpected repeating tuple inside a graph");
          if (t->is_truncated()) limit = std::min(limit, checked_add(t->horizon(), 1));
          for (auto& r : t->runs()) {
            injections.push_back({i, checked_add(r.value, 1), r.count});
            base = std::min(base, r.value + 1);
          }
        }
      }
    }
  }
  if (base == unbounded) base = limit;
  const std::uint64_t horizon = std::min(checked_add(base, runs), limit);
  if (horizon > (std::uint64_t{1} << 24)) throw computation_error("mcycle horizon too large");

  // Walk counts by length.
  const auto h = static_cast<std::size_t>(horizon);
  std::vector<std::vector<std::uint64_t>> count(h + 1, std::vector<std::uint64_t>(m, 0));
  for (auto& inj : injections) {
    if (inj.length <= horizon) {
      auto& slot = count[static_cast<std::size_t>(inj.length)][inj.member];
      slot = checked_add(slot, inj.count);
    }
  }
  for (std::size_t len = 1; len <= h; ++len) {
    for (std::size_t i = 0; i < m; ++i) {
      for (ArgIndex y : g.attackers(mc.members[i])) {
        if (mc.contains(y)) count[len][i] = checked_add(count[len][i], count[len - 1][local(y)]);
      }
    }
  }

  // A parity class is infinite iff some injection reaches the member with
  // that parity: the walk can then be pumped around a cycle forever.
  std::vector<std::array<bool, 2>> reach = start;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (reach[i][p]) stack.emplace_back(i, p);
    }
  }
  while (!stack.empty()) {
    auto [i, p] = stack.back();
    stack.pop_back();
    for (ArgIndex y : g.attacked(mc.members[i])) {
      if (!mc.contains(y)) continue;
      auto& slot = reach[local(y)][1 - p];
      if (!slot) {
        slot = true;
        stack.emplace_back(local(y), 1 - p);
      }
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<GradTuple::Run> even, odd;
    for (std::size_t len = 1; len <= h; ++len) {
      if (count[len][i] != 0) (len % 2 ? odd : even).push_back({len, count[len][i]});
    }
    auto component = [&](std::vector<GradTuple::Run>& rs, std::size_t parity) {
      if (reach[i][parity]) return GradTuple::truncated_runs(std::move(rs), horizon);
      if (!rs.empty()) throw std::logic_error("finite walk class in an mcycle");
      return GradTuple::empty();
    };
    values[mc.members[i]] = {component(even, 0), component(odd, 1)};
  }
}

}  // namespace detail

/// Exact tupled values of an acyclic graph, indexed by argument.
inline std::vector<TupledValue> evaluate_acyclic(const AttackGraph& g) {
  std::vector<TupledValue> values(g.size());
  for (ArgIndex a : topological_order(g)) values[a] = detail::tuple_step(g, a, values);
  return values;
}

/// Tupled values of any graph. Components are processed in topological
/// order; each mcycle is unrolled until `depth` runs past its shortest
/// entering branch, and infinite components carry the resulting horizon.
inline std::vector<TupledValue> evaluate_cyclic(const AttackGraph& g, std::size_t depth = default_propagation_depth) {
  if (depth < 1) throw std::invalid_argument("propagation depth must be >= 1");
  std::vector<TupledValue> values(g.size());
  for (auto& comp : strongly_connected_components(g)) {
    if (!is_cyclic_component(g, comp)) {
      values[comp.front()] = detail::tuple_step(g, comp.front(), values);
      continue;
    }
    Mcycle mc{comp, {}};
    for (ArgIndex a : comp) {
      for (ArgIndex b : g.attackers(a)) {
        if (!mc.contains(b)) {
          mc.inputs.push_back(a);
          break;
        }
      }
    }
    detail::evaluate_mcycle(g, mc, depth, values);
  }
  return values;
}

/// Strict preference between two arguments under the tuple valuation.
inline auto tuple_preference(const std::vector<TupledValue>& values) {
  return [values](ArgIndex a, ArgIndex b) { return strictly_better(values[a], values[b]); };
}

}  // namespace gradarg
