#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradarg/attack_graph.hpp"
#include "gradarg/errors.hpp"

namespace gradarg {

enum class Semantics { preferred, stable };

inline const char* to_string(Semantics s) { return s == Semantics::preferred ? "preferred" : "stable"; }

/// Default limit on the number of arguments handled by the enumerators.
inline constexpr std::size_t default_enumeration_bound = 25;

inline bool is_conflict_free(const AttackGraph& g, const ArgSet& s) {
  for (ArgIndex a : s) {
    for (ArgIndex b : g.attackers(a)) {
      if (std::binary_search(s.begin(), s.end(), b)) return false;
    }
  }
  return true;
}

/// s collectively defends a: every attacker of a is attacked by s.
inline bool defends(const AttackGraph& g, const ArgSet& s, ArgIndex a) {
  for (ArgIndex b : g.attackers(a)) {
    auto in = g.attackers(b);
    const bool countered = std::any_of(in.begin(), in.end(), [&](ArgIndex c) { return std::binary_search(s.begin(), s.end(), c); });
    if (!countered) return false;
  }
  return true;
}

inline bool is_admissible(const AttackGraph& g, const ArgSet& s) {
  if (!is_conflict_free(g, s)) return false;
  return std::all_of(s.begin(), s.end(), [&](ArgIndex a) { return defends(g, s, a); });
}

/// Conflict-free and attacks every argument outside s.
inline bool is_stable_extension(const AttackGraph& g, const ArgSet& s) {
  if (!is_conflict_free(g, s)) return false;
  for (ArgIndex a = 0; a < g.size(); ++a) {
    if (std::binary_search(s.begin(), s.end(), a)) continue;
    auto in = g.attackers(a);
    if (std::none_of(in.begin(), in.end(), [&](ArgIndex b) { return std::binary_search(s.begin(), s.end(), b); })) {
      return false;
    }
  }
  return true;
}

namespace detail {

using Mask = std::uint64_t;

inline ArgSet to_set(Mask m) {
  ArgSet out;
  for (ArgIndex a = 0; m; ++a, m >>= 1) {
    if (m & 1) out.push_back(a);
  }
  return out;
}

/// Extensions sorted by size, then lexicographically.
inline void sort_extensions(std::vector<ArgSet>& exts) {
  std::sort(exts.begin(), exts.end(), [](const ArgSet& x, const ArgSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
}

// Depth-first search over in/out assignments in argument order.
class ExtensionSearch {
public:
  ExtensionSearch(const AttackGraph& g, Semantics sem) : g_(g), sem_(sem), n_(g.size()) {
    attackers_.resize(n_, 0);
    for (auto [from, to] : g.attack_list()) attackers_[to] |= Mask{1} << from;
  }

  std::vector<ArgSet> run() {
    dfs(0, 0);
    std::vector<ArgSet> out;
    for (Mask m : found_) out.push_back(to_set(m));
    sort_extensions(out);
    return out;
  }

private:
  Mask all() const { return (Mask{1} << n_) - 1; }

  bool attacks(Mask from, ArgIndex target) const { return (attackers_[target] & from) != 0; }

  bool viable(ArgIndex next, Mask in) const {
    const Mask undecided = all() & ~((Mask{1} << next) - 1);
    const Mask possible = in | undecided;
    for (ArgIndex a = 0; a < next; ++a) {
      const bool is_in = (in >> a) & 1;
      if (sem_ == Semantics::preferred && is_in) {
        // Every attacker of a must still be attackable by a possible member.
        for (Mask att = attackers_[a]; att; att &= att - 1) {
          const auto b = static_cast<ArgIndex>(__builtin_ctzll(att));
          if (!attacks(possible, b)) return false;
        }
      }
      if (sem_ == Semantics::stable && !is_in && !attacks(possible, a)) return false;
    }
    if (sem_ == Semantics::preferred) {
      for (Mask m : found_) {
        if ((possible & ~m) == 0) return false;  // cannot leave a known extension
      }
    }
    return true;
  }

  void dfs(ArgIndex next, Mask in) {
    if (!viable(next, in)) return;
    if (next == n_) {
      if (sem_ == Semantics::preferred && !admissible(in)) return;
      if (sem_ == Semantics::stable && !stable(in)) return;
      found_.push_back(in);
      return;
    }
    const Mask bit = Mask{1} << next;
    const bool conflict = attacks(in | bit, next) || (attacks_any(next) & (in | bit)) != 0;
    if (!conflict) dfs(next + 1, in | bit);
    dfs(next + 1, in);
  }

  Mask attacks_any(ArgIndex a) const {
    Mask out = 0;
    for (ArgIndex t : g_.attacked(a)) out |= Mask{1} << t;
    return out;
  }

  bool admissible(Mask in) const {
    for (Mask rest = in; rest; rest &= rest - 1) {
      const auto a = static_cast<ArgIndex>(__builtin_ctzll(rest));
      for (Mask att = attackers_[a]; att; att &= att - 1) {
        const auto b = static_cast<ArgIndex>(__builtin_ctzll(att));
        if (!attacks(in, b)) return false;
      }
    }
    return true;
  }

  bool stable(Mask in) const {
    for (ArgIndex a = 0; a < n_; ++a) {
      if (!((in >> a) & 1) && !attacks(in, a)) return false;
    }
    return true;
  }

  const AttackGraph& g_;
  Semantics sem_;
  std::size_t n_;
  std::vector<Mask> attackers_;
  std::vector<Mask> found_;
};

inline void check_bound(const AttackGraph& g, std::size_t bound) {
  if (g.size() > bound || g.size() > 32) {
    throw computation_error("graph has " + std::to_string(g.size()) + " arguments; enumeration bound is " +
                            std::to_string(std::min<std::size_t>(bound, 32)));
  }
}

inline void check_leaves(const AttackGraph& g, const std::vector<ArgSet>& exts) {
  for (auto& e : exts) {
    for (ArgIndex a : leaves(g)) {
      if (!std::binary_search(e.begin(), e.end(), a)) throw std::logic_error("extension misses an unattacked argument");
    }
  }
}

}  // namespace detail

/// Preferred extensions: maximal admissible sets. Including an argument is
/// tried before excluding it, so every admissible superset of a set is
/// reached first and a set is maximal iff it lies in no extension found so far.
inline std::vector<ArgSet> preferred_extensions(const AttackGraph& g, std::size_t bound = default_enumeration_bound) {
  detail::check_bound(g, bound);
  auto exts = detail::ExtensionSearch(g, Semantics::preferred).run();
  if (exts.empty()) throw std::logic_error("no preferred extension found");
  detail::check_leaves(g, exts);
  return exts;
}

inline std::vector<ArgSet> stable_extensions(const AttackGraph& g, std::size_t bound = default_enumeration_bound) {
  detail::check_bound(g, bound);
  auto exts = detail::ExtensionSearch(g, Semantics::stable).run();
  detail::check_leaves(g, exts);
  auto preferred = detail::ExtensionSearch(g, Semantics::preferred).run();
  for (auto& e : exts) {
    if (!std::binary_search(preferred.begin(), preferred.end(), e, [](const ArgSet& x, const ArgSet& y) {
          return x.size() != y.size() ? x.size() < y.size() : x < y;
        })) {
      throw std::logic_error("stable extension is not preferred");
    }
  }
  return exts;
}

inline std::vector<ArgSet> extensions(const AttackGraph& g, Semantics sem, std::size_t bound = default_enumeration_bound) {
  return sem == Semantics::preferred ? preferred_extensions(g, bound) : stable_extensions(g, bound);
}

/// Renders `{A1,A4}`.
inline std::string format_set(const AttackGraph& g, const ArgSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + g.name(s[i]);
  return out + "}";
}

}  // namespace gradarg
