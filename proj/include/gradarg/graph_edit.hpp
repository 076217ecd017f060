#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gradarg/attack_graph.hpp"
#include "gradarg/errors.hpp"

namespace gradarg {

/// Adds a fresh chain of `length` new arguments ending in an attack on `root`.
/// Odd length: an attack branch; even length: a defence branch.
struct AddBranch {
  std::string root;
  std::size_t length = 1;
};

/// Removes a private branch of the given length (see private_branches).
struct RemoveBranch {
  std::string root;
  std::size_t length = 1;
};

/// Lengthens (delta > 0) or shortens (delta < 0) a private branch. The
/// delta must be even: a parity change turns an attack branch into a
/// defence branch and has to be written as RemoveBranch + AddBranch.
struct ChangeBranchLength {
  std::string root;
  std::size_t length = 1;
  long delta = 2;
};

using GraphEdit = std::variant<AddBranch, RemoveBranch, ChangeBranchLength>;

/// A leaf-to-root path whose arguments (root excluded) each have at most
/// one attacker and attack nothing but the next argument of the path, so
/// that it carries exactly one branch of the root. `path.front()` is the
/// leaf and `path.back()` the direct attacker of the root.
struct PrivateBranch {
  std::vector<ArgIndex> path;
  std::size_t length() const noexcept { return path.size(); }
};

inline std::vector<PrivateBranch> private_branches(const AttackGraph& g, ArgIndex root) {
  std::vector<PrivateBranch> out;
  for (ArgIndex start : g.attackers(root)) {
    if (start == root) continue;
    std::vector<ArgIndex> path{start};
    ArgIndex cur = start;
    bool ok = true;
    while (true) {
      if (g.attacked(cur).size() != 1) {
        ok = false;
        break;
      }
      auto in = g.attackers(cur);
      if (in.empty()) break;
      if (in.size() > 1 || in.front() == root || in.front() == cur) {
        ok = false;
        break;
      }
      cur = in.front();
      path.push_back(cur);
      if (path.size() > g.size()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::reverse(path.begin(), path.end());
    out.push_back({std::move(path)});
  }
  return out;
}

namespace detail {

inline std::string fresh_name(const AttackGraph& g, std::size_t& counter) {
  std::string name;
  do {
    name = "n" + std::to_string(++counter);
  } while (g.find(name));
  return name;
}

inline std::optional<PrivateBranch> find_private_branch(const AttackGraph& g, ArgIndex root, std::size_t length) {
  for (auto& b : private_branches(g, root)) {
    if (b.length() == length) return b;
  }
  return std::nullopt;
}

inline AttackGraph without(const AttackGraph& g, const std::vector<ArgIndex>& removed) {
  std::vector<bool> drop(g.size(), false);
  for (ArgIndex a : removed) drop[a] = true;
  return induced_subgraph(g, [&](ArgIndex a) { return !drop[a]; });
}

}  // namespace detail

/// Applies one simple branch edit and returns the edited copy.
inline AttackGraph edit_graph(const AttackGraph& g, const GraphEdit& edit) {
  std::size_t counter = 0;
  return std::visit(
      [&](const auto& e) -> AttackGraph {
        using E = std::decay_t<decltype(e)>;
        const ArgIndex root = g.at(e.root);
        if constexpr (std::is_same_v<E, AddBranch>) {
          if (e.length < 1) throw edit_error("branch length must be >= 1");
          AttackGraph out = g;
          ArgIndex prev = out.add_argument(detail::fresh_name(out, counter));
          for (std::size_t i = 1; i < e.length; ++i) {
            const ArgIndex next = out.add_argument(detail::fresh_name(out, counter));
            out.add_attack(prev, next);
            prev = next;
          }
          out.add_attack(prev, root);
          return out;
        } else if constexpr (std::is_same_v<E, RemoveBranch>) {
          auto branch = detail::find_private_branch(g, root, e.length);
          if (!branch) {
            throw edit_error("no removable branch of length " + std::to_string(e.length) + " leads to '" + e.root + "'");
          }
          return detail::without(g, branch->path);
        } else {
          if (e.delta == 0) throw edit_error("length change of zero");
          if (e.delta % 2 != 0) {
            throw edit_error("changing a branch length by an odd amount flips its status; use remove + add");
          }
          auto branch = detail::find_private_branch(g, root, e.length);
          if (!branch) {
            throw edit_error("no private branch of length " + std::to_string(e.length) + " leads to '" + e.root + "'");
          }
          if (e.delta > 0) {
            AttackGraph out = g;
            ArgIndex prev = out.add_argument(detail::fresh_name(out, counter));
            for (long i = 1; i < e.delta; ++i) {
              const ArgIndex next = out.add_argument(detail::fresh_name(out, counter));
              out.add_attack(prev, next);
              prev = next;
            }
            out.add_attack(prev, branch->path.front());
            return out;
          }
          const auto cut = static_cast<std::size_t>(-e.delta);
          if (cut >= e.length) throw edit_error("cannot shorten a branch to length <= 0");
          return detail::without(g, std::vector<ArgIndex>(branch->path.begin(), branch->path.begin() + cut));
        }
      },
      edit);
}

}  // namespace gradarg
