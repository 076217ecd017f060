#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gradarg/attack_graph.hpp"

namespace gradarg {

/// A_n -> A_(n-1) -> ... -> A_1, declared A1..An.
struct ChainFamily {
  std::size_t length = 1;
};

/// C0 -> C1 -> ... -> C(k-1) -> C0, optionally with C0 -> S.
struct UnattackedCycleFamily {
  std::size_t length = 2;
  bool with_sink = false;
};

/// The same cycle with an unattacked argument D attacking C0.
struct AttackedCycleFamily {
  std::size_t length = 2;
};

/// Disjoint legs meeting only at the root A. Leg i with length l is
/// Xi_1 -> Xi_2 -> ... -> Xi_l -> A, Xi_1 being its leaf.
struct SpiderFamily {
  std::vector<std::size_t> legs;
};

/// Each ordered pair (i, j) is an attack with probability `density`.
/// With `acyclic`, only pairs with i > j are drawn.
struct RandomFamily {
  std::uint64_t seed = 1;
  std::size_t size = 1;
  double density = 0.3;
  bool acyclic = false;
  bool self_attacks = true;
};

using Family = std::variant<ChainFamily, UnattackedCycleFamily, AttackedCycleFamily, SpiderFamily, RandomFamily>;

namespace detail {

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations so graphs are reproducible.
inline double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline void add_cycle(AttackGraph& g, std::size_t length) {
  for (std::size_t i = 0; i < length; ++i) g.add_argument("C" + std::to_string(i));
  for (std::size_t i = 0; i < length; ++i) g.add_attack(i, (i + 1) % length);
}

}  // namespace detail

inline AttackGraph generate_family(const Family& family) {
  return std::visit(
      [](const auto& f) -> AttackGraph {
        using F = std::decay_t<decltype(f)>;
        AttackGraph g;
        if constexpr (std::is_same_v<F, ChainFamily>) {
          if (f.length < 1) throw std::invalid_argument("chain length must be >= 1");
          for (std::size_t i = 1; i <= f.length; ++i) g.add_argument("A" + std::to_string(i));
          for (std::size_t i = 1; i < f.length; ++i) g.add_attack(i, i - 1);
        } else if constexpr (std::is_same_v<F, UnattackedCycleFamily>) {
          if (f.length < 1) throw std::invalid_argument("cycle length must be >= 1");
          detail::add_cycle(g, f.length);
          if (f.with_sink) g.add_attack(0, g.add_argument("S"));
        } else if constexpr (std::is_same_v<F, AttackedCycleFamily>) {
          if (f.length < 1) throw std::invalid_argument("cycle length must be >= 1");
          detail::add_cycle(g, f.length);
          g.add_attack(g.add_argument("D"), 0);
        } else if constexpr (std::is_same_v<F, SpiderFamily>) {
          if (f.legs.empty()) throw std::invalid_argument("spider needs at least one leg");
          const ArgIndex root = g.add_argument("A");
          for (std::size_t i = 0; i < f.legs.size(); ++i) {
            if (f.legs[i] < 1) throw std::invalid_argument("spider legs must have length >= 1");
            ArgIndex prev = g.add_argument("X" + std::to_string(i + 1) + "_1");
            for (std::size_t j = 2; j <= f.legs[i]; ++j) {
              const ArgIndex next = g.add_argument("X" + std::to_string(i + 1) + "_" + std::to_string(j));
              g.add_attack(prev, next);
              prev = next;
            }
            g.add_attack(prev, root);
          }
        } else {
          if (f.size < 1) throw std::invalid_argument("random graph size must be >= 1");
          if (!(f.density >= 0.0 && f.density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
          std::mt19937_64 rng(f.seed);
          for (std::size_t i = 0; i < f.size; ++i) g.add_argument("a" + std::to_string(i));
          for (std::size_t i = 0; i < f.size; ++i) {
            for (std::size_t j = 0; j < f.size; ++j) {
              if (f.acyclic && i <= j) continue;
              if (i == j && !f.self_attacks) continue;
              if (detail::unit_interval(rng) < f.density) g.add_attack(i, j);
            }
          }
        }
        return g;
      },
      family);
}

/// Random spider: 1..max_legs legs of length 1..max_leg_length.
inline AttackGraph random_spider(std::uint64_t seed, std::size_t max_legs = 4, std::size_t max_leg_length = 5) {
  std::mt19937_64 rng(seed);
  SpiderFamily spider;
  const std::size_t legs = 1 + rng() % max_legs;
  for (std::size_t i = 0; i < legs; ++i) spider.legs.push_back(1 + rng() % max_leg_length);
  return generate_family(spider);
}

}  // namespace gradarg
