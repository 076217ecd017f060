#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gradarg/attack_graph.hpp"
#include "gradarg/errors.hpp"
#include "gradarg/extensions.hpp"
#include "gradarg/generators.hpp"
#include "gradarg/local_valuation.hpp"
#include "gradarg/tuple_valuation.hpp"

namespace gradarg {

enum class Level { uni, cleanly, only_exi, not_accepted };

inline const char* to_string(Level l) {
  switch (l) {
    case Level::uni: return "uni";
    case Level::cleanly: return "cleanly";
    case Level::only_exi: return "only-exi";
    case Level::not_accepted: return "not-accepted";
  }
  return "?";
}

/// Levels from a given extension list. uni needs at least one extension;
/// cleanly means in some extension while no direct attacker is in any.
inline std::vector<Level> classify_with(const AttackGraph& g, const std::vector<ArgSet>& exts) {
  std::vector<std::size_t> hits(g.size(), 0);
  for (auto& e : exts) {
    for (ArgIndex a : e) ++hits[a];
  }
  std::vector<Level> out(g.size(), Level::not_accepted);
  for (ArgIndex a = 0; a < g.size(); ++a) {
    if (hits[a] == 0) continue;
    auto in = g.attackers(a);
    const bool clean = std::all_of(in.begin(), in.end(), [&](ArgIndex b) { return hits[b] == 0; });
    if (hits[a] == exts.size()) {
      out[a] = Level::uni;
    } else {
      out[a] = clean ? Level::cleanly : Level::only_exi;
    }
  }
  return out;
}

inline std::vector<Level> classify(const AttackGraph& g, Semantics sem, std::size_t bound = default_enumeration_bound) {
  return classify_with(g, extensions(g, sem, bound));
}

inline ArgSet uni_accepted(const std::vector<Level>& levels) {
  ArgSet out;
  for (ArgIndex a = 0; a < levels.size(); ++a) {
    if (levels[a] == Level::uni) out.push_back(a);
  }
  return out;
}

/// uni arguments are cleanly accepted as well.
inline ArgSet cleanly_accepted(const std::vector<Level>& levels) {
  ArgSet out;
  for (ArgIndex a = 0; a < levels.size(); ++a) {
    if (levels[a] == Level::uni || levels[a] == Level::cleanly) out.push_back(a);
  }
  return out;
}

inline ArgSet exi_accepted(const std::vector<Level>& levels) {
  ArgSet out;
  for (ArgIndex a = 0; a < levels.size(); ++a) {
    if (levels[a] != Level::not_accepted) out.push_back(a);
  }
  return out;
}

/// better(a, b): the valuation ranks a strictly above b.
using Preference = std::function<bool(ArgIndex, ArgIndex)>;

/// Arguments none of whose direct attackers is strictly preferred to them.
inline ArgSet well_defended(const AttackGraph& g, const Preference& better) {
  ArgSet out;
  for (ArgIndex a = 0; a < g.size(); ++a) {
    auto in = g.attackers(a);
    if (std::none_of(in.begin(), in.end(), [&](ArgIndex b) { return better(b, a); })) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Valuation models

/// Builds the strict preference of one valuation on a graph.
struct ValuationModel {
  std::string name;
  std::function<Preference(const AttackGraph&)> preference;
};

inline ValuationModel local_model(LocalInstance inst, FixpointConfig cfg = {}) {
  std::string name = inst.name;
  return {std::move(name), [inst = std::move(inst), cfg](const AttackGraph& g) -> Preference {
            return local_preference(evaluate_local(g, inst, cfg));
          }};
}

inline ValuationModel tuple_model(std::size_t depth = default_propagation_depth) {
  return {"tuples", [depth](const AttackGraph& g) -> Preference { return tuple_preference(evaluate_cyclic(g, depth)); }};
}

inline std::vector<ValuationModel> standard_models(std::size_t depth = default_propagation_depth, FixpointConfig cfg = {}) {
  return {local_model(categoriser(), cfg), local_model(rooted_labelling(), cfg), tuple_model(depth)};
}

struct AcceptabilityReport {
  Semantics semantics = Semantics::preferred;
  std::vector<ArgSet> extensions;
  std::vector<Level> level;
  std::map<std::string, ArgSet> well_defended;  ///< by valuation name
};

inline AcceptabilityReport acceptability_report(const AttackGraph& g, Semantics sem,
                                                const std::vector<ValuationModel>& models,
                                                std::size_t bound = default_enumeration_bound) {
  AcceptabilityReport r;
  r.semantics = sem;
  r.extensions = extensions(g, sem, bound);
  r.level = classify_with(g, r.extensions);
  for (auto& m : models) r.well_defended[m.name] = well_defended(g, m.preference(g));
  return r;
}

// ---------------------------------------------------------------------------
// Random search

/// Reproducible stream of random graphs with 1..size_bound arguments.
struct RandomGraphStream {
  std::uint64_t seed;
  std::size_t size_bound;
  bool acyclic = false;

  AttackGraph graph(std::size_t trial) const {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + trial);
    RandomFamily f;
    f.size = 1 + static_cast<std::size_t>(rng() % size_bound);
    f.density = 0.1 + 0.5 * detail::unit_interval(rng);
    f.acyclic = acyclic;
    f.self_attacks = !acyclic && rng() % 4 == 0;
    f.seed = rng();
    return generate_family(f);
  }
};

struct Witness {
  AttackGraph graph;
  ArgIndex argument = 0;
  std::size_t trial = 0;
};

struct CompatibilityReport {
  std::optional<Witness> cleanly_not_well_defended;
  std::optional<Witness> well_defended_not_cleanly;
  std::size_t trials = 0;
  std::size_t skipped = 0;  ///< graphs the valuation could not evaluate
};

/// Seeded search for arguments where cleanly-accepted and well-defended
/// disagree under `model`, stopping once both directions are witnessed.
inline CompatibilityReport compatibility_scan(std::uint64_t seed, std::size_t trials, std::size_t size_bound,
                                              const ValuationModel& model, bool acyclic_only = false,
                                              Semantics sem = Semantics::preferred) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (size_bound < 1) throw std::invalid_argument("size bound must be >= 1");
  CompatibilityReport report;
  const RandomGraphStream stream{seed, size_bound, acyclic_only};
  for (std::size_t t = 0; t < trials; ++t) {
    if (report.cleanly_not_well_defended && report.well_defended_not_cleanly) break;
    ++report.trials;
    AttackGraph g = stream.graph(t);
    Preference better;
    try {
      better = model.preference(g);
    } catch (const computation_error&) {
      ++report.skipped;
      continue;
    }
    const ArgSet wd = well_defended(g, better);
    const ArgSet clean = cleanly_accepted(classify(g, sem));
    for (ArgIndex a = 0; a < g.size(); ++a) {
      const bool is_wd = std::binary_search(wd.begin(), wd.end(), a);
      const bool is_clean = std::binary_search(clean.begin(), clean.end(), a);
      if (is_clean && !is_wd && !report.cleanly_not_well_defended) report.cleanly_not_well_defended = Witness{g, a, t};
      if (is_wd && !is_clean && !report.well_defended_not_cleanly) report.well_defended_not_cleanly = Witness{g, a, t};
    }
  }
  return report;
}

}  // namespace gradarg
