#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gradarg/attack_graph.hpp"
#include "gradarg/errors.hpp"

namespace gradarg {

using Rational = boost::multiprecision::cpp_rational;

/// Discrete labels, ordered minus < undecided < plus.
enum class Label { minus, undecided, plus };

using LocalValue = std::variant<Rational, double, Label>;

enum class ValueKind { rational, floating, label };

inline ValueKind kind_of(const LocalValue& v) { return static_cast<ValueKind>(v.index()); }

inline const char* to_string(Label l) {
  switch (l) {
    case Label::minus: return "-";
    case Label::undecided: return "?";
    case Label::plus: return "+";
  }
  return "?";
}

inline std::string to_string(const LocalValue& v) {
  if (auto r = std::get_if<Rational>(&v)) return r->str();
  if (auto d = std::get_if<double>(&v)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", *d);
    return buf;
  }
  return to_string(std::get<Label>(v));
}

inline double to_double(const LocalValue& v) {
  if (auto r = std::get_if<Rational>(&v)) return r->convert_to<double>();
  if (auto d = std::get_if<double>(&v)) return *d;
  throw std::invalid_argument("label has no numeric value");
}

/// Three-way comparison. Rationals and doubles compare numerically; labels
/// only compare with labels.
inline int compare_values(const LocalValue& a, const LocalValue& b) {
  const bool la = std::holds_alternative<Label>(a), lb = std::holds_alternative<Label>(b);
  if (la != lb) throw std::invalid_argument("cannot compare a label with a number");
  if (la) {
    auto x = std::get<Label>(a), y = std::get<Label>(b);
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
    const auto& x = std::get<Rational>(a);
    const auto& y = std::get<Rational>(b);
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  const double x = to_double(a), y = to_double(b);
  return x < y ? -1 : (y < x ? 1 : 0);
}

/// A local valuation: v(A) = g(h(v(A1), ..., v(An))), leaves get V_Max.
struct LocalInstance {
  std::string name;
  ValueKind kind = ValueKind::rational;
  LocalValue v_min;
  LocalValue v_max;
  std::function<LocalValue(const LocalValue&)> g;
  std::function<LocalValue(std::span<const LocalValue>)> h;
};

struct FixpointConfig {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

/// Lifts a generic numeric function (instantiated for Rational and double)
/// to LocalValue.
template <typename F>
std::function<LocalValue(const LocalValue&)> numeric_function(F f) {
  return [f](const LocalValue& v) -> LocalValue {
    if (auto r = std::get_if<Rational>(&v)) return Rational(f(*r));
    if (auto d = std::get_if<double>(&v)) return static_cast<double>(f(*d));
    throw std::invalid_argument("numeric function applied to a label");
  };
}

namespace detail {

inline auto inverse_successor = [](const auto& x) {
  using T = std::decay_t<decltype(x)>;
  return T(T(1) / (T(1) + x));
};

inline bool any_double(std::span<const LocalValue> xs) {
  return std::any_of(xs.begin(), xs.end(), [](const LocalValue& v) { return std::holds_alternative<double>(v); });
}

inline LocalValue numeric_sum(std::span<const LocalValue> xs) {
  if (any_double(xs)) {
    double s = 0;
    for (auto& x : xs) s += to_double(x);
    return s;
  }
  Rational s = 0;
  for (auto& x : xs) {
    if (!std::holds_alternative<Rational>(x)) throw std::invalid_argument("sum of non-numeric values");
    s += std::get<Rational>(x);
  }
  return s;
}

inline LocalValue max_of(std::span<const LocalValue> xs, const LocalValue& empty) {
  if (xs.empty()) return empty;
  LocalValue best = xs.front();
  for (auto& x : xs.subspan(1)) {
    if (compare_values(x, best) > 0) best = x;
  }
  if (!std::holds_alternative<Label>(best) && any_double(xs)) return to_double(best);
  return best;
}

}  // namespace detail

/// g(x) = 1/(1+x), h = sum, V = [0,1], W = [0,inf).
inline LocalInstance categoriser() {
  LocalInstance inst;
  inst.name = "categoriser";
  inst.kind = ValueKind::rational;
  inst.v_min = Rational(0);
  inst.v_max = Rational(1);
  inst.g = numeric_function(detail::inverse_successor);
  inst.h = [](std::span<const LocalValue> xs) -> LocalValue {
    if (xs.empty()) return Rational(0);
    return detail::numeric_sum(xs);
  };
  return inst;
}

/// Labels with h = max and g(-) = +, g(?) = ?, g(+) = -.
inline LocalInstance rooted_labelling() {
  LocalInstance inst;
  inst.name = "labelling";
  inst.kind = ValueKind::label;
  inst.v_min = Label::minus;
  inst.v_max = Label::plus;
  inst.g = [](const LocalValue& v) -> LocalValue {
    switch (std::get<Label>(v)) {
      case Label::minus: return Label::plus;
      case Label::undecided: return Label::undecided;
      case Label::plus: return Label::minus;
    }
    return Label::undecided;
  };
  inst.h = [](std::span<const LocalValue> xs) { return detail::max_of(xs, Label::minus); };
  return inst;
}

/// h = max over V = W = [0,1] with the given g (default 1/(1+x)).
inline LocalInstance max_based(std::function<LocalValue(const LocalValue&)> g = {}, std::string name = "max-based") {
  LocalInstance inst;
  inst.name = std::move(name);
  inst.kind = ValueKind::rational;
  inst.v_min = Rational(0);
  inst.v_max = Rational(1);
  inst.g = g ? std::move(g) : numeric_function(detail::inverse_successor);
  inst.h = [](std::span<const LocalValue> xs) { return detail::max_of(xs, Rational(0)); };
  return inst;
}

inline std::vector<LocalInstance> builtin_instances() { return {categoriser(), rooted_labelling(), max_based()}; }

/// True iff g is the rooted labelling table.
inline bool is_rooted_labelling(const LocalInstance& inst) {
  if (inst.kind != ValueKind::label) return false;
  auto at = [&](Label l) { return std::get<Label>(inst.g(l)); };
  return at(Label::minus) == Label::plus && at(Label::undecided) == Label::undecided && at(Label::plus) == Label::minus;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline LocalValue local_step(const AttackGraph& g, ArgIndex a, const LocalInstance& inst,
                             const std::vector<LocalValue>& values) {
  if (g.is_leaf(a)) return inst.v_max;
  std::vector<LocalValue> in;
  for (ArgIndex b : g.attackers(a)) in.push_back(values[b]);
  return inst.g(inst.h(in));
}

inline void label_mcycle(const AttackGraph& g, const ArgSet& comp, std::vector<LocalValue>& values) {
  auto inside = [&](ArgIndex a) { return std::binary_search(comp.begin(), comp.end(), a); };
  std::vector<std::optional<Label>> label(g.size());
  for (ArgIndex x : comp) {
    for (ArgIndex b : g.attackers(x)) {
      if (!inside(b) && std::get<Label>(values[b]) == Label::plus) label[x] = Label::minus;
    }
  }
  auto current = [&](ArgIndex b) -> std::optional<Label> {
    if (!inside(b)) return std::get<Label>(values[b]);
    return label[b];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (ArgIndex x : comp) {
      if (label[x]) continue;
      bool all_minus = true;
      for (ArgIndex b : g.attackers(x)) {
        auto lb = current(b);
        if (lb == Label::plus) {
          label[x] = Label::minus;
          changed = true;
          break;
        }
        if (lb != Label::minus) all_minus = false;
      }
      if (!label[x] && all_minus) {
        label[x] = Label::plus;
        changed = true;
      }
    }
  }
  for (ArgIndex x : comp) values[x] = label[x].value_or(Label::undecided);
}

}  // namespace detail

/// Values of every argument, indexed by ArgIndex. Acyclic graphs are
/// evaluated exactly; graphs with cycles are evaluated in floating point by
/// fixpoint iteration over each mcycle (numeric instances) or by label
/// propagation (rooted labelling).
inline std::vector<LocalValue> evaluate_local(const AttackGraph& g, const LocalInstance& inst,
                                              const FixpointConfig& cfg = {}) {
  if (!(cfg.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  std::vector<LocalValue> values(g.size());
  auto comps = strongly_connected_components(g);
  const bool cyclic = std::any_of(comps.begin(), comps.end(), [&](const ArgSet& c) { return is_cyclic_component(g, c); });

  if (!cyclic) {
    for (auto& comp : comps) values[comp.front()] = detail::local_step(g, comp.front(), inst, values);
    return values;
  }

  if (inst.kind == ValueKind::label) {
    if (!is_rooted_labelling(inst)) throw computation_error("label instance '" + inst.name + "' is undefined on cycles");
    for (auto& comp : comps) {
      if (is_cyclic_component(g, comp)) {
        detail::label_mcycle(g, comp, values);
      } else {
        values[comp.front()] = detail::local_step(g, comp.front(), inst, values);
      }
    }
    return values;
  }

  LocalInstance floating = inst;
  floating.v_max = to_double(inst.v_max);
  for (auto& comp : comps) {
    if (!is_cyclic_component(g, comp)) {
      values[comp.front()] = detail::local_step(g, comp.front(), floating, values);
      continue;
    }
    for (ArgIndex x : comp) values[x] = to_double(inst.v_max);
    std::vector<LocalValue> next = values;
    bool converged = false;
    for (std::size_t it = 0; it < cfg.max_iterations && !converged; ++it) {
      double diff = 0;
      for (ArgIndex x : comp) {
        next[x] = to_double(detail::local_step(g, x, floating, values));
        diff = std::max(diff, std::abs(to_double(next[x]) - to_double(values[x])));
      }
      for (ArgIndex x : comp) values[x] = next[x];
      converged = diff < cfg.tolerance;
    }
    if (!converged) {
      throw computation_error("fixpoint iteration did not converge within " + std::to_string(cfg.max_iterations) +
                              " iterations");
    }
  }
  return values;
}

/// Strict preference under a local valuation.
inline auto local_preference(const std::vector<LocalValue>& values) {
  return [values](ArgIndex a, ArgIndex b) { return compare_values(values[a], values[b]) > 0; };
}

// ---------------------------------------------------------------------------
// Induced complete preorder

struct CompletePreorder {
  std::vector<ArgSet> classes;     ///< equivalence classes, best first
  std::vector<std::size_t> level;  ///< index of each argument's class

  /// a is at least as good as b.
  bool geq(ArgIndex a, ArgIndex b) const { return level.at(a) <= level.at(b); }
};

inline CompletePreorder induced_preorder(const std::vector<LocalValue>& values) {
  for (auto& v : values) {
    if (v.index() != values.front().index()) throw std::invalid_argument("mixed value kinds");
  }
  std::vector<ArgIndex> order(values.size());
  for (ArgIndex a = 0; a < values.size(); ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(),
                   [&](ArgIndex a, ArgIndex b) { return compare_values(values[a], values[b]) > 0; });
  CompletePreorder out;
  out.level.resize(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || compare_values(values[order[i]], values[order[i - 1]]) != 0) out.classes.emplace_back();
    out.classes.back().push_back(order[i]);
    out.level[order[i]] = out.classes.size() - 1;
  }
  for (auto& c : out.classes) std::sort(c.begin(), c.end());
  return out;
}

// ---------------------------------------------------------------------------
// Axiom checks

struct InstanceReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

inline constexpr double axiom_slack = 1e-12;

inline bool value_le(const LocalValue& a, const LocalValue& b) {
  if (std::holds_alternative<double>(a) || std::holds_alternative<double>(b)) {
    return to_double(a) <= to_double(b) + axiom_slack;
  }
  return compare_values(a, b) <= 0;
}

inline bool value_eq(const LocalValue& a, const LocalValue& b) { return value_le(a, b) && value_le(b, a); }

inline std::string render(std::span<const LocalValue> xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + to_string(xs[i]);
  return s + ")";
}

}  // namespace detail

/// Checks the h and g axioms on the given sample tuples, and the chain
/// g(Max) <= g^3(Max) <= g^5 <= g^7 <= g^8 <= g^6 <= g^4 <= g^2(Max) <= Max.
inline InstanceReport validate_instance(const LocalInstance& inst, const std::vector<std::vector<LocalValue>>& samples) {
  using detail::value_eq;
  using detail::value_le;
  InstanceReport report;
  auto fail = [&](std::string what) { report.violations.push_back(std::move(what)); };

  std::vector<LocalValue> pool{inst.v_min, inst.v_max};
  for (auto& s : samples) pool.insert(pool.end(), s.begin(), s.end());

  if (!value_eq(inst.h({}), inst.v_min)) fail("h() != V_Min");
  for (auto& x : pool) {
    std::vector<LocalValue> one{x};
    if (!value_eq(inst.h(one), x)) fail("h(x) != x for x = " + to_string(x));
  }

  std::vector<LocalValue> outputs;
  for (auto& s : samples) {
    const LocalValue hs = inst.h(s);
    outputs.push_back(hs);
    const std::string tag = detail::render(s);
    for (auto& x : s) {
      if (!value_le(x, hs)) fail("h" + tag + " < max");
    }
    std::vector<LocalValue> perm(s.rbegin(), s.rend());
    if (!value_eq(inst.h(perm), hs)) fail("h not permutation invariant on " + tag);
    if (s.size() > 1) {
      std::rotate(perm.begin(), perm.begin() + 1, perm.end());
      if (!value_eq(inst.h(perm), hs)) fail("h not permutation invariant on " + tag);
    }
    for (auto& y : pool) {
      std::vector<LocalValue> longer = s;
      longer.push_back(y);
      if (!value_le(hs, inst.h(longer))) fail("h decreases when appending " + to_string(y) + " to " + tag);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!value_le(s[i], y)) continue;
        std::vector<LocalValue> raised = s;
        raised[i] = y;
        if (!value_le(hs, inst.h(raised))) fail("h not monotone on " + tag);
      }
    }
  }

  if (!value_eq(inst.g(inst.v_min), inst.v_max)) fail("g(V_Min) != V_Max");
  if (value_le(inst.v_max, inst.g(inst.v_max))) fail("g(V_Max) is not below V_Max");
  std::vector<LocalValue> domain = pool;
  domain.insert(domain.end(), outputs.begin(), outputs.end());
  for (auto& x : domain) {
    for (auto& y : domain) {
      if (value_le(x, y) && !value_le(inst.g(y), inst.g(x))) {
        fail("g increases between " + to_string(x) + " and " + to_string(y));
      }
    }
  }

  std::vector<LocalValue> it{inst.v_max};
  for (int k = 1; k <= 8; ++k) it.push_back(inst.g(it.back()));
  const int chain[] = {1, 3, 5, 7, 8, 6, 4, 2, 0};
  for (std::size_t k = 0; k + 1 < std::size(chain); ++k) {
    if (!value_le(it[chain[k]], it[chain[k + 1]])) {
      fail("g^" + std::to_string(chain[k]) + "(V_Max) > g^" + std::to_string(chain[k + 1]) + "(V_Max)");
    }
  }
  return report;
}

enum class StarResult { pass, fail, premise_not_met };

inline const char* to_string(StarResult r) {
  switch (r) {
    case StarResult::pass: return "pass";
    case StarResult::fail: return "fail";
    case StarResult::premise_not_met: return "premise-not-met";
  }
  return "?";
}

struct StarCheck {
  std::vector<LocalValue> sample;
  StarResult result;
};

/// (forall i: g(x_i) >= x_i) implies g(h(x)) >= h(x), checked per sample.
inline std::vector<StarCheck> check_condition_star(const LocalInstance& inst,
                                                   const std::vector<std::vector<LocalValue>>& samples) {
  std::vector<StarCheck> out;
  for (auto& s : samples) {
    const bool premise = std::all_of(s.begin(), s.end(), [&](const LocalValue& x) { return detail::value_le(x, inst.g(x)); });
    if (!premise) {
      out.push_back({s, StarResult::premise_not_met});
      continue;
    }
    const LocalValue hs = inst.h(s);
    out.push_back({s, detail::value_le(hs, inst.g(hs)) ? StarResult::pass : StarResult::fail});
  }
  return out;
}

}  // namespace gradarg
