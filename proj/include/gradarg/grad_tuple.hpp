#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gradarg/errors.hpp"

namespace gradarg {

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) throw computation_error("tuple arithmetic overflow");
  return a + b;
}

}  // namespace detail

/// Sorted multiset of non-negative integers, finite or infinite.
///
/// Stored as runs of (value, multiplicity). Infinite tuples come in three
/// shapes:
///  - zero_inf: the distinguished 0^inf;
///  - repeat(c): every element below c listed in the prefix, then c forever
///    (1^inf is repeat(1) with an empty prefix);
///  - truncated(H): the prefix holds exactly the elements <= H and
///    infinitely many elements lie above H, values unknown.
class GradTuple {
public:
  enum class Tail { none, zero_inf, repeat, truncated };

  struct Run {
    std::uint64_t value;
    std::uint64_t count;
    friend bool operator==(const Run&, const Run&) = default;
  };

  GradTuple() = default;

  static GradTuple empty() { return {}; }

  static GradTuple zero_inf() {
    GradTuple t;
    t.tail_ = Tail::zero_inf;
    return t;
  }

  static GradTuple ones_inf() { return repeat({}, 1); }

  static GradTuple finite(std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    GradTuple t;
    for (auto x : elements) t.push(x, 1);
    return t;
  }

  static GradTuple from_runs(std::vector<Run> runs) {
    std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.value < b.value; });
    GradTuple t;
    for (auto r : runs) t.push(r.value, r.count);
    return t;
  }

  /// Elements of `prefix` above the horizon are dropped.
  static GradTuple truncated(std::vector<std::uint64_t> prefix, std::uint64_t horizon) {
    GradTuple t = finite(std::move(prefix));
    t.cut_above(horizon);
    t.tail_ = Tail::truncated;
    t.bound_ = horizon;
    return t;
  }

  static GradTuple truncated_runs(std::vector<Run> runs, std::uint64_t horizon) {
    GradTuple t = from_runs(std::move(runs));
    t.cut_above(horizon);
    t.tail_ = Tail::truncated;
    t.bound_ = horizon;
    return t;
  }

  /// Prefix elements >= c are dropped: they never occur at a finite position.
  static GradTuple repeat(std::vector<std::uint64_t> prefix, std::uint64_t c) {
    GradTuple t = finite(std::move(prefix));
    t.cut_from(c);
    t.tail_ = Tail::repeat;
    t.bound_ = c;
    return t;
  }

  static GradTuple repeat_runs(std::vector<Run> runs, std::uint64_t c) {
    GradTuple t = from_runs(std::move(runs));
    t.cut_from(c);
    t.tail_ = Tail::repeat;
    t.bound_ = c;
    return t;
  }

  Tail tail() const noexcept { return tail_; }
  bool is_zero_inf() const noexcept { return tail_ == Tail::zero_inf; }
  bool is_truncated() const noexcept { return tail_ == Tail::truncated; }
  bool is_infinite() const noexcept { return tail_ != Tail::none; }
  bool is_empty() const noexcept { return tail_ == Tail::none && runs_.empty(); }

  /// Horizon of a truncated tuple.
  std::uint64_t horizon() const {
    if (tail_ != Tail::truncated) throw std::logic_error("tuple has no horizon");
    return bound_;
  }
  /// Repeated value of a repeat tuple.
  std::uint64_t repeated_value() const {
    if (tail_ != Tail::repeat) throw std::logic_error("tuple has no repeated value");
    return bound_;
  }

  const std::vector<Run>& runs() const noexcept { return runs_; }

  /// Number of elements; nullopt stands for infinity.
  std::optional<std::uint64_t> size() const {
    if (is_infinite()) return std::nullopt;
    return prefix_size();
  }

  std::uint64_t prefix_size() const {
    std::uint64_t n = 0;
    for (auto& r : runs_) n = detail::checked_add(n, r.count);
    return n;
  }

  /// The listed elements, expanded. Intended for small tuples.
  std::vector<std::uint64_t> prefix() const {
    std::vector<std::uint64_t> out;
    for (auto& r : runs_) out.insert(out.end(), r.count, r.value);
    return out;
  }

  std::uint64_t count(std::uint64_t value) const {
    for (auto& r : runs_) {
      if (r.value == value) return r.count;
    }
    return 0;
  }

  friend bool operator==(const GradTuple&, const GradTuple&) = default;

  /// t1 * t2 (concatenation).
  friend GradTuple concat(const GradTuple& a, const GradTuple& b) {
    if (a.is_zero_inf()) return b.is_empty() ? a : b;
    if (b.is_zero_inf()) return a.is_empty() ? b : a;

    GradTuple out;
    auto i = a.runs_.begin(), j = b.runs_.begin();
    while (i != a.runs_.end() || j != b.runs_.end()) {
      if (j == b.runs_.end() || (i != a.runs_.end() && i->value < j->value)) {
        out.push(i->value, i->count);
        ++i;
      } else if (i == a.runs_.end() || j->value < i->value) {
        out.push(j->value, j->count);
        ++j;
      } else {
        out.push(i->value, detail::checked_add(i->count, j->count));
        ++i;
        ++j;
      }
    }
    out.combine_tail(a);
    out.combine_tail(b);
    return out;
  }

  /// t + k (element-wise shift).
  friend GradTuple shift(const GradTuple& t, std::uint64_t k) {
    if (t.is_zero_inf()) return finite({k});
    GradTuple out = t;
    for (auto& r : out.runs_) r.value = detail::checked_add(r.value, k);
    if (out.tail_ == Tail::repeat || out.tail_ == Tail::truncated) out.bound_ = detail::checked_add(out.bound_, k);
    return out;
  }

private:
  void push(std::uint64_t value, std::uint64_t count) {
    if (count == 0) return;
    if (!runs_.empty() && runs_.back().value == value) {
      runs_.back().count = detail::checked_add(runs_.back().count, count);
    } else {
      runs_.push_back({value, count});
    }
  }

  void cut_above(std::uint64_t h) {
    while (!runs_.empty() && runs_.back().value > h) runs_.pop_back();
  }
  void cut_from(std::uint64_t c) {
    while (!runs_.empty() && runs_.back().value >= c) runs_.pop_back();
  }

  // Merges the tail of an operand into this (already merged) result.
  void combine_tail(const GradTuple& other) {
    if (other.tail_ == Tail::none) {
      if (tail_ == Tail::truncated) cut_above(bound_);
      if (tail_ == Tail::repeat) cut_from(bound_);
      return;
    }
    const bool other_trunc = other.tail_ == Tail::truncated;
    if (tail_ == Tail::none) {
      tail_ = other.tail_;
      bound_ = other.bound_;
    } else if (tail_ == Tail::truncated && other_trunc) {
      bound_ = std::min(bound_, other.bound_);
    } else if (tail_ == Tail::repeat && !other_trunc) {
      bound_ = std::min(bound_, other.bound_);
    } else {
      // One truncated(H), one repeat(c): c is visible iff c <= H.
      const std::uint64_t h = tail_ == Tail::truncated ? bound_ : other.bound_;
      const std::uint64_t c = tail_ == Tail::repeat ? bound_ : other.bound_;
      if (c <= h) {
        tail_ = Tail::repeat;
        bound_ = c;
      } else {
        tail_ = Tail::truncated;
        bound_ = h;
      }
    }
    if (tail_ == Tail::truncated) cut_above(bound_);
    if (tail_ == Tail::repeat) cut_from(bound_);
  }

  std::vector<Run> runs_;
  Tail tail_ = Tail::none;
  std::uint64_t bound_ = 0;
};

enum class LexOrder { less, equal, greater, unknown };

inline LexOrder reverse(LexOrder o) {
  if (o == LexOrder::less) return LexOrder::greater;
  if (o == LexOrder::greater) return LexOrder::less;
  return o;
}

namespace detail {

// Walks a tuple position by position, one run at a time.
class TupleCursor {
public:
  enum class Kind { value, absent, unknown };

  explicit TupleCursor(const GradTuple& t) : t_(t) {}

  Kind kind() const {
    if (run_ < t_.runs().size()) return Kind::value;
    switch (t_.tail()) {
      case GradTuple::Tail::none: return Kind::absent;
      case GradTuple::Tail::truncated: return Kind::unknown;
      default: return Kind::value;
    }
  }

  /// Current element (valid for Kind::value).
  std::uint64_t value() const {
    if (run_ < t_.runs().size()) return t_.runs()[run_].value;
    return t_.tail() == GradTuple::Tail::zero_inf ? 0 : t_.repeated_value();
  }

  /// Horizon (valid for Kind::unknown).
  std::uint64_t horizon() const { return t_.horizon(); }

  /// Elements left with the current value; nullopt when infinite.
  std::optional<std::uint64_t> remaining() const {
    if (run_ < t_.runs().size()) return t_.runs()[run_].count - offset_;
    return std::nullopt;
  }

  void advance(std::uint64_t n) {
    if (run_ >= t_.runs().size()) return;
    offset_ += n;
    if (offset_ == t_.runs()[run_].count) {
      ++run_;
      offset_ = 0;
    }
  }

private:
  const GradTuple& t_;
  std::size_t run_ = 0;
  std::uint64_t offset_ = 0;
};

}  // namespace detail

/// Lexicographic order on possibly infinite tuples. Truncated tails are
/// compared only within their certified horizon; `unknown` is returned when
/// the answer depends on elements past it.
inline LexOrder lex_compare(const GradTuple& x, const GradTuple& y) {
  using K = detail::TupleCursor::Kind;
  detail::TupleCursor cx(x), cy(y);
  while (true) {
    const K kx = cx.kind(), ky = cy.kind();
    if (kx == K::absent || ky == K::absent) {
      if (kx == ky) return LexOrder::equal;
      return kx == K::absent ? LexOrder::less : LexOrder::greater;
    }
    if (kx == K::unknown && ky == K::unknown) return LexOrder::unknown;
    if (kx == K::unknown) {
      return cy.value() <= cx.horizon() ? LexOrder::greater : LexOrder::unknown;
    }
    if (ky == K::unknown) {
      return cx.value() <= cy.horizon() ? LexOrder::less : LexOrder::unknown;
    }
    if (cx.value() != cy.value()) return cx.value() < cy.value() ? LexOrder::less : LexOrder::greater;
    auto rx = cx.remaining(), ry = cy.remaining();
    if (!rx && !ry) return LexOrder::equal;
    const std::uint64_t step = !rx ? *ry : !ry ? *rx : std::min(*rx, *ry);
    cx.advance(step);
    cy.advance(step);
  }
}

// ---------------------------------------------------------------------------
// Tupled values

/// [vp, vi]: even-length and odd-length branch multisets.
struct TupledValue {
  GradTuple vp;
  GradTuple vi;

  static TupledValue leaf() { return {GradTuple::zero_inf(), GradTuple::empty()}; }
  static TupledValue minimum() { return {GradTuple::empty(), GradTuple::ones_inf()}; }

  bool is_exact() const { return !vp.is_truncated() && !vi.is_truncated(); }

  friend bool operator==(const TupledValue&, const TupledValue&) = default;
};

enum class Verdict { first_better, second_better, equivalent, incomparable };

struct ComparisonOutcome {
  Verdict verdict = Verdict::incomparable;
  bool exact = true;
  friend bool operator==(const ComparisonOutcome&, const ComparisonOutcome&) = default;
};

inline Verdict mirror(Verdict v) {
  if (v == Verdict::first_better) return Verdict::second_better;
  if (v == Verdict::second_better) return Verdict::first_better;
  return v;
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::first_better: return "first-better";
    case Verdict::second_better: return "second-better";
    case Verdict::equivalent: return "equivalent";
    case Verdict::incomparable: return "incomparable";
  }
  return "?";
}

namespace detail {

inline int compare_sizes(const GradTuple& a, const GradTuple& b) {
  auto sa = a.size(), sb = b.size();
  if (!sa && !sb) return 0;
  if (!sa) return 1;
  if (!sb) return -1;
  return *sa < *sb ? -1 : (*sa > *sb ? 1 : 0);
}

inline Verdict lex_stage(LexOrder even, LexOrder odd) {
  const bool even_le = even == LexOrder::less || even == LexOrder::equal;
  const bool even_ge = even == LexOrder::greater || even == LexOrder::equal;
  const bool odd_le = odd == LexOrder::less || odd == LexOrder::equal;
  const bool odd_ge = odd == LexOrder::greater || odd == LexOrder::equal;
  if (even_le && odd_ge) return Verdict::first_better;
  if (even_ge && odd_le) return Verdict::second_better;
  return Verdict::incomparable;
}

}  // namespace detail

/// Two-stage comparison: branch counts first, then branch lengths.
/// Shorter defence branches and longer attack branches are better.
inline ComparisonOutcome compare(const TupledValue& v, const TupledValue& w) {
  if (v == w) return {Verdict::equivalent, v.is_exact()};

  const int odd = detail::compare_sizes(v.vi, w.vi);
  const int even = detail::compare_sizes(v.vp, w.vp);
  if (odd != 0 || even != 0) {
    if (odd >= 0 && even <= 0) return {Verdict::second_better, true};
    if (odd <= 0 && even >= 0) return {Verdict::first_better, true};
    return {Verdict::incomparable, true};
  }

  const LexOrder le = lex_compare(v.vp, w.vp);
  const LexOrder lo = lex_compare(v.vi, w.vi);
  if (le != LexOrder::unknown && lo != LexOrder::unknown) return {detail::lex_stage(le, lo), true};

  // Try every completion of the undecided comparisons; keep a verdict only
  // if all of them agree.
  static constexpr LexOrder all[] = {LexOrder::less, LexOrder::equal, LexOrder::greater};
  std::optional<Verdict> agreed;
  bool consistent = true;
  for (LexOrder e : all) {
    if (le != LexOrder::unknown && e != le) continue;
    for (LexOrder o : all) {
      if (lo != LexOrder::unknown && o != lo) continue;
      const Verdict cand = detail::lex_stage(e, o);
      if (agreed && *agreed != cand) consistent = false;
      agreed = cand;
    }
  }
  return {consistent ? *agreed : Verdict::incomparable, false};
}

/// v is at least as good as w.
inline bool at_least_as_good(const TupledValue& v, const TupledValue& w) {
  const Verdict r = compare(v, w).verdict;
  return r == Verdict::first_better || r == Verdict::equivalent;
}

inline bool strictly_better(const TupledValue& v, const TupledValue& w) {
  return compare(v, w).verdict == Verdict::first_better;
}

// ---------------------------------------------------------------------------
// Text form: [(2,4),(1,3,3)], [(2,4,6,...),(1,3,5,...)], [0^inf,()], [(),1^inf]

/// Runs longer than this are written as value^count.
inline constexpr std::uint64_t max_expanded_run = 16;

inline std::string to_string(const GradTuple& t) {
  if (t.is_zero_inf()) return "0^inf";
  std::ostringstream out;
  if (t.tail() == GradTuple::Tail::repeat && t.runs().empty()) {
    out << t.repeated_value() << "^inf";
    return out.str();
  }
  out << '(';
  bool first = true;
  auto item = [&](const std::string& s) {
    if (!first) out << ',';
    out << s;
    first = false;
  };
  for (auto& r : t.runs()) {
    if (r.count > max_expanded_run) {
      item(std::to_string(r.value) + "^" + std::to_string(r.count));
    } else {
      for (std::uint64_t k = 0; k < r.count; ++k) item(std::to_string(r.value));
    }
  }
  if (t.tail() == GradTuple::Tail::repeat) item(std::to_string(t.repeated_value()) + "^inf");
  if (t.tail() == GradTuple::Tail::truncated) item("...");
  out << ')';
  return out.str();
}

inline std::string to_string(const TupledValue& v) { return "[" + to_string(v.vp) + "," + to_string(v.vi) + "]"; }

inline std::ostream& operator<<(std::ostream& os, const GradTuple& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const TupledValue& v) { return os << to_string(v); }
inline std::ostream& operator<<(std::ostream& os, Verdict v) { return os << to_string(v); }

namespace detail {

class TupleParser {
public:
  explicit TupleParser(std::string_view s) : s_(s) {}

  TupledValue tupled_value() {
    expect('[');
    TupledValue v;
    v.vp = tuple();
    expect(',');
    v.vi = tuple();
    expect(']');
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

  GradTuple tuple_only() {
    GradTuple t = tuple();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return t;
  }

private:
  GradTuple tuple() {
    skip();
    if (peek() != '(') {
      const std::uint64_t c = number();
      expect('^');
      word("inf");
      return c == 0 ? GradTuple::zero_inf() : GradTuple::repeat({}, c);
    }
    expect('(');
    std::vector<GradTuple::Run> runs;
    skip();
    if (peek() == ')') {
      ++pos_;
      return GradTuple::empty();
    }
    while (true) {
      skip();
      if (peek() == '.') {
        word("...");
        expect(')');
        const std::uint64_t h = runs.empty() ? 0 : runs.back().value;
        return GradTuple::truncated_runs(std::move(runs), h);
      }
      const std::uint64_t x = number();
      std::uint64_t count = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        if (peek() == 'i') {
          word("inf");
          expect(')');
          check_sorted(runs, x);
          return GradTuple::repeat_runs(std::move(runs), x);
        }
        count = number();
        if (count == 0) fail("zero multiplicity");
      }
      check_sorted(runs, x);
      runs.push_back({x, count});
      skip();
      if (peek() == ')') {
        ++pos_;
        return GradTuple::from_runs(std::move(runs));
      }
      expect(',');
    }
  }

  void check_sorted(const std::vector<GradTuple::Run>& runs, std::uint64_t x) {
    if (!runs.empty() && runs.back().value > x) fail("tuple elements must be non-decreasing");
  }

  std::uint64_t number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    std::uint64_t x = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (x > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
      x = x * 10 + d;
      ++pos_;
    }
    return x;
  }

  void word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, 1, pos_ + 1); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the rendering produced by to_string. A truncated tuple `(..., x, ...)`
/// gets horizon x (0 when nothing is listed).
inline TupledValue parse_tupled_value(std::string_view text) { return detail::TupleParser(text).tupled_value(); }

inline GradTuple parse_tuple(std::string_view text) { return detail::TupleParser(text).tuple_only(); }

}  // namespace gradarg
