// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "lwca/common.hpp"
#include "lwca/item_set.hpp"

namespace lwca {

// An additive set function given by per-item nonnegative weights.
// Clause value of a set is the sum of its members' weights.
struct AdditiveClause {
  std::vector<double> weights;

  AdditiveClause() = default;
  explicit AdditiveClause(std::vector<double> w) : weights(std::move(w)) {
    for (double x : weights)
      require(x >= 0.0, "AdditiveClause: negative weight");
  }

  int item_count() const { return static_cast<int>(weights.size()); }

  double operator()(const ItemSet& s) const {
    require(s.universe == item_count(), "AdditiveClause: universe mismatch");
    double total = 0.0;
    for (std::uint32_t b = s.bits; b != 0; b &= b - 1)
      total += weights[static_cast<std::size_t>(std::countr_zero(b))];
    return total;
  }

  friend bool operator==(const AdditiveClause& a, const AdditiveClause& b) {
    return a.weights == b.weights;
  }
};

// A monotone normalized set-function valuation over m items, in one of four
// concrete forms:
//   Additive  - per-item weights
//   Xos       - max over a nonempty list of additive clauses
//   Coverage  - each item covers a set of weighted ground elements; the
//               value of S is the total weight of the union of covers
//   Capped    - min of an inner valuation and a budget cap
class Valuation {
 public:
  enum class Kind { Additive, Xos, Coverage, Capped };

  static Valuation additive(std::vector<double> weights) {
    check_universe(static_cast<int>(weights.size()));
    return Valuation(AdditiveData{AdditiveClause(std::move(weights))});
  }

  static Valuation xos(std::vector<AdditiveClause> clauses) {
    require(!clauses.empty(), "Valuation: XOS needs at least one clause");
    int m = clauses.front().item_count();
    check_universe(m);
    for (const auto& c : clauses)
      require(c.item_count() == m, "Valuation: XOS clause length mismatch");
    return Valuation(XosData{std::move(clauses)});
  }

  // covers[j] is the bitmask of ground elements covered by item j.
  static Valuation coverage(std::vector<std::uint64_t> covers,
                            std::vector<double> element_weights) {
    check_universe(static_cast<int>(covers.size()));
    require(element_weights.size() <= 64, "Valuation: too many elements");
    for (double w : element_weights)
      require(w >= 0.0, "Valuation: negative element weight");
    std::uint64_t all =
        element_weights.size() == 64
            ? ~0ULL
            : ((1ULL << element_weights.size()) - 1ULL);
    for (std::uint64_t c : covers)
      require((c & ~all) == 0, "Valuation: cover references unknown element");
    return Valuation(CoverageData{std::move(covers), std::move(element_weights)});
  }

  static Valuation capped(Valuation inner, double cap) {
    require(cap >= 0.0, "Valuation: negative cap");
    return Valuation(CappedData{
        std::make_shared<const Valuation>(std::move(inner)), cap});
  }

  Kind kind() const { return static_cast<Kind>(data_.index()); }

  int item_count() const {
    switch (kind()) {
      case Kind::Additive:
        return std::get<AdditiveData>(data_).clause.item_count();
      case Kind::Xos:
        return std::get<XosData>(data_).clauses.front().item_count();
      case Kind::Coverage:
        return static_cast<int>(std::get<CoverageData>(data_).covers.size());
      case Kind::Capped:
        return std::get<CappedData>(data_).inner->item_count();
    }
    return 0;
  }

  double value(const ItemSet& s) const {
    require(s.universe == item_count(), "Valuation: universe mismatch");
    switch (kind()) {
      case Kind::Additive:
        return std::get<AdditiveData>(data_).clause(s);
      case Kind::Xos: {
        double best = 0.0;
        for (const auto& c : std::get<XosData>(data_).clauses)
          best = std::max(best, c(s));
        return best;
      }
      case Kind::Coverage: {
        const auto& d = std::get<CoverageData>(data_);
        std::uint64_t covered = 0;
        for (std::uint32_t b = s.bits; b != 0; b &= b - 1)
          covered |= d.covers[static_cast<std::size_t>(std::countr_zero(b))];
        double total = 0.0;
        for (std::uint64_t e = covered; e != 0; e &= e - 1)
          total += d.element_weights[static_cast<std::size_t>(std::countr_zero(e))];
        return total;
      }
      case Kind::Capped: {
        const auto& d = std::get<CappedData>(data_);
        return std::min(d.inner->value(s), d.cap);
      }
    }
    return 0.0;
  }

  const std::vector<AdditiveClause>& clauses() const {
    require(kind() == Kind::Xos, "Valuation: not an XOS valuation");
    return std::get<XosData>(data_).clauses;
  }

  const std::vector<double>& weights() const {
    require(kind() == Kind::Additive, "Valuation: not an additive valuation");
    return std::get<AdditiveData>(data_).clause.weights;
  }

  const std::vector<std::uint64_t>& covers() const {
    require(kind() == Kind::Coverage, "Valuation: not a coverage valuation");
    return std::get<CoverageData>(data_).covers;
  }

  const std::vector<double>& element_weights() const {
    require(kind() == Kind::Coverage, "Valuation: not a coverage valuation");
    return std::get<CoverageData>(data_).element_weights;
  }

  double cap() const {
    require(kind() == Kind::Capped, "Valuation: not a capped valuation");
    return std::get<CappedData>(data_).cap;
  }

  const Valuation& inner() const {
    require(kind() == Kind::Capped, "Valuation: not a capped valuation");
    return *std::get<CappedData>(data_).inner;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Additive:
        return a.weights() == b.weights();
      case Kind::Xos:
        return a.clauses() == b.clauses();
      case Kind::Coverage:
        return a.covers() == b.covers() &&
               a.element_weights() == b.element_weights();
      case Kind::Capped:
        return a.cap() == b.cap() && a.inner() == b.inner();
    }
    return false;
  }

 private:
  struct AdditiveData {
    AdditiveClause clause;
  };
  struct XosData {
    std::vector<AdditiveClause> clauses;
  };
  struct CoverageData {
    std::vector<std::uint64_t> covers;
    std::vector<double> element_weights;
  };
  struct CappedData {
    std::shared_ptr<const Valuation> inner;
    double cap;
  };

  using Data = std::variant<AdditiveData, XosData, CoverageData, CappedData>;

  explicit Valuation(Data d) : data_(std::move(d)) {}

  static void check_universe(int m) {
    require(m >= 1 && m <= kMaxItems, "Valuation: universe size out of range");
  }

  Data data_;
};

inline double value(const Valuation& v, const ItemSet& s) { return v.value(s); }

// Scales every weight (and cap, for capped valuations) by c >= 0.
inline Valuation scale_valuation(const Valuation& v, double c) {
  require(c >= 0.0, "scale_valuation: negative factor");
  switch (v.kind()) {
    case Valuation::Kind::Additive: {
      auto w = v.weights();
      for (double& x : w) x *= c;
      return Valuation::additive(std::move(w));
    }
    case Valuation::Kind::Xos: {
      auto cs = v.clauses();
      for (auto& clause : cs)
        for (double& x : clause.weights) x *= c;
      return Valuation::xos(std::move(cs));
    }
    case Valuation::Kind::Coverage: {
      auto ew = v.element_weights();
      for (double& x : ew) x *= c;
      return Valuation::coverage(v.covers(), std::move(ew));
    }
    case Valuation::Kind::Capped:
      return Valuation::capped(scale_valuation(v.inner(), c), v.cap() * c);
  }
  return v;
}

// The argmax clause of an XOS valuation for set S (lowest clause index on
// ties; the zero clause for the empty set). An additive valuation counts as
// a single-clause XOS and always yields its weights; every other kind is
// rejected.
inline AdditiveClause xos_clause(const Valuation& v, const ItemSet& s) {
  require(s.universe == v.item_count(), "xos_clause: universe mismatch");
  if (v.kind() == Valuation::Kind::Additive)
    return AdditiveClause(v.weights());
  require(v.kind() == Valuation::Kind::Xos,
          "xos_clause: valuation has no explicit clause form");
  if (s.is_empty()) {
    return AdditiveClause(
        std::vector<double>(static_cast<std::size_t>(v.item_count()), 0.0));
  }
  const auto& cs = v.clauses();
  std::size_t best = 0;
  double best_val = cs[0](s);
  for (std::size_t k = 1; k < cs.size(); ++k) {
    double val = cs[k](s);
    if (val > best_val) {
      best_val = val;
      best = k;
    }
  }
  return cs[best];
}

// A clause A with A(S) = v(S) and A(T) <= v(T) for every T, for any of the
// four valuation kinds. Additive/XOS use the explicit clause; Coverage uses
// per-item marginals in ascending index order inside S (a valid dominated
// clause for any submodular function); Capped applies the prefix cap to the
// inner clause. Items outside S always carry weight zero except in the
// Additive/Xos case, where the raw clause is already dominated.
inline AdditiveClause representative_clause(const Valuation& v,
                                            const ItemSet& s);

// Prefix-caps the representative clause of v at budget B over the members of
// S taken in ascending index order: weights are kept while the running sum
// stays within B, the first overflowing weight is truncated to the remaining
// slack, and everything after it (and outside S) is zeroed. The result A'
// satisfies A'(S) = min{v(S), B} and A'(T) <= min{v(T), B} for all T.
inline AdditiveClause liquid_xos_clause(const Valuation& v, double budget,
                                        const ItemSet& s) {
  require(budget >= 0.0, "liquid_xos_clause: negative budget");
  AdditiveClause base = representative_clause(v, s);
  std::vector<double> out(static_cast<std::size_t>(v.item_count()), 0.0);
  double prefix = 0.0;
  for (int j : s.members()) {
    double w = base.weights[static_cast<std::size_t>(j)];
    if (prefix + w <= budget) {
      out[static_cast<std::size_t>(j)] = w;
      prefix += w;
    } else {
      out[static_cast<std::size_t>(j)] = std::max(budget - prefix, 0.0);
      prefix = budget;
    }
  }
  return AdditiveClause(std::move(out));
}

inline AdditiveClause representative_clause(const Valuation& v,
                                            const ItemSet& s) {
  require(s.universe == v.item_count(), "representative_clause: universe mismatch");
  switch (v.kind()) {
    case Valuation::Kind::Additive:
    case Valuation::Kind::Xos:
      return xos_clause(v, s);
    case Valuation::Kind::Coverage: {
      std::vector<double> w(static_cast<std::size_t>(v.item_count()), 0.0);
      ItemSet prefix = ItemSet::empty(s.universe);
      double prev = 0.0;
      for (int j : s.members()) {
        prefix = prefix.with(j);
        double cur = v.value(prefix);
        w[static_cast<std::size_t>(j)] = cur - prev;
        prev = cur;
      }
      return AdditiveClause(std::move(w));
    }
    case Valuation::Kind::Capped:
      return liquid_xos_clause(v.inner(), v.cap(), s);
  }
  return AdditiveClause(std::vector<double>(v.item_count(), 0.0));
}

enum class SetFunctionClass { Monotone, Submodular, Subadditive };

// Result of an exhaustive class-membership check. When the property fails,
// witness_s / witness_t hold a violating pair and lhs/rhs the two sides of
// the defining inequality.
struct ClassCheckResult {
  bool holds = true;
  std::uint32_t witness_s = 0;
  std::uint32_t witness_t = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Exhaustive check against any set function given as mask -> value.
// Enumerates all pairs (S, T); m is capped so this stays at most 4^10 pairs.
inline ClassCheckResult check_class_fn(
    int m, const std::function<double(std::uint32_t)>& fn,
    SetFunctionClass cls) {
  require(m >= 0 && m <= kMaxClassCheckItems,
          "check_class: universe too large for exhaustive check");
  std::uint32_t n = 1u << m;
  std::vector<double> table(n);
  for (std::uint32_t s = 0; s < n; ++s) table[s] = fn(s);

  ClassCheckResult r;
  auto fail = [&](std::uint32_t s, std::uint32_t t, double lhs, double rhs) {
    r.holds = false;
    r.witness_s = s;
    r.witness_t = t;
    r.lhs = lhs;
    r.rhs = rhs;
  };

  for (std::uint32_t s = 0; s < n && r.holds; ++s) {
    for (std::uint32_t t = 0; t < n; ++t) {
      double vs = table[s], vt = table[t];
      switch (cls) {
        case SetFunctionClass::Monotone:
          if ((s & ~t) == 0 && vs > vt + kTol) {
            fail(s, t, vs, vt);
          }
          break;
        case SetFunctionClass::Submodular:
          if (vs + vt + kTol < table[s & t] + table[s | t]) {
            fail(s, t, vs + vt, table[s & t] + table[s | t]);
          }
          break;
        case SetFunctionClass::Subadditive:
          if (vs + vt + kTol < table[s | t]) {
            fail(s, t, vs + vt, table[s | t]);
          }
          break;
      }
      if (!r.holds) break;
    }
  }
  return r;
}

inline ClassCheckResult check_class(const Valuation& v, SetFunctionClass cls) {
  int m = v.item_count();
  return check_class_fn(
      m, [&](std::uint32_t mask) { return v.value(ItemSet(mask, m)); }, cls);
}

// Verifies that clause A is dominated by v everywhere and tight at S:
// A(T) <= v(T) for all T, with A(S) = v_target(S). Used for the XOS
// closure property, where v_target is min{v, B}.
struct DominanceCheckResult {
  bool holds = true;
  std::uint32_t witness = 0;
  double clause_value = 0.0;
  double bound = 0.0;
};

inline DominanceCheckResult check_clause_dominated(
    int m, const AdditiveClause& clause,
    const std::function<double(std::uint32_t)>& bound_fn, std::uint32_t tight_at) {
  require(m >= 0 && m <= kMaxClassCheckItems,
          "check_clause_dominated: universe too large");
  DominanceCheckResult r;
  for (std::uint32_t t = 0; t < (1u << m); ++t) {
    double cv = clause(ItemSet(t, m));
    double bound = bound_fn(t);
    bool bad = cv > bound + kTol ||
               (t == tight_at && std::abs(cv - bound) > kTol);
    if (bad) {
      r.holds = false;
      r.witness = t;
      r.clause_value = cv;
      r.bound = bound;
      return r;
    }
  }
  return r;
}

}  // namespace lwca
