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

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lwca/bayes.hpp"
#include "lwca/instance.hpp"

namespace lwca {

using Json = nlohmann::json;

// Raised on malformed files; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline const Json& get_field(const Json& j, const std::string& key,
                             const std::string& context) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(context + ": missing field '" + key + "'");
  return j.at(key);
}

inline double get_number(const Json& j, const std::string& key,
                         const std::string& context) {
  const Json& f = get_field(j, key, context);
  if (!f.is_number())
    throw ParseError(context + "." + key + ": expected a number");
  return f.get<double>();
}

inline int get_int(const Json& j, const std::string& key,
                   const std::string& context) {
  const Json& f = get_field(j, key, context);
  if (!f.is_number_integer())
    throw ParseError(context + "." + key + ": expected an integer");
  return f.get<int>();
}

inline std::vector<double> get_weights(const Json& j, const std::string& context,
                                       int expected, bool nonnegative = true) {
  if (!j.is_array())
    throw ParseError(context + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(context + ": expected a number");
    out.push_back(x.get<double>());
  }
  if (expected >= 0 && static_cast<int>(out.size()) != expected)
    throw ParseError(context + ": expected length " + std::to_string(expected) +
                     ", got " + std::to_string(out.size()));
  if (nonnegative)
    for (double x : out)
      if (x < 0.0) throw ParseError(context + ": negative value");
  return out;
}

}  // namespace detail

inline Json valuation_to_json(const Valuation& v) {
  Json j;
  switch (v.kind()) {
    case Valuation::Kind::Additive:
      j["type"] = "additive";
      j["weights"] = v.weights();
      break;
    case Valuation::Kind::Xos: {
      j["type"] = "xos";
      Json clauses = Json::array();
      for (const auto& c : v.clauses()) clauses.push_back(c.weights);
      j["clauses"] = std::move(clauses);
      break;
    }
    case Valuation::Kind::Coverage: {
      j["type"] = "coverage";
      Json covers = Json::array();
      for (std::uint64_t mask : v.covers()) {
        Json elems = Json::array();
        for (std::uint64_t b = mask; b != 0; b &= b - 1)
          elems.push_back(std::countr_zero(b));
        covers.push_back(std::move(elems));
      }
      j["covers"] = std::move(covers);
      j["element_weights"] = v.element_weights();
      break;
    }
    case Valuation::Kind::Capped:
      // Capped valuations are derived from a raw valuation and a budget;
      // files persist those two pieces instead.
      throw std::invalid_argument(
          "valuation_to_json: capped valuations are not persisted");
  }
  return j;
}

inline Valuation valuation_from_json(const Json& j, int m,
                                     const std::string& context) {
  const Json& type = detail::get_field(j, "type", context);
  if (!type.is_string()) throw ParseError(context + ".type: expected a string");
  std::string t = type.get<std::string>();
  if (t == "additive") {
    return Valuation::additive(detail::get_weights(
        detail::get_field(j, "weights", context), context + ".weights", m));
  }
  if (t == "xos") {
    const Json& clauses = detail::get_field(j, "clauses", context);
    if (!clauses.is_array() || clauses.empty())
      throw ParseError(context + ".clauses: expected a nonempty array");
    std::vector<AdditiveClause> cs;
    for (std::size_t k = 0; k < clauses.size(); ++k) {
      cs.emplace_back(detail::get_weights(
          clauses.at(k), context + ".clauses[" + std::to_string(k) + "]", m));
    }
    return Valuation::xos(std::move(cs));
  }
  if (t == "coverage") {
    const Json& covers = detail::get_field(j, "covers", context);
    std::vector<double> ew = detail::get_weights(
        detail::get_field(j, "element_weights", context),
        context + ".element_weights", -1);
    if (!covers.is_array() || static_cast<int>(covers.size()) != m)
      throw ParseError(context + ".covers: expected one element list per item");
    std::vector<std::uint64_t> masks;
    for (std::size_t k = 0; k < covers.size(); ++k) {
      const Json& elems = covers.at(k);
      std::string ctx = context + ".covers[" + std::to_string(k) + "]";
      if (!elems.is_array()) throw ParseError(ctx + ": expected an array");
      std::uint64_t mask = 0;
      for (const auto& e : elems) {
        if (!e.is_number_integer()) throw ParseError(ctx + ": expected an integer");
        int idx = e.get<int>();
        if (idx < 0 || idx >= static_cast<int>(ew.size()))
          throw ParseError(ctx + ": element index out of range");
        mask |= 1ULL << idx;
      }
      masks.push_back(mask);
    }
    return Valuation::coverage(std::move(masks), std::move(ew));
  }
  throw ParseError(context + ".type: unknown valuation type '" + t + "'");
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["m"] = inst.m;
  Json bidders = Json::array();
  for (const auto& b : inst.bidders) {
    require(std::isfinite(b.budget),
            "instance_to_json: budget must be finite for persistence");
    Json jb;
    jb["budget"] = b.budget;
    jb["valuation"] = valuation_to_json(b.valuation);
    bidders.push_back(std::move(jb));
  }
  j["bidders"] = std::move(bidders);
  return j;
}

inline Instance instance_from_json(const Json& j) {
  int m = detail::get_int(j, "m", "instance");
  if (m < 1 || m > kMaxItems)
    throw ParseError("instance.m: out of range [1, " +
                     std::to_string(kMaxItems) + "]");
  const Json& bidders = detail::get_field(j, "bidders", "instance");
  if (!bidders.is_array() || bidders.empty())
    throw ParseError("instance.bidders: expected a nonempty array");
  std::vector<Bidder> bs;
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    std::string ctx = "instance.bidders[" + std::to_string(i) + "]";
    const Json& jb = bidders.at(i);
    double budget = detail::get_number(jb, "budget", ctx);
    if (budget < 0.0) throw ParseError(ctx + ".budget: negative budget");
    bs.emplace_back(valuation_from_json(detail::get_field(jb, "valuation", ctx),
                                        m, ctx + ".valuation"),
                    budget);
  }
  return Instance(m, std::move(bs));
}

inline Json budget_distribution_to_json(const BudgetDistribution& d) {
  Json j;
  j["type"] = d.kind == BudgetDistribution::Kind::Point ? "point" : "uniform";
  if (d.kind == BudgetDistribution::Kind::Point) {
    j["value"] = d.lo;
  } else {
    j["lo"] = d.lo;
    j["hi"] = d.hi;
  }
  return j;
}

inline BudgetDistribution budget_distribution_from_json(
    const Json& j, const std::string& context) {
  const Json& type = detail::get_field(j, "type", context);
  if (!type.is_string()) throw ParseError(context + ".type: expected a string");
  std::string t = type.get<std::string>();
  if (t == "point") {
    double v = detail::get_number(j, "value", context);
    if (v < 0.0) throw ParseError(context + ".value: negative budget");
    return BudgetDistribution::point(v);
  }
  if (t == "uniform") {
    double lo = detail::get_number(j, "lo", context);
    double hi = detail::get_number(j, "hi", context);
    if (lo < 0.0 || hi < lo)
      throw ParseError(context + ": bad uniform budget range");
    return BudgetDistribution::uniform(lo, hi);
  }
  throw ParseError(context + ".type: unknown budget distribution '" + t + "'");
}

inline Json distribution_to_json(const DistributionSpec& spec) {
  Json j;
  j["m"] = spec.m;
  Json bidders = Json::array();
  for (const auto& d : spec.bidders) {
    Json jd;
    switch (d.family) {
      case BidderDistribution::Family::Additive:
        jd["family"] = "additive";
        break;
      case BidderDistribution::Family::Xos:
        jd["family"] = "xos";
        jd["clause_count"] = d.clause_count;
        break;
      case BidderDistribution::Family::Coverage:
        jd["family"] = "coverage";
        jd["element_count"] = d.element_count;
        jd["cover_degree"] = d.cover_degree;
        break;
      case BidderDistribution::Family::Finite: {
        jd["family"] = "finite";
        Json options = Json::array();
        for (const auto& b : d.options) {
          Json jb;
          jb["budget"] = b.budget;
          jb["valuation"] = valuation_to_json(b.valuation);
          options.push_back(std::move(jb));
        }
        jd["options"] = std::move(options);
        break;
      }
    }
    if (d.family != BidderDistribution::Family::Finite) {
      jd["weight_lo"] = d.weight_lo;
      jd["weight_hi"] = d.weight_hi;
      jd["budget"] = budget_distribution_to_json(d.budget);
    }
    bidders.push_back(std::move(jd));
  }
  j["bidders"] = std::move(bidders);
  return j;
}

inline DistributionSpec distribution_from_json(const Json& j) {
  DistributionSpec spec;
  spec.m = detail::get_int(j, "m", "distribution");
  if (spec.m < 1 || spec.m > kMaxItems)
    throw ParseError("distribution.m: out of range");
  const Json& bidders = detail::get_field(j, "bidders", "distribution");
  if (!bidders.is_array() || bidders.empty())
    throw ParseError("distribution.bidders: expected a nonempty array");
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    std::string ctx = "distribution.bidders[" + std::to_string(i) + "]";
    const Json& jd = bidders.at(i);
    const Json& family = detail::get_field(jd, "family", ctx);
    if (!family.is_string())
      throw ParseError(ctx + ".family: expected a string");
    std::string f = family.get<std::string>();
    BidderDistribution d;
    if (f == "additive") {
      d.family = BidderDistribution::Family::Additive;
    } else if (f == "xos") {
      d.family = BidderDistribution::Family::Xos;
      d.clause_count = detail::get_int(jd, "clause_count", ctx);
      if (d.clause_count < 1) throw ParseError(ctx + ".clause_count: must be >= 1");
    } else if (f == "coverage") {
      d.family = BidderDistribution::Family::Coverage;
      d.element_count = detail::get_int(jd, "element_count", ctx);
      d.cover_degree = detail::get_int(jd, "cover_degree", ctx);
      if (d.element_count < 1 || d.element_count > 64)
        throw ParseError(ctx + ".element_count: out of range");
      if (d.cover_degree < 0) throw ParseError(ctx + ".cover_degree: negative");
    } else if (f == "finite") {
      d.family = BidderDistribution::Family::Finite;
      const Json& options = detail::get_field(jd, "options", ctx);
      if (!options.is_array() || options.empty())
        throw ParseError(ctx + ".options: expected a nonempty array");
      for (std::size_t k = 0; k < options.size(); ++k) {
        std::string octx = ctx + ".options[" + std::to_string(k) + "]";
        const Json& jb = options.at(k);
        double budget = detail::get_number(jb, "budget", octx);
        if (budget < 0.0) throw ParseError(octx + ".budget: negative budget");
        d.options.emplace_back(
            valuation_from_json(detail::get_field(jb, "valuation", octx),
                                spec.m, octx + ".valuation"),
            budget);
      }
    } else {
      throw ParseError(ctx + ".family: unknown family '" + f + "'");
    }
    if (d.family != BidderDistribution::Family::Finite) {
      d.weight_lo = detail::get_number(jd, "weight_lo", ctx);
      d.weight_hi = detail::get_number(jd, "weight_hi", ctx);
      if (d.weight_lo < 0.0 || d.weight_hi < d.weight_lo)
        throw ParseError(ctx + ": bad weight range");
      d.budget = budget_distribution_from_json(
          detail::get_field(jd, "budget", ctx), ctx + ".budget");
    }
    spec.bidders.push_back(std::move(d));
  }
  return spec;
}

namespace detail {

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace detail

inline void save_instance(const std::string& path, const Instance& inst) {
  detail::save_json_file(path, instance_to_json(inst));
}

inline Instance load_instance(const std::string& path) {
  return instance_from_json(detail::load_json_file(path));
}

inline void save_distribution(const std::string& path,
                              const DistributionSpec& spec) {
  detail::save_json_file(path, distribution_to_json(spec));
}

inline DistributionSpec load_distribution(const std::string& path) {
  return distribution_from_json(detail::load_json_file(path));
}

// Files are distinguished by the presence of a "family" key in bidders.
inline bool file_is_distribution(const std::string& path) {
  Json j = detail::load_json_file(path);
  if (!j.is_object() || !j.contains("bidders")) return false;
  const Json& bidders = j.at("bidders");
  return bidders.is_array() && !bidders.empty() &&
         bidders.front().is_object() && bidders.front().contains("family");
}

}  // namespace lwca
