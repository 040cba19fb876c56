#pragma once

// Trees as binary64 summation schedules, with an exact oracle.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "sdtree/error.hpp"
#include "sdtree/mind.hpp"
#include "sdtree/tree.hpp"

namespace sdtree {

using BigInt = boost::multiprecision::cpp_int;

// numerator · 2^−1074, enough to hold any binary64 exactly.
struct ExactSum {
  static constexpr int kScale = 1074;
  BigInt numerator = 0;

  // "p/q" in lowest terms.
  std::string str() const {
    if (numerator == 0) return "0/1";
    BigInt p = numerator < 0 ? BigInt(-numerator) : numerator;
    int k = kScale;
    while (k > 0 && (p & 1) == 0) {
      p >>= 1;
      --k;
    }
    BigInt q = BigInt(1) << k;
    return (numerator < 0 ? "-" : "") + p.str() + "/" + q.str();
  }
  friend bool operator==(const ExactSum&, const ExactSum&) = default;
};

struct SummationPlan {
  Tree tree;                             // labelled leaves
  std::map<std::string, double> values;  // leaf label → value
};

struct ErrorReport {
  double evaluated = 0;
  ExactSum exact;
  double correctly_rounded = 0;
  std::optional<ExactSum> abs_error;  // absent when the evaluation overflowed
  std::uint64_t ulp_distance = 0;
  double kahan_result = 0;
  bool overflow = false;
};

namespace detail {

inline void check_finite(double v) {
  if (std::isnan(v)) throw InputError("NaN in summation input");
  if (std::isinf(v)) throw InputError("infinite value in summation input");
}

inline BigInt scaled(double v) {
  // v = m · 2^e with integer m, e ≥ −1074
  int e = 0;
  const double frac = std::frexp(std::fabs(v), &e);
  const auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  const int shift = e - 53 + ExactSum::kScale;
  BigInt r = m;
  if (shift >= 0) {
    r <<= shift;
  } else {
    r >>= -shift;  // the discarded bits are zero for subnormals
  }
  return v < 0 ? BigInt(-r) : r;
}

inline std::int64_t ordered_bits(double x) {
  const auto i = std::bit_cast<std::int64_t>(x);
  return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
}

}  // namespace detail

inline ExactSum exact_sum(std::span<const double> values) {
  ExactSum s;
  for (double v : values) {
    detail::check_finite(v);
    s.numerator += detail::scaled(v);
  }
  return s;
}

// Round to nearest, ties to even.
inline double round_to_double(const ExactSum& s) {
  if (s.numerator == 0) return 0.0;
  const bool negative = s.numerator < 0;
  const BigInt mag = negative ? BigInt(-s.numerator) : s.numerator;
  const auto bits = static_cast<int>(boost::multiprecision::msb(mag)) + 1;
  double r = 0;
  if (bits <= 53) {
    r = std::ldexp(static_cast<double>(mag), -ExactSum::kScale);
  } else {
    const int shift = bits - 53;
    BigInt q = mag >> shift;
    const BigInt rem = mag - (q << shift);
    const BigInt half = BigInt(1) << (shift - 1);
    if (rem > half || (rem == half && (q & 1) != 0)) q += 1;
    r = std::ldexp(static_cast<double>(q), shift - ExactSum::kScale);
  }
  return negative ? -r : r;
}

// Number of binary64 values between a and b (0 iff bit-identical, with +0 == −0).
inline std::uint64_t ulp_distance(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) throw InputError("ulp distance of NaN");
  const std::int64_t x = detail::ordered_bits(a), y = detail::ordered_bits(b);
  return x > y ? static_cast<std::uint64_t>(x) - static_cast<std::uint64_t>(y)
               : static_cast<std::uint64_t>(y) - static_cast<std::uint64_t>(x);
}

inline double kahan_sum(std::span<const double> values) {
  double sum = 0, c = 0;
  for (double v : values) {
    detail::check_finite(v);
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Values in the tree's left-to-right leaf order.
inline std::vector<double> leaf_values(const SummationPlan& plan) {
  if (plan.values.size() != plan.tree.leaf_count()) {
    throw InputError("plan has " + std::to_string(plan.values.size()) + " values for " +
                     std::to_string(plan.tree.leaf_count()) + " leaves");
  }
  std::vector<double> out;
  out.reserve(plan.tree.leaf_count());
  for (NodeId id : plan.tree.leaves_in_order()) {
    const auto label = plan.tree.label(id);
    if (label.empty()) throw InputError("plan leaf without a label");
    const auto it = plan.values.find(std::string(label));
    if (it == plan.values.end()) throw InputError("no value for leaf '" + std::string(label) + "'");
    detail::check_finite(it->second);
    out.push_back(it->second);
  }
  return out;
}

// Post-order binary64 reduction; each internal node adds its two children.
inline double evaluate(const SummationPlan& plan) {
  const auto values = leaf_values(plan);
  const auto nodes = plan.tree.nodes();
  std::vector<double> acc(nodes.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    acc[i] = nodes[i].is_leaf() ? values[next++] : acc[nodes[i].left] + acc[nodes[i].right];
  }
  return acc.back();
}

inline ErrorReport error_report(const SummationPlan& plan) {
  const auto values = leaf_values(plan);
  ErrorReport r;
  r.evaluated = evaluate(plan);
  r.exact = exact_sum(values);
  r.correctly_rounded = round_to_double(r.exact);
  r.kahan_result = kahan_sum(values);
  r.overflow = !std::isfinite(r.evaluated);
  r.ulp_distance = ulp_distance(r.evaluated, r.correctly_rounded);
  if (!r.overflow) {
    const BigInt diff = detail::scaled(r.evaluated) - r.exact.numerator;
    r.abs_error = ExactSum{diff < 0 ? BigInt(-diff) : diff};
  }
  return r;
}

// Labels leaves "v<i>" where i is the value's input position.
inline SummationPlan plan_from_order(const Tree& shape, std::span<const double> values,
                                     std::span<const std::size_t> input_index = {}) {
  if (values.size() != shape.leaf_count()) throw InputError("value count does not match leaf count");
  SummationPlan p;
  std::vector<std::string> labels;
  labels.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    detail::check_finite(values[i]);
    const std::size_t idx = input_index.empty() ? i : input_index[i];
    labels.push_back("v" + std::to_string(idx));
    p.values.emplace(labels.back(), values[i]);
  }
  p.tree = shape.relabeled(labels);
  return p;
}

// Descending ladder MinD tree; smallest magnitudes fill the largest perfect
// subtree first, so the largest values meet only in the final additions.
inline SummationPlan heuristic_mind_plan(std::span<const double> values) {
  if (values.empty()) throw InputError("cannot plan an empty sum");
  for (double v : values) detail::check_finite(v);
  const std::uint64_t n = values.size();
  const Tree shape = mind_descending(n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(values[a]) < std::fabs(values[b]); });

  // Perfect blocks, left to right: 2^ρ₁, 2^ρ₂, …
  const auto exps = binary_decomposition(n).exponents;
  std::vector<std::uint64_t> start;
  std::uint64_t pos = 0;
  for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
    start.push_back(pos);
    pos += std::uint64_t{1} << *it;
  }
  std::vector<double> placed(n);
  std::vector<std::size_t> index(n);
  std::size_t next = 0;
  for (std::size_t b = start.size(); b-- > 0;) {
    const std::uint64_t size = std::uint64_t{1} << exps[exps.size() - 1 - b];
    for (std::uint64_t j = 0; j < size; ++j) {
      index[start[b] + j] = order[next];
      placed[start[b] + j] = values[order[next]];
      ++next;
    }
  }
  return plan_from_order(shape, placed, index);
}

inline std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

inline std::string decimal_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One value per line, decimal or hex-float; blank lines and '#' comments skipped.
inline std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r,");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r,");
    const std::string token = line.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      throw InputError("line " + std::to_string(line_no) + ": cannot parse '" + token + "' as a number");
    }
    detail::check_finite(v);
    out.push_back(v);
  }
  return out;
}

inline nlohmann::json double_json(double v) { return {{"hex", hex_double(v)}, {"decimal", decimal_double(v)}}; }

inline nlohmann::json to_json(const ErrorReport& r) {
  return {{"evaluated", double_json(r.evaluated)},
          {"exact", r.exact.str()},
          {"correctly_rounded", double_json(r.correctly_rounded)},
          {"abs_error", r.abs_error ? nlohmann::json(r.abs_error->str()) : nlohmann::json(nullptr)},
          {"ulp_distance", r.ulp_distance},
          {"kahan", double_json(r.kahan_result)},
          {"overflow", r.overflow}};
}

}  // namespace sdtree
