#pragma once

// Command-line front end. Exit codes: 0 ok, 1 domain error, 2 usage error,
// 3 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdtree/sdtree.hpp"

namespace sdtree::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kUsage = 2, kVerifyFailed = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Options {
  std::string what;
  std::uint64_t n = 0;
  bool n_given = false;
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 0;
  std::int64_t k = -1;
  std::int64_t s = -1;
  std::int64_t c = -1;
  std::string base = "ladder";
  std::string order = "desc";
  std::string labels = "letters";
  std::string format;
  std::string view = "s";
  std::string method;
  std::string equivalence = "sd";
  std::string values;
  std::string tree;
  std::string shape = "heuristic";
  bool mind_only = false;
  int threads = 1;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

inline std::string format_or(const Options& o, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("--format " + f + " is not supported here (use one of: " + list + ")");
}

inline std::uint64_t need_n(const Options& o) {
  require(o.n_given, "--n is required");
  return o.n;
}

inline std::string read_text(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Tree shape_by_name(const std::string& name, std::uint64_t n) {
  if (name == "ladder") return make_ladder(n);
  if (name == "dac") return make_divide_and_conquer(n);
  if (name == "cfb") return make_complete_full_binary(n);
  if (name == "mind") return mind_descending(n);
  if (name == "perfect") {
    if (!is_pow2(n)) throw DomainError("a perfect tree needs a power-of-two leaf count");
    return make_perfect(floor_log2(n));
  }
  throw UsageError("unknown shape '" + name + "'");
}

inline void emit_tree(std::ostream& out, const Tree& t, const std::string& format) {
  if (format == "newick") {
    out << to_newick(t) << '\n';
  } else if (format == "dot") {
    out << to_dot(t);
  } else if (format == "json") {
    out << to_json(t) << '\n';
  } else {
    const auto lab = sd_label(t);
    out << "leaves " << t.leaf_count() << '\n'
        << "s_nodes " << lab.s_count << '\n'
        << "d_nodes " << lab.d_count << '\n'
        << "colless " << colless_index(t) << '\n'
        << "mind " << (is_mind(t) ? "yes" : "no") << '\n'
        << "newick " << to_newick(t) << '\n';
  }
}

inline int cmd_construct(const Options& o, std::ostream& out) {
  const auto format = format_or(o, "newick", {"newick", "dot", "json", "text"});
  Tree t;
  if (o.what == "perfect") {
    if (o.k >= 0) {
      t = make_perfect(static_cast<int>(o.k));
    } else {
      t = shape_by_name("perfect", need_n(o));
    }
  } else if (o.what == "mind") {
    const std::uint64_t n = need_n(o);
    auto d = binary_decomposition(n);
    Tree base;
    if (o.base == "ladder" || o.base == "dac" || o.base == "cfb") {
      base = shape_by_name(o.base, d.exponents.size());
    } else {
      base = parse_newick(o.base);
    }
    require(o.order == "desc" || o.order == "asc", "--order must be desc or asc");
    // desc: the last leaf (the ladder's top rung) gets the largest block.
    std::vector<int> assignment = d.exponents;
    if (o.order == "desc") std::reverse(assignment.begin(), assignment.end());
    t = build_mind({d, base, assignment});
  } else {
    t = shape_by_name(o.what, need_n(o));
  }
  if (o.labels == "letters") t = with_letter_labels(t);
  emit_tree(out, t, format);
  return kOk;
}

inline nlohmann::json big_json(const BigCount& v) {
  if (v <= BigCount(UINT64_MAX)) return static_cast<std::uint64_t>(v);
  return v.str();
}

inline int cmd_count(const Options& o, std::ostream& out) {
  if (o.what == "theta") {
    const auto format = format_or(o, "csv", {"csv", "json", "text"});
    require(o.view == "s" || o.view == "d", "--view must be s or d");
    if (o.n_given && o.s >= 0) {
      out << theta(o.n, static_cast<std::uint64_t>(o.s)) << '\n';
      return kOk;
    }
    const std::uint64_t n_max = o.n_max ? o.n_max : (o.n ? o.n : 16);
    const auto table = theta_table(n_max);
    const auto view = o.view == "s" ? TableView::s : TableView::d;
    if (format == "csv") {
      out << theta_csv(table, view);
    } else if (format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (std::uint64_t n = 2; n <= n_max; ++n) {
        nlohmann::json counts = nlohmann::json::array();
        for (std::uint64_t c = 0; c + 1 < n; ++c) {
          const std::uint64_t s = view == TableView::s ? c + 1 : n - 1 - c;
          counts.push_back(big_json(table.at(n, s)));
        }
        rows.push_back({{"n", n}, {"counts", counts}, {"alpha", big_json(table.alpha[n])}});
      }
      out << nlohmann::json{{"view", o.view}, {"first", view == TableView::s ? 1 : 0}, {"rows", rows}}.dump()
          << '\n';
    } else {
      for (std::uint64_t n = 2; n <= n_max; ++n) {
        out << "n=" << n << ':';
        for (std::uint64_t c = 0; c + 1 < n; ++c) {
          const std::uint64_t s = view == TableView::s ? c + 1 : n - 1 - c;
          out << ' ' << table.at(n, s);
        }
        out << " | alpha=" << table.alpha[n] << '\n';
      }
    }
    return kOk;
  }
  if (o.what == "alpha") {
    if (o.n_max > 0) {
      const auto a = alpha_table(o.n_max);
      out << "n,alpha\n";
      for (std::uint64_t n = 1; n <= o.n_max; ++n) out << n << ',' << a[n] << '\n';
    } else {
      out << alpha(need_n(o)) << '\n';
    }
    return kOk;
  }
  if (o.what == "products") {
    const std::uint64_t n = need_n(o);
    out << (o.s >= 0 ? products_for_form(n, static_cast<std::uint64_t>(o.s)) : total_products(n)) << '\n';
    return kOk;
  }
  if (o.what == "dac-products") {
    const std::string m = o.method.empty() ? "closed" : o.method;
    require(m == "closed" || m == "david", "--method must be closed or david");
    out << dac_products(need_n(o), m == "closed" ? DacProductMethod::closed : DacProductMethod::david) << '\n';
    return kOk;
  }
  // bounds
  const auto format = format_or(o, "text", {"text", "json"});
  const auto b = s_bounds(need_n(o));
  if (format == "json") {
    out << nlohmann::json{{"n", o.n}, {"s_min", b.s_min}, {"s_max", b.s_max}, {"d_min", o.n - 1 - b.s_max},
                          {"pow2_in_factorial", b.pow2_in_factorial}}
               .dump()
        << '\n';
  } else {
    out << "s_min " << b.s_min << "\ns_max " << b.s_max << "\nd_min " << o.n - 1 - b.s_max
        << "\npow2_in_factorial " << b.pow2_in_factorial << '\n';
  }
  return kOk;
}

inline SigmaMethod sigma_method(const std::string& m) {
  if (m.empty() || m == "recursive") return SigmaMethod::recursive;
  if (m == "levelwise") return SigmaMethod::levelwise;
  if (m == "bitwise" || m == "explicit") return SigmaMethod::bitwise;
  throw UsageError("unknown sigma method '" + m + "'");
}

inline DeltaMethod delta_method(const std::string& m) {
  if (m.empty() || m == "recursive") return DeltaMethod::recursive;
  if (m == "levelwise") return DeltaMethod::levelwise;
  if (m == "explicit") return DeltaMethod::explicit_sum;
  if (m == "recurrence") return DeltaMethod::recurrence;
  if (m == "midpoint") return DeltaMethod::midpoint;
  if (m == "digit-weight") return DeltaMethod::digit_weight;
  throw UsageError("unknown delta method '" + m + "'");
}

inline int cmd_formulas(const Options& o, std::ostream& out) {
  if (o.what == "normalized") {
    const std::uint64_t n = need_n(o);
    const std::uint64_t c = o.c >= 0 ? static_cast<std::uint64_t>(o.c) : c_asc(n);
    out << to_string(normalized_colless(c, n)) << '\n';
    return kOk;
  }
  if (o.what == "bounds") {
    const auto b = mind_bounds(need_n(o));
    out << nlohmann::json{{"n", b.n},
                          {"delta", b.delta},
                          {"c_desc", b.c_desc},
                          {"c_asc", b.c_asc},
                          {"c_max", b.c_max},
                          {"normalized_c_asc", to_string(b.normalized_asc)},
                          {"upper", to_string(b.normalized_upper)},
                          {"holds", b.holds()}}
               .dump()
        << '\n';
    return b.holds() ? kOk : kVerifyFailed;
  }
  auto value = [&](std::uint64_t n) -> std::uint64_t {
    if (o.what == "sigma") return sigma(n, sigma_method(o.method));
    if (o.what == "delta") return delta(n, delta_method(o.method));
    if (o.what == "cdesc") return c_desc(n);
    if (o.what == "cfb") return delta_cfb(n);
    const std::string m = o.method.empty() ? "recurrence" : o.method;
    require(m == "recurrence" || m == "closed", "--method must be recurrence or closed");
    return c_asc(n, m == "closed" ? CascMethod::closed : CascMethod::recurrence);
  };
  if (o.n_max > 0) {
    out << "n," << o.what << '\n';
    for (std::uint64_t n = std::max<std::uint64_t>(o.n_min, 1); n <= o.n_max; ++n) out << n << ',' << value(n) << '\n';
  } else {
    out << value(need_n(o)) << '\n';
  }
  return kOk;
}

inline int cmd_takagi(const Options& o, std::ostream& out) {
  require(o.k >= 0, "--k is required");
  const std::string m = o.method.empty() ? "via-delta" : o.method;
  TakagiMethod method = TakagiMethod::via_delta;
  if (m == "series") {
    method = TakagiMethod::series;
  } else if (m == "weighted") {
    method = TakagiMethod::weighted;
  } else {
    require(m == "via-delta", "--method must be via-delta, series or weighted");
  }
  const int k = static_cast<int>(o.k);
  if (k > 20) throw SizeError("takagi output limited to k <= 20");
  out << "r,x,tau\n";
  for (std::uint64_t r = 0; r <= (std::uint64_t{1} << k); ++r) {
    out << r << ',' << DyadicRational{r, k}.str() << ',' << takagi_dyadic(r, k, method).str() << '\n';
  }
  return kOk;
}

inline int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto format = format_or(o, "newick", {"newick", "csv", "json"});
  const std::uint64_t n = need_n(o);
  std::vector<Tree> shapes;
  if (o.mind_only) {
    if (weight(n) > 7) throw SizeError("MinD enumeration from the command line is limited to omega(n) <= 7");
    shapes = enumerate_mind(n);
  } else {
    require(o.equivalence == "sd" || o.equivalence == "iso", "--equivalence must be sd or iso");
    shapes = enumerate_shapes(n, o.equivalence == "sd" ? Equivalence::sd_form : Equivalence::isomorphism).shapes;
  }
  if (format == "csv") out << "index,s,d,colless,newick\n";
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& t = shapes[i];
    if (format == "newick") {
      out << to_newick(t) << '\n';
      continue;
    }
    const auto lab = sd_label(t);
    const auto c = colless_index(t);
    if (format == "csv") {
      out << i << ',' << lab.s_count << ',' << lab.d_count << ',' << c << ',' << to_newick(t) << '\n';
    } else {
      arr.push_back({{"index", i}, {"s", lab.s_count}, {"d", lab.d_count}, {"colless", c}, {"newick", to_newick(t)}});
    }
  }
  if (format == "json") out << nlohmann::json{{"n", n}, {"count", shapes.size()}, {"shapes", arr}}.dump() << '\n';
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<VerifyReport> reports;
  if (o.what == "all") {
    reports = verify_all(o.n_max ? o.n_max : need_n(o));
  } else {
    std::uint64_t lo = o.n, hi = o.n;
    if (o.n_max) {
      lo = std::max<std::uint64_t>(o.n_min, 1);
      hi = o.n_max;
    }
    require(hi > 0, "--n or --n-max is required");
    const ShapeLevels levels(hi, Equivalence::sd_form);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (o.what == "theta") reports.push_back(verify_theta(levels, n));
      if (o.what == "mind") reports.push_back(verify_mind(levels, n));
      if (o.what == "colless") reports.push_back(verify_colless_extremes(levels, n));
      if (o.what == "affix") reports.push_back(verify_affix(n));
    }
  }
  bool pass = true;
  for (const auto& r : reports) {
    out << r.to_json().dump() << '\n';
    pass = pass && r.pass;
  }
  return pass ? kOk : kVerifyFailed;
}

inline SummationPlan plan_for(const Options& o, const std::vector<double>& values, std::istream& in) {
  if (!o.tree.empty()) {
    std::string text = o.tree;
    if (text.find(';') == std::string::npos) text = read_text(o.tree, in);
    Tree t = parse_newick(text);
    if (t.leaf_count() != values.size()) throw InputError("tree leaf count does not match the number of values");
    bool labelled = true;
    for (NodeId id : t.leaves_in_order()) labelled = labelled && !t.label(id).empty();
    if (!labelled) return plan_from_order(t, values);
    SummationPlan p;
    p.tree = t;
    for (std::size_t i = 0; i < values.size(); ++i) p.values["v" + std::to_string(i)] = values[i];
    return p;
  }
  if (o.shape == "heuristic") return heuristic_mind_plan(values);
  return plan_from_order(shape_by_name(o.shape, values.size()), values);
}

inline int cmd_sum(const Options& o, std::istream& in, std::ostream& out) {
  require(!o.values.empty(), "--values is required (a file, or - for standard input)");
  const auto values = parse_values(read_text(o.values, in));
  if (values.empty()) throw InputError("no values given");
  const auto plan = plan_for(o, values, in);
  if (o.what == "plan") {
    emit_tree(out, plan.tree, format_or(o, "newick", {"newick", "dot", "json", "text"}));
    return kOk;
  }
  if (o.what == "eval") {
    const double v = evaluate(plan);
    out << hex_double(v) << ' ' << decimal_double(v) << '\n';
    return kOk;
  }
  const auto format = format_or(o, "json", {"json", "text"});
  const auto r = error_report(plan);
  if (format == "json") {
    out << to_json(r).dump() << '\n';
  } else {
    out << "evaluated " << hex_double(r.evaluated) << ' ' << decimal_double(r.evaluated) << '\n'
        << "correctly_rounded " << hex_double(r.correctly_rounded) << ' ' << decimal_double(r.correctly_rounded)
        << '\n'
        << "kahan " << hex_double(r.kahan_result) << ' ' << decimal_double(r.kahan_result) << '\n'
        << "exact " << r.exact.str() << '\n'
        << "abs_error " << (r.abs_error ? r.abs_error->str() : "overflow") << '\n'
        << "ulp_distance " << r.ulp_distance << '\n';
  }
  return kOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  require(o.n_max > 0, "--n-max is required");
  format_or(o, "csv", {"csv"});
  out << "n,sigma,delta,delta_cfb,c_desc,c_asc,c_max,normalized_c_asc\n";
  for (std::uint64_t n = std::max<std::uint64_t>(o.n_min, 1); n <= o.n_max; ++n) {
    const auto ca = c_asc(n);
    out << n << ',' << sigma(n) << ',' << delta(n) << ',' << delta_cfb(n) << ',' << c_desc(n) << ',' << ca << ','
        << c_max(n) << ',' << (n >= 4 ? to_string(normalized_colless(ca, n)) : "") << '\n';
  }
  return kOk;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Balanced reduction trees: construction, counting, verification and summation plans", "sdtree"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  auto fmt = [&](CLI::App* sc) {
    sc->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "newick", "dot", "text"}));
  };
  auto mark_n = [&](const std::string&) { o.n_given = true; };
  auto what = [&](CLI::App* sc, std::vector<std::string> choices) {
    sc->add_option("what", o.what)->required()->check(CLI::IsMember(choices));
  };

  auto* construct = app.add_subcommand("construct", "Build a tree");
  what(construct, {"ladder", "dac", "cfb", "perfect", "mind"});
  construct->add_option("--n", o.n, "Leaf count")->each(mark_n);
  construct->add_option("--k", o.k, "Height of a perfect tree");
  construct->add_option("--base", o.base, "MinD base: ladder, dac, cfb or a Newick shape on omega(n) leaves");
  construct->add_option("--order", o.order, "MinD block order from the last leaf: desc or asc");
  construct->add_option("--labels", o.labels, "Leaf labels")->check(CLI::IsMember({"letters", "none"}));
  fmt(construct);

  auto* count = app.add_subcommand("count", "Exact counts of forms and products");
  what(count, {"alpha", "theta", "products", "dac-products", "bounds"});
  count->add_option("--n", o.n, "Leaf count")->each(mark_n);
  count->add_option("--n-max", o.n_max, "Largest n in a table");
  count->add_option("--s", o.s, "S-node count");
  count->add_option("--view", o.view, "Table view: s or d");
  count->add_option("--method", o.method, "closed or david");
  fmt(count);

  auto* formulas = app.add_subcommand("formulas", "Scalar formulas");
  what(formulas, {"sigma", "delta", "cdesc", "casc", "normalized", "cfb", "bounds"});
  formulas->add_option("--n", o.n, "Leaf count")->each(mark_n);
  formulas->add_option("--n-min", o.n_min, "First n of a range");
  formulas->add_option("--n-max", o.n_max, "Last n of a range");
  formulas->add_option("--c", o.c, "Colless value to normalize (default c_asc(n))");
  formulas->add_option("--method", o.method, "Evaluation method");
  fmt(formulas);

  auto* takagi = app.add_subcommand("takagi", "Takagi function on r/2^k, r = 0..2^k");
  takagi->add_option("--k", o.k, "Dyadic level")->required();
  takagi->add_option("--method", o.method, "via-delta, series or weighted");
  fmt(takagi);

  auto* enumerate = app.add_subcommand("enumerate", "List all shapes on n leaves");
  enumerate->add_option("--n", o.n, "Leaf count")->each(mark_n)->required();
  enumerate->add_flag("--mind", o.mind_only, "Only MinD trees");
  enumerate->add_option("--equivalence", o.equivalence, "sd (ordered equal halves) or iso");
  fmt(enumerate);

  auto* verify = app.add_subcommand("verify", "Brute-force checks against enumeration");
  what(verify, {"theta", "mind", "colless", "affix", "all"});
  verify->add_option("--n", o.n, "Leaf count")->each(mark_n);
  verify->add_option("--n-min", o.n_min, "First n of a range");
  verify->add_option("--n-max", o.n_max, "Last n of a range");
  fmt(verify);

  auto* sum = app.add_subcommand("sum", "Trees as summation schedules");
  what(sum, {"eval", "plan", "report"});
  sum->add_option("--values", o.values, "Value file, one per line (- for stdin)");
  sum->add_option("--tree", o.tree, "Newick tree or file; labels v<i> refer to value i");
  sum->add_option("--shape", o.shape, "heuristic, ladder, dac, cfb, mind or perfect");
  fmt(sum);

  auto* sweep = app.add_subcommand("sweep", "Per-n formula table");
  sweep->add_option("--n-min", o.n_min, "First n");
  sweep->add_option("--n-max", o.n_max, "Last n")->required();
  fmt(sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*construct) return detail::cmd_construct(o, out);
    if (*count) return detail::cmd_count(o, out);
    if (*formulas) return detail::cmd_formulas(o, out);
    if (*takagi) return detail::cmd_takagi(o, out);
    if (*enumerate) return detail::cmd_enumerate(o, out);
    if (*verify) return detail::cmd_verify(o, out);
    if (*sum) return detail::cmd_sum(o, in, out);
    if (*sweep) return detail::cmd_sweep(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, in, out, err);
}

}  // namespace sdtree::cli
