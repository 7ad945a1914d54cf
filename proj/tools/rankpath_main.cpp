#include <algorithm>
#include <array>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "rankpath/io.hpp"
#include "rankpath/oracle.hpp"
#include "rankpath/rank_raising.hpp"
#include "rankpath/verify.hpp"

namespace {

using namespace rankpath;

// Exit codes, fixed for CI consumption: 0 all pass, 1 a verification sweep
// found a counterexample, 2 usage or domain error.
constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

int parse_int(const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = text.size() + 1;
  }
  if (used != text.size())
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  return v;
}

// "lo..hi" or a single integer (a one-point range). Negative bounds are
// fine; the separator search starts after a possible leading minus sign.
ParamRange parse_range(const std::string& text) {
  std::size_t sep = text.find("..", 1);
  if (sep == std::string::npos) {
    int v = parse_int(text);
    return {v, v};
  }
  return {parse_int(text.substr(0, sep)), parse_int(text.substr(sep + 2))};
}

long long resolve_cap(const std::optional<long long>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RANKPATH_CAP")) {
    std::string text(env);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &used);
    } catch (const std::exception&) {
      used = text.size() + 1;
    }
    if (used != text.size())
      throw std::invalid_argument("RANKPATH_CAP is not an integer: '" + text +
                                  "'");
    return v;
  }
  return kEnumerationCap;
}

// ---------------------------------------------------------------- verify --

constexpr std::array<const char*, 9> kGridParams = {"m", "n", "ell", "N", "r",
                                                    "M", "D",   "a", "b"};

struct VerifyArgs {
  std::string name;
  bool list = false;
  int jobs = 1;
  std::string format = "text";
  std::array<std::string, kGridParams.size()> range_text;
};

int cmd_verify(const VerifyArgs& a, const CLI::App& sub) {
  if (a.list) {
    for (const std::string& name : identity_names()) std::cout << name << "\n";
    return kExitPass;
  }
  if (a.name.empty())
    throw std::invalid_argument(
        "verify: an identity name is required (--list prints the registry)");

  ParamGrid overrides;
  for (std::size_t i = 0; i < kGridParams.size(); ++i)
    if (sub.count(std::string("--") + kGridParams[i]) > 0)
      overrides[kGridParams[i]] = parse_range(a.range_text[i]);

  VerifyReport r = run_verify(a.name, overrides, a.jobs);
  if (a.format == "json") {
    std::cout << to_json(r).dump() << "\n";
    return r.ok() ? kExitPass : kExitCounterexample;
  }

  std::cout << "identity " << r.identity << " over";
  for (const auto& [key, range] : r.grid) {
    std::cout << ' ' << key << '=' << range.lo;
    if (range.hi != range.lo) std::cout << ".." << range.hi;
  }
  long long failed = static_cast<long long>(r.cells.size()) - r.passed();
  std::ostringstream secs;
  secs.setf(std::ios::fixed);
  secs.precision(3);
  secs << r.seconds;
  std::cout << ": " << r.cells.size() << " cells, " << r.passed()
            << " passed, " << failed << " failed, " << r.skipped
            << " skipped in " << secs.str() << "s\n";
  if (r.first_failure) {
    std::cout << "counterexample at";
    for (const auto& [key, value] : r.first_failure->where)
      std::cout << ' ' << key << '=' << value;
    std::cout << "\n  lhs: " << r.first_failure->lhs
              << "\n  rhs: " << r.first_failure->rhs << "\n";
  }
  std::cout << (r.ok() ? "PASS" : "FAIL") << "\n";
  return r.ok() ? kExitPass : kExitCounterexample;
}

// ------------------------------------------------------------------- map --

struct MapArgs {
  std::string name;
  std::string input;
  std::optional<int> ell;
  std::string format = "text";
};

using MapValue = std::variant<Partition, BoxedPartition, StepWord>;

struct ParsedInput {
  MapValue value;
  WordAlphabet alphabet = WordAlphabet::ud;
};

// JSON array = partition, JSON object = boxed partition, anything else a
// step word (optionally JSON-quoted; 1/2 and U/D alphabets both accepted,
// and the output echoes whichever the input used).
ParsedInput parse_map_input(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("map: --input is empty");
  if (text.front() == '[')
    return {partition_from_json(Json::parse(text)), WordAlphabet::ud};
  if (text.front() == '{')
    return {boxed_from_json(Json::parse(text)), WordAlphabet::ud};
  std::string raw = text;
  if (text.front() == '"') {
    Json j = Json::parse(text);
    if (!j.is_string())
      throw std::invalid_argument("map: quoted input must be a string");
    raw = j.get<std::string>();
  }
  WordAlphabet alphabet = raw.find_first_of("12") == std::string::npos
                              ? WordAlphabet::ud
                              : WordAlphabet::digits;
  return {parse_step_word(raw), alphabet};
}

struct MapResult {
  Json output;
  Json stats;
  std::string text;
};

MapResult apply_map(const std::string& name, const ParsedInput& in,
                    const std::optional<int>& ell) {
  static const std::map<std::string, StepWord (*)(const StepWord&)> word_maps =
      {{"phi", phi},
       {"phi-inv", phi_inv},
       {"gamma", gamma},
       {"gamma-inv", gamma_inv},
       {"flip-valleys", flip_valleys},
       {"block-bijection", block_bijection}};

  if (auto it = word_maps.find(name); it != word_maps.end()) {
    const StepWord* w = std::get_if<StepWord>(&in.value);
    if (!w)
      throw std::invalid_argument("map " + name +
                                  ": input must be a step word");
    StepWord image = it->second(*w);
    std::string shown = format_step_word(image, in.alphabet);
    return {Json(shown), stats_json(image), shown};
  }

  if (name == "conj" || name == "f" || name == "g") {
    auto apply = [&](const Partition& p) {
      return name == "conj" ? conjugate(p) : name == "f" ? f(p) : g(p);
    };
    if (const Partition* p = std::get_if<Partition>(&in.value)) {
      Partition image = apply(*p);
      return {to_json(image), stats_json(image), to_json(image).dump()};
    }
    if (const BoxedPartition* bp = std::get_if<BoxedPartition>(&in.value)) {
      // conj transposes the box; f moves one cell from rows to columns and
      // g moves it back, so their boxes shift accordingly.
      BoxedPartition image =
          name == "conj"
              ? BoxedPartition(conjugate(bp->partition), bp->n, bp->m)
          : name == "f"
              ? BoxedPartition(apply(bp->partition), bp->m - 1, bp->n + 1)
              : BoxedPartition(apply(bp->partition), bp->m + 1, bp->n - 1);
      return {to_json(image), stats_json(image.partition),
              to_json(image).dump()};
    }
    throw std::invalid_argument("map " + name + ": input must be a partition");
  }

  if (name == "theta" || name == "f-iter") {
    const BoxedPartition* bp = std::get_if<BoxedPartition>(&in.value);
    if (!bp)
      throw std::invalid_argument(
          "map " + name +
          ": input must be a boxed partition ({\"parts\":..,\"m\":..,\"n\":..})");
    if (!ell) throw std::invalid_argument("map " + name + ": needs --ell");
    BoxedPartition image =
        name == "theta" ? theta(*bp, *ell) : f_iter(*bp, *ell).first;
    return {to_json(image), stats_json(image.partition),
            to_json(image).dump()};
  }

  throw std::invalid_argument(
      "map: unknown map '" + name +
      "'; registered: block-bijection conj f f-iter flip-valleys g gamma "
      "gamma-inv phi phi-inv theta");
}

int cmd_map(const MapArgs& a) {
  MapResult r = apply_map(a.name, parse_map_input(a.input), a.ell);
  if (a.format == "json") {
    Json line{{"map", a.name}, {"output", r.output}, {"stats", r.stats}};
    std::cout << line.dump() << "\n";
  } else {
    std::cout << r.text << "\n";
    std::cout << "stats " << r.stats.dump() << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------- series --

struct SeriesArgs {
  std::string name;
  bool list = false;
  std::optional<int> D, m, n, a, b, ell, t_max;
  std::string format = "text";
};

const std::set<std::string>& limit_names() {
  static const std::set<std::string> names = {
      "no-part-one-limit", "no-part-two-limit", "ab-product",
      "lopsided-limit",    "box-t1-m-limit",    "dsq-m-limit",
      "drect-m-limit",     "dsq-limit",         "drect-limit"};
  return names;
}

const std::set<std::string>& finite_rank_names() {
  static const std::set<std::string> names = {"rr-box", "rr2-box", "rr1-limit",
                                              "zero-minus-a-limit"};
  return names;
}

int need(const std::optional<int>& v, const std::string& name,
         const char* flag) {
  if (!v)
    throw std::invalid_argument("series " + name + ": needs --" + flag);
  return *v;
}

QTPoly drop_high_t(const QTPoly& p, int bound) {
  QTPoly out;
  for (const auto& [e, c] : p.terms())
    if (e <= bound) out.add_term(e, c);
  return out;
}

TruncatedSeries drop_high_t(const TruncatedSeries& s, int bound) {
  const std::vector<std::string>& vars = s.variables();
  auto it = std::find(vars.begin(), vars.end(), "t");
  if (it == vars.end())
    throw std::invalid_argument("series: --t-max needs a t-graded result");
  std::size_t idx = static_cast<std::size_t>(it - vars.begin());
  TruncatedSeries out(vars, s.order());
  for (const auto& [e, c] : s.terms())
    if (e[idx] <= bound) out.add_monomial(e, c);
  return out;
}

int cmd_series(const SeriesArgs& a) {
  if (a.list) {
    std::cout << "catalan-qt\nrank-parity\n";
    for (const std::string& name : finite_rank_names())
      std::cout << name << "\n";
    for (const std::string& name : limit_names()) std::cout << name << "\n";
    return kExitPass;
  }
  if (a.name.empty())
    throw std::invalid_argument(
        "series: a formula name is required (--list prints the registry)");

  FiniteRankGF value;
  if (a.name == "catalan-qt") {
    value = catalan_qt(need(a.n, a.name, "n"));
  } else if (a.name == "rank-parity") {
    value = rank_parity_closed_form(need(a.D, a.name, "D"));
  } else if (finite_rank_names().count(a.name) > 0) {
    value = finite_rank_gf(a.name, {.m = a.m, .n = a.n, .a = a.a, .D = a.D});
  } else if (limit_names().count(a.name) > 0) {
    value = limit_series(a.name, need(a.D, a.name, "D"),
                         {.b = a.b, .m = a.m, .ell = a.ell});
  } else {
    throw std::invalid_argument("series: unknown name '" + a.name +
                                "' (--list prints the registry)");
  }

  if (a.t_max)
    value = std::visit(
        [&](const auto& x) { return FiniteRankGF(drop_high_t(x, *a.t_max)); },
        value);

  std::visit(
      [&](const auto& x) {
        if (a.format == "json")
          std::cout << to_json(x).dump() << "\n";
        else
          std::cout << render(x) << "\n";
      },
      value);
  return kExitPass;
}

// ------------------------------------------------------------- enumerate --

struct EnumerateArgs {
  std::optional<int> m, n, N;
  std::optional<int> min_rank, skip_part, min_height;
  std::optional<long long> cap;
  std::string format = "text";
};

int cmd_enumerate(const EnumerateArgs& a, const std::string& family) {
  long long cap = resolve_cap(a.cap);
  bool json = a.format == "json";

  if (family == "paths") {
    FamilySpec spec = FamilySpec::paths_in_grid(*a.m, *a.n);
    if (a.min_height) spec = spec.above_line(*a.min_height);
    for_each_path(
        spec,
        [&](const StepWord& w) {
          if (json)
            std::cout << Json(w).dump() << "\n";
          else
            std::cout << w << "\n";
        },
        cap);
    return kExitPass;
  }

  FamilySpec spec = family == "box"
                        ? FamilySpec::partitions_in_box(*a.m, *a.n)
                        : FamilySpec::partitions_of_n(*a.N);
  if (a.min_rank)
    spec = spec.rank_filtered(RankConstraint::at_least(*a.min_rank));
  if (a.skip_part)
    spec = spec.parts_filtered([v = *a.skip_part](int c) { return c == v; });
  for_each_partition(
      spec, [&](const Partition& p) { std::cout << to_json(p).dump() << "\n"; },
      cap);
  return kExitPass;
}

// ------------------------------------------------------------ trajectory --

struct TrajectoryArgs {
  std::string input;
  int ell = 0;
  std::string format = "text";
};

int cmd_trajectory(const TrajectoryArgs& a) {
  Json j = Json::parse(a.input);
  if (!j.is_object())
    throw std::invalid_argument(
        "trajectory: --input must be a boxed partition object");
  auto [image, states] = f_iter(boxed_from_json(j), a.ell);
  (void)image;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (a.format == "json") {
      Json line = to_json(states[k]);
      line["step"] = k;
      std::cout << line.dump() << "\n";
      continue;
    }
    const TrajectoryState& s = states[k];
    std::cout << "step " << k << ": " << to_json(s.partition).dump()
              << " area=" << s.area << " d=" << s.d << " dr=" << s.dr
              << " tau=";
    if (s.tau)
      std::cout << *s.tau;
    else
      std::cout << "-";
    std::cout << " index=";
    if (s.index)
      std::cout << *s.index;
    else
      std::cout << "-";
    std::cout << "\n";
  }
  return kExitPass;
}

void add_format_flag(CLI::App* sub, std::string& target) {
  sub->add_option("--format", target, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact generating functions, bijections, and brute-force verification "
      "for partitions with constrained successive ranks"};
  app.require_subcommand(1);

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Check a registered identity on a parameter grid");
  verify_cmd->add_option("identity", verify_args.name, "Identity name");
  verify_cmd->add_flag("--list", verify_args.list,
                       "Print the identity registry and exit");
  for (std::size_t i = 0; i < kGridParams.size(); ++i)
    verify_cmd->add_option(std::string("--") + kGridParams[i],
                           verify_args.range_text[i],
                           std::string("Range for ") + kGridParams[i] +
                               " as lo..hi or a single value");
  verify_cmd
      ->add_option("--jobs", verify_args.jobs, "Worker threads for the sweep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format_flag(verify_cmd, verify_args.format);

  MapArgs map_args;
  CLI::App* map_cmd = app.add_subcommand(
      "map",
      "Apply a bijection to a partition, boxed partition, or step word");
  map_cmd
      ->add_option("name", map_args.name,
                   "One of: block-bijection conj f f-iter flip-valleys g "
                   "gamma gamma-inv phi phi-inv theta")
      ->required();
  map_cmd
      ->add_option("--input", map_args.input,
                   "JSON array (partition), JSON object (boxed partition), "
                   "or step word over U/D or 1/2")
      ->required();
  map_cmd->add_option("--ell", map_args.ell,
                      "Iteration count for theta and f-iter");
  add_format_flag(map_cmd, map_args.format);

  SeriesArgs series_args;
  CLI::App* series_cmd = app.add_subcommand(
      "series", "Print a registered generating function or expansion");
  series_cmd->add_option("name", series_args.name, "Formula name");
  series_cmd->add_flag("--list", series_args.list,
                       "Print the formula registry and exit");
  series_cmd->add_option("--D", series_args.D, "Truncation order");
  series_cmd->add_option("--m", series_args.m, "Row bound");
  series_cmd->add_option("--n", series_args.n, "Column bound or semilength");
  series_cmd->add_option("--a", series_args.a, "Rank set parameter");
  series_cmd->add_option("--b", series_args.b, "Rank lower bound");
  series_cmd->add_option("--ell", series_args.ell, "Rank shift parameter");
  series_cmd->add_option("--t-max", series_args.t_max,
                         "Drop terms of t-degree above this bound");
  add_format_flag(series_cmd, series_args.format);

  EnumerateArgs enum_args;
  CLI::App* enum_cmd = app.add_subcommand(
      "enumerate", "Stream the members of a partition or path family");
  enum_cmd->require_subcommand(1);
  CLI::App* enum_box =
      enum_cmd->add_subcommand("box", "Partitions in an m x n box");
  enum_box->add_option("--m", enum_args.m, "Maximum number of parts")
      ->required();
  enum_box->add_option("--n", enum_args.n, "Maximum part size")->required();
  CLI::App* enum_size =
      enum_cmd->add_subcommand("size", "Partitions of a fixed size");
  enum_size->add_option("--N", enum_args.N, "Size being partitioned")
      ->required();
  CLI::App* enum_paths =
      enum_cmd->add_subcommand("paths", "Paths with m up and n down steps");
  enum_paths->add_option("--m", enum_args.m, "Up steps")->required();
  enum_paths->add_option("--n", enum_args.n, "Down steps")->required();
  for (CLI::App* sub : {enum_box, enum_size}) {
    sub->add_option("--min-rank", enum_args.min_rank,
                    "Keep partitions with every rank at least this");
    sub->add_option("--skip-part", enum_args.skip_part,
                    "Keep partitions avoiding this part size");
  }
  enum_paths->add_option("--min-height", enum_args.min_height,
                         "Keep paths that never go below this height");
  for (CLI::App* sub : {enum_box, enum_size, enum_paths}) {
    sub->add_option("--cap", enum_args.cap,
                    "Enumeration cap (overrides RANKPATH_CAP)");
    add_format_flag(sub, enum_args.format);
  }

  TrajectoryArgs traj_args;
  CLI::App* traj_cmd = app.add_subcommand(
      "trajectory", "Print every stop of the iterated rank-raising map");
  traj_cmd
      ->add_option("--input", traj_args.input,
                   "Boxed partition as a JSON object")
      ->required();
  traj_cmd->add_option("--ell", traj_args.ell, "Iteration count")->required();
  add_format_flag(traj_cmd, traj_args.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(verify_args, *verify_cmd);
    if (map_cmd->parsed()) return cmd_map(map_args);
    if (series_cmd->parsed()) return cmd_series(series_args);
    if (enum_cmd->parsed()) {
      for (CLI::App* sub : {enum_box, enum_size, enum_paths})
        if (sub->parsed()) return cmd_enumerate(enum_args, sub->get_name());
    }
    if (traj_cmd->parsed()) return cmd_trajectory(traj_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitPass;
}
