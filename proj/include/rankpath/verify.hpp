#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rankpath/formulas.hpp"
#include "rankpath/io.hpp"
#include "rankpath/oracle.hpp"

namespace rankpath {

struct ParamRange {
  int lo = 0;
  int hi = 0;
};

using ParamGrid = std::map<std::string, ParamRange>;
using ParamPoint = std::map<std::string, int>;

struct CellOutcome {
  bool pass = false;
  std::string lhs;
  std::string rhs;
};

struct VerifyFailure {
  ParamPoint where;
  std::string lhs;
  std::string rhs;
};

struct VerifyReport {
  std::string identity;
  ParamGrid grid;
  std::vector<std::pair<ParamPoint, bool>> cells;
  long long skipped = 0;
  std::optional<VerifyFailure> first_failure;
  double seconds = 0.0;

  long long passed() const {
    long long k = 0;
    for (const auto& [pt, pass] : cells) k += pass ? 1 : 0;
    return k;
  }
  bool ok() const { return !first_failure; }
};

// A registered identity: the closed form on one side, the brute-force oracle
// on the other, checked cell by cell over an integer parameter grid. Cells
// where in_domain says no are skipped (the identity makes no claim there).
struct Identity {
  std::string name;
  std::vector<std::string> params;
  ParamGrid defaults;
  std::function<bool(const ParamPoint&)> in_domain;
  std::function<CellOutcome(const ParamPoint&)> check;
};

namespace detail {

inline QTPoly box_rank_oracle(int m, int n, int ell, TStat stat) {
  return gf(FamilySpec::partitions_in_box(m, n).rank_filtered(
                RankConstraint::at_least(1 - ell)),
            stat);
}

inline TruncatedSeries partition_rank_series(int D, const RankConstraint& rc,
                                             bool rect, int max_parts = -1) {
  TruncatedSeries out({"t", "q"}, D);
  for (int N = 0; N <= D; ++N)
    for_each_partition(
        FamilySpec::partitions_of_n(N).rank_filtered(rc),
        [&](const Partition& p) {
          if (max_parts >= 0 && p.num_parts() > max_parts) return;
          Durfee du = durfee(p);
          out.add_monomial({rect ? du.dr : du.d, N}, BigRat(1));
        });
  return out;
}

inline TruncatedSeries avoid_part_series(int D, int forbidden) {
  TruncatedSeries out({"q"}, D);
  for (int N = 0; N <= D; ++N)
    for_each_partition(
        FamilySpec::partitions_of_n(N).parts_filtered(
            [forbidden](int part) { return part == forbidden; }),
        [&](const Partition&) { out.add_monomial({N}, BigRat(1)); });
  return out;
}

inline TruncatedSeries finite_rank_series(int D, const std::set<int>& allowed) {
  TruncatedSeries out({"t", "q"}, D);
  for (int N = 0; N <= D; ++N)
    for_each_partition(
        FamilySpec::partitions_of_n(N).rank_filtered(
            RankConstraint::finite(allowed)),
        [&](const Partition& p) {
          out.add_monomial({durfee(p).d, N}, BigRat(1));
        });
  return out;
}

template <typename T>
CellOutcome compare(const T& lhs, const T& rhs) {
  return CellOutcome{lhs == rhs, render(lhs), render(rhs)};
}

}  // namespace detail

inline const std::vector<Identity>& identity_catalog() {
  static const std::vector<Identity> catalog = [] {
    std::vector<Identity> ids;
    auto add = [&](Identity id) { ids.push_back(std::move(id)); };

    add({"lopsided-box",
         {"m", "n", "ell"},
         {{"m", {0, 6}}, {"n", {0, 6}}, {"ell", {-6, 1}}},
         [](const ParamPoint& p) {
           return p.at("ell") >= -p.at("n") && p.at("ell") <= 1;
         },
         [](const ParamPoint& p) {
           return detail::compare(
               thm_lopsided(p.at("m"), p.at("n"), p.at("ell")),
               detail::box_rank_oracle(p.at("m"), p.at("n"), p.at("ell"),
                                       TStat::d));
         }});

    add({"central-dsq",
         {"m", "n", "ell"},
         {{"m", {0, 6}}, {"n", {0, 6}}, {"ell", {0, 3}}},
         [](const ParamPoint& p) { return p.at("n") + p.at("ell") >= p.at("m"); },
         [](const ParamPoint& p) {
           return detail::compare(
               thm_central_dsq(p.at("m"), p.at("n"), p.at("ell")),
               detail::box_rank_oracle(p.at("m"), p.at("n"), p.at("ell"),
                                       TStat::d));
         }});

    add({"central-drect",
         {"m", "n", "ell"},
         {{"m", {0, 6}}, {"n", {1, 6}}, {"ell", {0, 3}}},
         [](const ParamPoint& p) {
           return p.at("n") >= 1 && p.at("n") + p.at("ell") >= p.at("m");
         },
         [](const ParamPoint& p) {
           return detail::compare(
               thm_central_drect(p.at("m"), p.at("n"), p.at("ell")),
               detail::box_rank_oracle(p.at("m"), p.at("n"), p.at("ell"),
                                       TStat::dr));
         }});

    add({"box-t1",
         {"m", "n", "ell"},
         {{"m", {0, 6}}, {"n", {0, 6}}, {"ell", {0, 3}}},
         [](const ParamPoint& p) { return p.at("n") + p.at("ell") >= p.at("m"); },
         [](const ParamPoint& p) {
           QTPoly counts = detail::box_rank_oracle(p.at("m"), p.at("n"),
                                                   p.at("ell"), TStat::none);
           return detail::compare(
               thm_box_t1(p.at("m"), p.at("n"), p.at("ell")),
               counts.coeff_t(0));
         }});

    add({"fh",
         {"m", "n"},
         {{"m", {0, 5}}, {"n", {0, 5}}},
         [](const ParamPoint& p) { return p.at("m") >= p.at("n"); },
         [](const ParamPoint& p) {
           return detail::compare(
               fh_formula(p.at("m"), p.at("n")),
               gf(FamilySpec::paths_in_grid(p.at("m"), p.at("n")).above_line(0),
                  TStat::des));
         }});

    add({"keith-km",
         {"m", "n", "ell"},
         {{"m", {0, 5}}, {"n", {0, 5}}, {"ell", {0, 3}}},
         [](const ParamPoint& p) { return p.at("n") + p.at("ell") >= p.at("m"); },
         [](const ParamPoint& p) {
           // m counts down steps, n up steps, as in keith_km itself.
           return detail::compare(
               keith_km(p.at("m"), p.at("n"), p.at("ell")),
               gf(FamilySpec::paths_in_grid(p.at("n"), p.at("m"))
                      .above_line(-p.at("ell")),
                  TStat::hdes));
         }});

    add({"box-area",
         {"m", "n"},
         {{"m", {0, 8}}, {"n", {0, 8}}},
         nullptr,
         [](const ParamPoint& p) {
           QTPoly counts =
               gf(FamilySpec::partitions_in_box(p.at("m"), p.at("n")),
                  TStat::none);
           return detail::compare(qbinom(p.at("m") + p.at("n"), p.at("n")),
                                  counts.coeff_t(0));
         }});

    add({"box-dsq",
         {"m", "n"},
         {{"m", {0, 7}}, {"n", {0, 7}}},
         nullptr,
         [](const ParamPoint& p) {
           int m = p.at("m");
           int n = p.at("n");
           QTPoly closed;
           for (int i = 0; i <= std::min(m, n); ++i)
             closed.add_term(i, (qbinom(n, i) * qbinom(m, i)).shifted(i * i));
           return detail::compare(
               closed, gf(FamilySpec::partitions_in_box(m, n), TStat::d));
         }});

    add({"box-drect",
         {"m", "n"},
         {{"m", {0, 7}}, {"n", {1, 7}}},
         [](const ParamPoint& p) { return p.at("n") >= 1; },
         [](const ParamPoint& p) {
           int m = p.at("m");
           int n = p.at("n");
           QTPoly closed;
           for (int i = 0; i <= std::min(n - 1, m); ++i)
             closed.add_term(i, (qbinom(n - 1, i) * qbinom(m + 1, i + 1))
                                    .shifted(i * (i + 1)));
           return detail::compare(
               closed, gf(FamilySpec::partitions_in_box(m, n), TStat::dr));
         }});

    add({"rank-vs-avoided-part",
         {"ell", "N"},
         {{"ell", {0, 5}}, {"N", {0, 25}}},
         nullptr,
         [](const ParamPoint& p) {
           int ell = p.at("ell");
           int N = p.at("N");
           long long by_rank = 0;
           for_each_partition(
               FamilySpec::partitions_of_n(N).rank_filtered(
                   RankConstraint::at_least(1 - ell)),
               [&](const Partition&) { ++by_rank; });
           long long by_part = 0;
           for_each_partition(
               FamilySpec::partitions_of_n(N).parts_filtered(
                   [ell](int part) { return part == ell + 1; }),
               [&](const Partition&) { ++by_part; });
           return CellOutcome{by_rank == by_part, std::to_string(by_rank),
                              std::to_string(by_part)};
         }});

    add({"andrews-bressoud",
         {"r", "M", "N"},
         {{"r", {1, 3}}, {"M", {4, 8}}, {"N", {0, 20}}},
         [](const ParamPoint& p) { return 2 * p.at("r") < p.at("M"); },
         [](const ParamPoint& p) {
           auto [a, b] =
               andrews_bressoud_counts(p.at("r"), p.at("M"), p.at("N"));
           return CellOutcome{a == b, std::to_string(a), std::to_string(b)};
         }});

    add({"rr-box",
         {"m", "n"},
         {{"m", {0, 6}}, {"n", {0, 6}}},
         nullptr,
         [](const ParamPoint& p) {
           QTPoly closed = std::get<QTPoly>(
               finite_rank_gf("rr-box", {.m = p.at("m"), .n = p.at("n")}));
           QTPoly brute =
               gf(FamilySpec::partitions_in_box(p.at("m"), p.at("n"))
                      .rank_filtered(RankConstraint::finite({0, -1})),
                  TStat::d);
           return detail::compare(closed, brute);
         }});

    add({"rr2-box",
         {"m", "n"},
         {{"m", {2, 6}}, {"n", {2, 6}}},
         [](const ParamPoint& p) { return p.at("m") >= 2 && p.at("n") >= 2; },
         [](const ParamPoint& p) {
           QTPoly closed = std::get<QTPoly>(
               finite_rank_gf("rr2-box", {.m = p.at("m"), .n = p.at("n")}));
           QTPoly brute =
               gf(FamilySpec::partitions_in_box(p.at("m"), p.at("n"))
                      .rank_filtered(RankConstraint::finite({-1, -2})),
                  TStat::d);
           return detail::compare(closed, brute);
         }});

    add({"rr1-limit",
         {"D"},
         {{"D", {10, 10}}},
         nullptr,
         [](const ParamPoint& p) {
           auto closed = std::get<TruncatedSeries>(
               finite_rank_gf("rr1-limit", {.D = p.at("D")}));
           return detail::compare(
               closed, detail::finite_rank_series(p.at("D"), {0, -1}));
         }});

    add({"zero-minus-a-limit",
         {"a", "D"},
         {{"a", {1, 3}}, {"D", {10, 10}}},
         [](const ParamPoint& p) { return p.at("a") >= 1; },
         [](const ParamPoint& p) {
           auto closed = std::get<TruncatedSeries>(finite_rank_gf(
               "zero-minus-a-limit", {.a = p.at("a"), .D = p.at("D")}));
           return detail::compare(
               closed,
               detail::finite_rank_series(p.at("D"), {0, -p.at("a")}));
         }});

    add({"rank-parity",
         {"D"},
         {{"D", {6, 6}}},
         nullptr,
         [](const ParamPoint& p) {
           return detail::compare(rank_parity_closed_form(p.at("D")),
                                  rank_parity_oracle(p.at("D")));
         }});

    add({"lgv",
         {"m", "n", "ell"},
         {{"m", {0, 5}}, {"n", {0, 5}}, {"ell", {0, 2}}},
         nullptr,
         [](const ParamPoint& p) {
           int m = p.at("m");
           int n = p.at("n");
           int ell = p.at("ell");
           for (int i = 0; i <= std::min(m, n); ++i) {
             if (i > 0 && m + ell < n) continue;
             QPoly crossing = lgv_pairs_gf(m, n, ell, i, true);
             QPoly avoiding = lgv_pairs_gf(m, n, ell, i, false);
             QPoly all = qbinom(n, i) * qbinom(m, i);
             if (crossing + avoiding != all)
               return CellOutcome{false,
                                  "i=" + std::to_string(i) + ": " +
                                      render(crossing + avoiding),
                                  render(all)};
           }
           return CellOutcome{true, "all Durfee sides", "all Durfee sides"};
         }});

    auto add_limit = [&](std::string name, std::vector<std::string> params,
                         ParamGrid defaults,
                         std::function<CellOutcome(const ParamPoint&)> check) {
      add({std::move(name), std::move(params), std::move(defaults), nullptr,
           std::move(check)});
    };

    add_limit("no-part-one-limit", {"D"}, {{"D", {12, 12}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("no-part-one-limit", p.at("D")),
                    detail::avoid_part_series(p.at("D"), 1));
              });

    add_limit("no-part-two-limit", {"D"}, {{"D", {12, 12}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("no-part-two-limit", p.at("D")),
                    detail::avoid_part_series(p.at("D"), 2));
              });

    add_limit("ab-product", {"ell", "D"}, {{"ell", {0, 4}}, {"D", {12, 12}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("ab-product", p.at("D"), {.ell = p.at("ell")}),
                    detail::avoid_part_series(p.at("D"), p.at("ell") + 1));
              });

    add_limit("lopsided-limit", {"b", "D"}, {{"b", {0, 3}}, {"D", {12, 12}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("lopsided-limit", p.at("D"), {.b = p.at("b")}),
                    detail::partition_rank_series(
                        p.at("D"), RankConstraint::at_least(p.at("b")),
                        false));
              });

    add_limit("dsq-m-limit", {"m", "ell", "D"},
              {{"m", {0, 5}}, {"ell", {0, 4}}, {"D", {10, 10}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("dsq-m-limit", p.at("D"),
                                 {.m = p.at("m"), .ell = p.at("ell")}),
                    detail::partition_rank_series(
                        p.at("D"), RankConstraint::at_least(1 - p.at("ell")),
                        false, p.at("m")));
              });

    add_limit("drect-m-limit", {"m", "ell", "D"},
              {{"m", {0, 5}}, {"ell", {0, 4}}, {"D", {10, 10}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("drect-m-limit", p.at("D"),
                                 {.m = p.at("m"), .ell = p.at("ell")}),
                    detail::partition_rank_series(
                        p.at("D"), RankConstraint::at_least(1 - p.at("ell")),
                        true, p.at("m")));
              });

    add_limit("box-t1-m-limit", {"m", "ell", "D"},
              {{"m", {0, 5}}, {"ell", {0, 4}}, {"D", {10, 10}}},
              [](const ParamPoint& p) {
                TruncatedSeries counts =
                    detail::partition_rank_series(
                        p.at("D"), RankConstraint::at_least(1 - p.at("ell")),
                        false, p.at("m"))
                        .set_to_one("t");
                return detail::compare(
                    limit_series("box-t1-m-limit", p.at("D"),
                                 {.m = p.at("m"), .ell = p.at("ell")}),
                    counts);
              });

    add_limit("dsq-limit", {"ell", "D"}, {{"ell", {0, 4}}, {"D", {10, 10}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("dsq-limit", p.at("D"),
                                 {.ell = p.at("ell")}),
                    detail::partition_rank_series(
                        p.at("D"), RankConstraint::at_least(1 - p.at("ell")),
                        false));
              });

    add_limit("drect-limit", {"ell", "D"}, {{"ell", {0, 4}}, {"D", {10, 10}}},
              [](const ParamPoint& p) {
                return detail::compare(
                    limit_series("drect-limit", p.at("D"),
                                 {.ell = p.at("ell")}),
                    detail::partition_rank_series(
                        p.at("D"), RankConstraint::at_least(1 - p.at("ell")),
                        true));
              });

    return ids;
  }();
  return catalog;
}

inline const Identity* find_identity(const std::string& name) {
  for (const Identity& id : identity_catalog())
    if (id.name == name) return &id;
  return nullptr;
}

inline std::vector<std::string> identity_names() {
  std::vector<std::string> names;
  for (const Identity& id : identity_catalog()) names.push_back(id.name);
  return names;
}

// Runs one identity over its grid (defaults overridden per parameter) with
// the given number of worker threads. Results are deterministic: cells are
// indexed in lexicographic parameter order and reduced in that order, so the
// first failure reported does not depend on scheduling.
inline VerifyReport run_verify(const Identity& identity,
                               const ParamGrid& overrides, int jobs = 1) {
  const Identity* id = &identity;
  if (jobs < 1) throw std::invalid_argument("verify: jobs must be positive");

  ParamGrid grid = id->defaults;
  for (const auto& [key, range] : overrides) {
    if (!grid.count(key))
      throw std::invalid_argument("verify: identity '" + id->name +
                                  "' has no parameter '" + key + "'");
    if (range.lo > range.hi)
      throw std::invalid_argument("verify: empty range for '" + key + "'");
    grid[key] = range;
  }

  std::vector<ParamPoint> points;
  ParamPoint cur;
  auto expand = [&](auto&& self, std::size_t k) -> void {
    if (k == id->params.size()) {
      points.push_back(cur);
      return;
    }
    const std::string& key = id->params[k];
    ParamRange r = grid.at(key);
    for (int v = r.lo; v <= r.hi; ++v) {
      cur[key] = v;
      self(self, k + 1);
    }
  };
  expand(expand, 0);

  auto started = std::chrono::steady_clock::now();
  std::vector<std::optional<CellOutcome>> results(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < points.size();
         k = next.fetch_add(1)) {
      if (id->in_domain && !id->in_domain(points[k])) continue;
      try {
        results[k] = id->check(points[k]);
      } catch (const std::exception& e) {
        results[k] =
            CellOutcome{false, std::string("exception: ") + e.what(), ""};
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  VerifyReport report;
  report.identity = id->name;
  report.grid = grid;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!results[k]) {
      ++report.skipped;
      continue;
    }
    report.cells.emplace_back(points[k], results[k]->pass);
    if (!results[k]->pass && !report.first_failure)
      report.first_failure =
          VerifyFailure{points[k], results[k]->lhs, results[k]->rhs};
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

inline VerifyReport run_verify(const std::string& name,
                               const ParamGrid& overrides, int jobs = 1) {
  const Identity* id = find_identity(name);
  if (!id)
    throw std::invalid_argument("verify: unknown identity '" + name + "'");
  return run_verify(*id, overrides, jobs);
}

inline Json to_json(const VerifyReport& r) {
  Json grid = Json::object();
  for (const auto& [key, range] : r.grid)
    grid[key] = Json::array({range.lo, range.hi});
  Json cells = Json::array();
  for (const auto& [pt, pass] : r.cells)
    cells.push_back(Json{{"params", pt}, {"pass", pass}});
  Json out{{"identity", r.identity}, {"grid", std::move(grid)},
           {"checked", r.cells.size()}, {"passed", r.passed()},
           {"skipped", r.skipped},      {"seconds", r.seconds},
           {"ok", r.ok()},              {"cells", std::move(cells)}};
  if (r.first_failure)
    out["first_failure"] = Json{{"params", r.first_failure->where},
                                {"lhs", r.first_failure->lhs},
                                {"rhs", r.first_failure->rhs}};
  return out;
}

}  // namespace rankpath
