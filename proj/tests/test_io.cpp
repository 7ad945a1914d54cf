#include <stdexcept>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "rankpath/io.hpp"
#include "rankpath/rank_raising.hpp"
#include "rankpath/verify.hpp"

using namespace rankpath;

TEST_CASE("partition json round trips", "[io]") {
  Partition p({4, 3, 3});
  Json j = to_json(p);
  REQUIRE(j.dump() == "[4,3,3]");
  REQUIRE(partition_from_json(j) == p);
  REQUIRE(partition_from_json(Json::parse("[]")) == Partition());

  REQUIRE_THROWS_AS(partition_from_json(Json::parse("{}")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(partition_from_json(Json::parse("[2.5]")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(partition_from_json(Json::parse("[1,2]")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(partition_from_json(Json::parse("[0]")),
                    std::invalid_argument);
}

TEST_CASE("boxed partition json round trips", "[io]") {
  BoxedPartition bp(Partition({4, 4, 3, 3, 1, 1}), 6, 4);
  Json j = to_json(bp);
  REQUIRE(j.dump() == R"({"m":6,"n":4,"parts":[4,4,3,3,1,1]})");
  BoxedPartition back = boxed_from_json(j);
  REQUIRE(back.partition == bp.partition);
  REQUIRE(back.m == bp.m);
  REQUIRE(back.n == bp.n);

  REQUIRE_THROWS_AS(boxed_from_json(Json::parse(R"({"parts":[1]})")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(boxed_from_json(Json::parse("[1]")),
                    std::invalid_argument);
}

TEST_CASE("polynomial and series json", "[io]") {
  QTPoly p;
  p.add_term(0, QPoly::one());
  p.add_term(1, QPoly::monomial(2));
  p.add_term(2, QPoly::monomial(5, 2));
  REQUIRE(render(p) == "1 + t*q^2 + 2*t^2*q^5");
  REQUIRE(to_json(p).dump() ==
          R"({"t^0":{"q^0":"1"},"t^1":{"q^2":"1"},"t^2":{"q^5":"2"}})");

  QPoly q = QPoly({3, 0, -1});
  REQUIRE(to_json(q).dump() == R"({"q^0":"3","q^2":"-1"})");

  TruncatedSeries s({"z"}, 3);
  s.add_monomial({1}, BigRat(3, 8));
  Json js = to_json(s);
  REQUIRE(js["truncation"] == 3);
  REQUIRE(js["vars"] == Json::array({"z"}));
  REQUIRE(js["terms"][0]["coeff"] == "3/8");
  REQUIRE(js["terms"][0]["exps"] == Json::array({1}));
}

TEST_CASE("trajectory json", "[io]") {
  BoxedPartition bp(Partition({4, 4, 3, 3, 1, 1}), 6, 4);
  auto [image, traj] = f_iter(bp, 2);
  REQUIRE(traj.size() == 3);

  Json first = to_json(traj.front());
  REQUIRE(first["parts"] == Json::array({4, 4, 3, 3, 1, 1}));
  REQUIRE(first["area"] == 16);
  REQUIRE(first["tau"].is_number_integer());
  REQUIRE(first["d"] == 3);

  TrajectoryState final_state;
  final_state.partition = Partition();
  Json j = to_json(final_state);
  REQUIRE(j["tau"].is_null());
  REQUIRE(j["index"].is_null());
}

TEST_CASE("statistics annotations", "[io]") {
  Partition p({4, 4, 3, 3, 1, 1});
  Json ps = stats_json(p);
  REQUIRE(ps["area"] == p.area());
  REQUIRE(ps["d"] == durfee(p).d);
  REQUIRE(ps["dr"] == durfee(p).dr);
  REQUIRE(ps["ranks"] == Json(ranks(p)));

  StepWord w = parse_step_word("UUDDUD");
  PathProfile pr = profile(w);
  Json ws = stats_json(w);
  REQUIRE(ws["ups"] == 3);
  REQUIRE(ws["downs"] == 3);
  REQUIRE(ws["des"] == pr.des);
  REQUIRE(ws["maj"] == pr.maj);
  REQUIRE(ws["hdes"] == pr.hdes);
  REQUIRE(ws["hmaj"] == pr.hmaj);
  REQUIRE(ws["min_height"] == pr.min_height);
}

TEST_CASE("identity catalog is complete", "[io]") {
  const std::vector<std::string> expected = {
      "lopsided-box",    "central-dsq",       "central-drect",
      "box-t1",          "fh",                "keith-km",
      "box-area",        "box-dsq",           "box-drect",
      "rank-vs-avoided-part", "andrews-bressoud", "rr-box",
      "rr2-box",         "rr1-limit",         "zero-minus-a-limit",
      "rank-parity",     "lgv",               "no-part-one-limit",
      "no-part-two-limit", "ab-product",      "lopsided-limit",
      "dsq-m-limit",     "drect-m-limit",     "box-t1-m-limit",
      "dsq-limit",       "drect-limit"};
  REQUIRE(identity_names() == expected);
  for (const std::string& name : expected)
    REQUIRE(find_identity(name) != nullptr);
  REQUIRE(find_identity("no-such-identity") == nullptr);
  REQUIRE_THROWS_AS(run_verify("no-such-identity", {}), std::invalid_argument);
}

TEST_CASE("grid runner", "[io]") {
  SECTION("a small all-pass sweep") {
    VerifyReport r =
        run_verify("rr-box", {{"m", {1, 4}}, {"n", {1, 4}}});
    REQUIRE(r.ok());
    REQUIRE(r.cells.size() == 16);
    REQUIRE(r.passed() == 16);
    REQUIRE(r.skipped == 0);
    REQUIRE(r.seconds >= 0.0);
    REQUIRE(r.cells.front().first ==
            ParamPoint{{"m", 1}, {"n", 1}});
  }

  SECTION("out-of-domain cells are skipped, not failed") {
    VerifyReport r = run_verify(
        "central-dsq", {{"m", {0, 4}}, {"n", {0, 4}}, {"ell", {0, 2}}});
    REQUIRE(r.ok());
    REQUIRE(r.skipped > 0);
    REQUIRE(r.cells.size() + static_cast<std::size_t>(r.skipped) == 75);
  }

  SECTION("override validation") {
    REQUIRE_THROWS_AS(run_verify("rr-box", {{"ell", {0, 1}}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(run_verify("rr-box", {{"m", {3, 1}}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(run_verify("rr-box", {}, 0), std::invalid_argument);
  }

  SECTION("worker count does not change the report") {
    VerifyReport one = run_verify("andrews-bressoud", {{"N", {0, 12}}}, 1);
    VerifyReport four = run_verify("andrews-bressoud", {{"N", {0, 12}}}, 4);
    REQUIRE(one.cells == four.cells);
    REQUIRE(one.skipped == four.skipped);
    REQUIRE(one.ok());
    REQUIRE(four.ok());
  }
}

TEST_CASE("failures carry a counterexample", "[io]") {
  Identity bad;
  bad.name = "always-three";
  bad.params = {"k"};
  bad.defaults = {{"k", {0, 5}}};
  bad.check = [](const ParamPoint& p) {
    int k = p.at("k");
    return CellOutcome{k == 3, std::to_string(k), "3"};
  };

  VerifyReport r = run_verify(bad, {});
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.first_failure.has_value());
  REQUIRE(r.first_failure->where == ParamPoint{{"k", 0}});
  REQUIRE(r.first_failure->lhs == "0");
  REQUIRE(r.first_failure->rhs == "3");
  REQUIRE(r.passed() == 1);

  Json j = to_json(r);
  REQUIRE(j["ok"] == false);
  REQUIRE(j["first_failure"]["params"]["k"] == 0);

  SECTION("exceptions in a cell become failures") {
    Identity throwing;
    throwing.name = "throws";
    throwing.params = {"k"};
    throwing.defaults = {{"k", {1, 1}}};
    throwing.check = [](const ParamPoint&) -> CellOutcome {
      throw std::domain_error("no such cell");
    };
    VerifyReport rt = run_verify(throwing, {});
    REQUIRE_FALSE(rt.ok());
    REQUIRE(rt.first_failure->lhs == "exception: no such cell");
  }
}

TEST_CASE("catalog identities hold on quick grids", "[io]") {
  struct Quick {
    std::string name;
    ParamGrid grid;
  };
  const std::vector<Quick> quick = {
      {"lopsided-box", {{"m", {0, 4}}, {"n", {0, 4}}}},
      {"central-drect", {{"m", {0, 4}}, {"n", {1, 4}}, {"ell", {0, 2}}}},
      {"box-t1", {{"m", {0, 4}}, {"n", {0, 4}}, {"ell", {0, 2}}}},
      {"fh", {{"m", {0, 4}}, {"n", {0, 4}}}},
      {"keith-km", {{"m", {0, 4}}, {"n", {0, 4}}, {"ell", {0, 2}}}},
      {"box-area", {{"m", {0, 5}}, {"n", {0, 5}}}},
      {"box-dsq", {{"m", {0, 5}}, {"n", {0, 5}}}},
      {"box-drect", {{"m", {0, 5}}, {"n", {1, 5}}}},
      {"rank-vs-avoided-part", {{"ell", {0, 3}}, {"N", {0, 15}}}},
      {"rr2-box", {{"m", {2, 5}}, {"n", {2, 5}}}},
      {"rr1-limit", {{"D", {8, 8}}}},
      {"zero-minus-a-limit", {{"a", {1, 2}}, {"D", {8, 8}}}},
      {"rank-parity", {{"D", {5, 5}}}},
      {"lgv", {{"m", {0, 4}}, {"n", {0, 4}}, {"ell", {0, 2}}}},
      {"no-part-one-limit", {{"D", {10, 10}}}},
      {"no-part-two-limit", {{"D", {10, 10}}}},
      {"ab-product", {{"ell", {0, 3}}, {"D", {10, 10}}}},
      {"lopsided-limit", {{"b", {0, 2}}, {"D", {10, 10}}}},
      {"dsq-m-limit", {{"m", {0, 4}}, {"ell", {0, 3}}, {"D", {8, 8}}}},
      {"drect-m-limit", {{"m", {0, 4}}, {"ell", {0, 3}}, {"D", {8, 8}}}},
      {"box-t1-m-limit", {{"m", {0, 4}}, {"ell", {0, 3}}, {"D", {8, 8}}}},
      {"dsq-limit", {{"ell", {0, 3}}, {"D", {8, 8}}}},
      {"drect-limit", {{"ell", {0, 3}}, {"D", {8, 8}}}},
  };
  for (const Quick& q : quick) {
    VerifyReport r = run_verify(q.name, q.grid, 2);
    INFO(q.name);
    REQUIRE(r.ok());
    REQUIRE_FALSE(r.cells.empty());
  }
}
