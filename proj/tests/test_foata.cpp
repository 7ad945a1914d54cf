#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include <rankpath/foata.hpp>

#include "test_util.hpp"

using namespace rankpath;

namespace {

// Literal three-case recursion, kept as the oracle for the closed form.
StepWord phi_rec(const StepWord& w) {
  std::size_t k = w.size();
  if (k <= 1) return w;
  if (w.back() == 'D') return phi_rec(w.substr(0, k - 1)) + "D";
  if (w[k - 2] == 'U') return "U" + phi_rec(w.substr(0, k - 1));
  return "D" + phi_rec(w.substr(0, k - 2)) + "U";
}

std::vector<int> valley_heights(const StepWord& w) {
  std::vector<int> out;
  for (const auto& v : profile(w).valleys) out.push_back(v.second);
  return out;
}

std::vector<int> sorted_ranks(const Partition& p) {
  auto r = ranks(p);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST_CASE("phi on known words", "[foata]") {
  REQUIRE(phi(parse_step_word("121")) == parse_step_word("211"));
  REQUIRE(phi(parse_step_word("1")) == parse_step_word("1"));
  REQUIRE(phi(StepWord{}).empty());
  REQUIRE(phi(parse_step_word("11212")) == parse_step_word("21112"));
  REQUIRE(phi(parse_step_word("1122")) == parse_step_word("1122"));
}

TEST_CASE("phi_inv on known words", "[foata]") {
  REQUIRE(phi_inv(parse_step_word("211")) == parse_step_word("121"));
  REQUIRE(phi_inv(parse_step_word("1122")) == parse_step_word("1122"));
  REQUIRE(phi_inv(parse_step_word("21112")) == parse_step_word("11212"));
}

TEST_CASE("phi matches the recursive form and transports maj to inv",
          "[foata]") {
  for (int m = 0; m <= 14; ++m) {
    for (int n = 0; m + n <= 14; ++n) {
      std::set<StepWord> image;
      for (const auto& w : testutil::words(m, n)) {
        StepWord f = phi(w);
        REQUIRE(f == phi_rec(w));
        REQUIRE(count_ups(f) == m);
        REQUIRE(count_downs(f) == n);
        REQUIRE(profile(f).inv == profile(w).maj);
        REQUIRE(phi_inv(f) == w);
        REQUIRE(phi(phi_inv(w)) == w);
        image.insert(f);
      }
      REQUIRE(image.size() == testutil::words(m, n).size());
    }
  }
}

TEST_CASE("hook fast path places the valleys", "[foata]") {
  StepWord p = phi_inv_of_partition(
      BoxedPartition(Partition(std::vector<int>{6, 6, 5, 4, 4, 4, 1}), 9, 6));
  REQUIRE(profile(p).valleys == std::vector<std::pair<int, int>>{
                                    {3, 1}, {6, 0}, {9, -1}, {12, 0}});

  p = phi_inv_of_partition(BoxedPartition(Partition(std::vector<int>{}), 3, 4));
  REQUIRE(p == parse_step_word("UUUDDDD"));
  REQUIRE(profile(p).valleys.empty());

  p = phi_inv_of_partition(BoxedPartition(Partition(std::vector<int>{2, 2}), 2, 2));
  REQUIRE(profile(p).valleys ==
          std::vector<std::pair<int, int>>{{1, -1}, {3, -1}});
}

TEST_CASE("hook fast path equals the generic inverse", "[foata]") {
  for (int m = 0; m <= 7; ++m) {
    for (int n = 0; n <= 7; ++n) {
      for (const auto& parts : testutil::box_partitions(m, n)) {
        BoxedPartition bp(Partition(parts), m, n);
        REQUIRE(phi_inv_of_partition(bp) == phi_inv(to_word(bp)));
      }
    }
  }
}

TEST_CASE("statistics transported by the partition-to-path map", "[foata]") {
  for (int m = 0; m <= 7; ++m) {
    for (int n = 0; n <= 7; ++n) {
      for (const auto& parts : testutil::box_partitions(m, n)) {
        Partition lam(parts);
        BoxedPartition bp(lam, m, n);
        StepWord path = phi_inv_of_partition(bp);
        auto prof = profile(path);
        REQUIRE(lam.area() == prof.maj);
        int d = durfee(lam).d;
        REQUIRE(d == prof.des);

        auto hooks = hook_decomposition(lam);
        std::set<int> hook_lengths, descent_set;
        for (int j = 0; j < d; ++j)
          hook_lengths.insert(hooks.a[j] + hooks.b[j]);
        for (const auto& v : prof.valleys) descent_set.insert(v.first);
        REQUIRE(hook_lengths == descent_set);

        auto r = ranks(lam);
        for (int i = 1; i <= d; ++i)
          REQUIRE(r[i - 1] == -1 - prof.valleys[d - i].second);

        // The decrement applies only when the path has a valley; a path can
        // start with D yet have no valleys only in the degenerate m = 0 box.
        int drc = durfee(conjugate(lam)).dr;
        bool dec = !path.empty() && path[0] == 'D' && prof.des > 0;
        REQUIRE(drc == prof.des - (dec ? 1 : 0));
      }
    }
  }
}

TEST_CASE("rank families map onto valley families", "[foata]") {
  std::vector<RankConstraint> constraints;
  std::vector<std::pair<int, int>> ranges;
  for (int s = -6; s <= 6; ++s) {
    constraints.push_back(RankConstraint::finite({s}));
    ranges.emplace_back(s, s);
  }
  for (int lo = -6; lo <= 6; ++lo) {
    for (int hi = lo + 1; hi <= 6; ++hi) {
      constraints.push_back(RankConstraint::interval(lo, hi));
      ranges.emplace_back(lo, hi);
    }
  }
  constraints.push_back(RankConstraint::finite({-3, 0, 2}));
  ranges.emplace_back(99, 99);  // sentinel; handled via explicit set below

  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      auto parts_list = testutil::box_partitions(m, n);
      for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
        auto in_s = [&](int r) {
          if (ranges[ci].first == 99)
            return r == -3 || r == 0 || r == 2;
          return ranges[ci].first <= r && r <= ranges[ci].second;
        };
        std::set<StepWord> image;
        for (const auto& parts : parts_list) {
          Partition lam(parts);
          if (!satisfies(lam, constraints[ci])) continue;
          image.insert(phi_inv_of_partition(BoxedPartition(lam, m, n)));
        }
        std::set<StepWord> target;
        for (const auto& w : testutil::words(m, n)) {
          bool ok = true;
          for (int h : valley_heights(w))
            if (!in_s(-h - 1)) ok = false;
          if (ok) target.insert(w);
        }
        REQUIRE(image == target);
      }
    }
  }
}

TEST_CASE("valley flip on known paths", "[foata]") {
  REQUIRE(flip_valleys(parse_step_word("DDUU")) == parse_step_word("UDUD"));
  REQUIRE(flip_valleys(parse_step_word("UUDD")) == parse_step_word("UUDD"));
}

TEST_CASE("valley flip preserves des and maj and negates heights", "[foata]") {
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      for (const auto& w : testutil::words(m, n)) {
        StepWord f = flip_valleys(w);
        REQUIRE(count_ups(f) == n);
        REQUIRE(count_downs(f) == m);
        auto pw = profile(w);
        auto pf = profile(f);
        REQUIRE(pw.des == pf.des);
        REQUIRE(pw.maj == pf.maj);
        REQUIRE(pw.valleys.size() == pf.valleys.size());
        for (std::size_t i = 0; i < pw.valleys.size(); ++i) {
          REQUIRE(pf.valleys[i].first == pw.valleys[i].first);
          REQUIRE(pf.valleys[i].second == -2 - pw.valleys[i].second);
        }
        REQUIRE(flip_valleys(f) == w);
      }
    }
  }
}

TEST_CASE("valley flip exchanges height families", "[foata]") {
  for (int m = 0; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      for (int lo = -4; lo <= 4; ++lo) {
        for (int hi = lo; hi <= 4; ++hi) {
          std::set<StepWord> image, target;
          for (const auto& w : testutil::words(m, n)) {
            bool in_dom = true;
            for (int h : valley_heights(w)) {
              // domain: heights in -S-1 for S = [lo,hi]
              if (!(-hi - 1 <= h && h <= -lo - 1)) in_dom = false;
            }
            if (in_dom) image.insert(flip_valleys(w));
          }
          // target: heights in S-1, in the transposed box
          for (const auto& w : testutil::words(n, m)) {
            bool in_tgt = true;
            for (int h : valley_heights(w))
              if (!(lo - 1 <= h && h <= hi - 1)) in_tgt = false;
            if (in_tgt) target.insert(w);
          }
          REQUIRE(image == target);
        }
      }
    }
  }
}

TEST_CASE("maj generating functions agree between ranks and valleys",
          "[foata]") {
  // Spot check of the transported distribution: partitions in a box by
  // (d, area) against paths by (des, maj).
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      std::map<std::pair<int, long long>, int> left, right;
      for (const auto& parts : testutil::box_partitions(m, n)) {
        Partition lam(parts);
        ++left[{durfee(lam).d, lam.area()}];
      }
      for (const auto& w : testutil::words(m, n)) {
        auto p = profile(w);
        ++right[{p.des, p.maj}];
      }
      REQUIRE(left == right);
    }
  }
}
