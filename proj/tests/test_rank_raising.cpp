#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <rankpath/rank_raising.hpp>

#include "test_util.hpp"

using namespace rankpath;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

bool some_rank_at_most(const Partition& p, int bound) {
  return !satisfies(p, RankConstraint::at_least(bound + 1));
}

std::optional<int> min_rank_of(const Partition& p) {
  std::vector<int> r = ranks(p);
  if (r.empty()) return std::nullopt;
  return *std::min_element(r.begin(), r.end());
}

// Largest index attaining the minimum rank, independent of the header's
// bookkeeping.
std::optional<int> deepest_index(const Partition& p) {
  std::vector<int> r = ranks(p);
  std::optional<int> best;
  for (int k = 0; k < static_cast<int>(r.size()); ++k)
    if (!best || r[k] <= r[*best - 1]) best = k + 1;
  return best;
}

}  // namespace

TEST_CASE("f raises the minimum rank on known partitions", "[rank]") {
  REQUIRE(f(P({4, 4, 3, 3, 1, 1})) == P({4, 4, 3, 3, 1}));
  REQUIRE(f(P({4, 4, 3, 3, 1})) == P({5, 5, 3, 1}));
  REQUIRE(f(P({5, 5, 3, 1})) == P({6, 6, 1}));

  REQUIRE(f(P({1, 1})) == P({1}));
  REQUIRE(f(P({1})) == P({}));
  REQUIRE(f(P({2, 2})) == P({3}));

  REQUIRE_THROWS_AS(f(P({})), std::domain_error);
  REQUIRE_THROWS_AS(f(P({2})), std::domain_error);
  REQUIRE_THROWS_AS(f(P({3, 1})), std::domain_error);
  REQUIRE_THROWS_AS(f(P({6, 6, 1})), std::domain_error);
}

TEST_CASE("g lowers the minimum rank on known partitions", "[rank]") {
  REQUIRE(g(P({6, 6, 1})) == P({5, 5, 3, 1}));
  REQUIRE(g(P({5, 5, 3, 1})) == P({4, 4, 3, 3, 1}));
  REQUIRE(g(P({4, 4, 3, 3, 1})) == P({4, 4, 3, 3, 1, 1}));

  REQUIRE(g(P({})) == P({1}));
  REQUIRE(g(P({1})) == P({1, 1}));
  REQUIRE(g(P({2})) == P({2, 1}));
}

TEST_CASE("one application of f adjusts size, parts, and ranks predictably",
          "[rank]") {
  for (int N = 1; N <= 22; ++N) {
    for (const std::vector<int>& raw : testutil::partitions_of(N)) {
      Partition lam(raw);
      if (!some_rank_at_most(lam, 0)) continue;
      int tau = *min_rank_of(lam);
      int i = *deepest_index(lam);
      Durfee before = durfee(lam);
      Partition mu = f(lam);

      REQUIRE(mu.area() == lam.area() - 1);
      REQUIRE(mu.num_parts() == lam.num_parts() - 1);
      if (i == 1) {
        // The largest part survives, except that f((1)) has no parts at all.
        if (mu.empty())
          REQUIRE(lam == P({1}));
        else
          REQUIRE(mu.part(1) == lam.part(1));
      } else {
        REQUIRE(mu.part(1) == lam.part(1) + 1);
      }

      std::optional<int> mu_tau = min_rank_of(mu);
      if (mu_tau) REQUIRE(*mu_tau > tau);
      if (tau < 0) {
        REQUIRE(mu_tau.has_value());
        REQUIRE(*mu_tau == tau + 1);
      }

      Durfee after = durfee(mu);
      REQUIRE(after.dr == before.dr);
      if (tau < 0) REQUIRE(after.d == before.d);

      // When the removed part is the whole last row of the Durfee square,
      // the square shrinks and takes the old minimizing index with it;
      // otherwise the minimizing index never moves left.
      bool square_shrinks = i == before.d && lam.part(before.d) == before.d &&
                            lam.part(before.d + 1) < before.d;
      if (square_shrinks) {
        REQUIRE(tau == 0);
        REQUIRE(after.d == before.d - 1);
      } else {
        REQUIRE(*deepest_index(mu) >= i);
      }
    }
  }
}

TEST_CASE("f is a bijection between adjacent rank families", "[rank]") {
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      for (int ell = 0; ell <= 3; ++ell) {
        if (n + ell < m) continue;

        std::map<long long, std::vector<Partition>> domain;
        for (const std::vector<int>& raw : testutil::box_partitions(m, n)) {
          Partition p(raw);
          if (some_rank_at_most(p, -ell)) domain[p.area()].push_back(p);
        }

        if (m == 0) {
          REQUIRE(domain.empty());
          continue;
        }

        std::map<long long, std::set<Partition>> target;
        for (const std::vector<int>& raw :
             testutil::box_partitions(m - 1, n + 1)) {
          Partition p(raw);
          if (ell == 0 || some_rank_at_most(p, 1 - ell))
            target[p.area()].insert(std::move(p));
        }

        for (const auto& [N, family] : domain) {
          std::set<Partition> images;
          for (const Partition& lam : family) {
            Partition mu = f(lam);
            REQUIRE(target[N - 1].count(mu) == 1);
            REQUIRE(g(mu) == lam);
            Durfee before = durfee(lam);
            Durfee after = durfee(mu);
            REQUIRE(after.dr == before.dr);
            if (ell >= 1) REQUIRE(after.d == before.d);
            images.insert(std::move(mu));
          }
          REQUIRE(images.size() == family.size());
          REQUIRE(images.size() == target[N - 1].size());
          for (const Partition& mu : target[N - 1]) REQUIRE(f(g(mu)) == mu);
        }
      }
    }
  }
}

TEST_CASE("theta on known boxed partitions", "[rank]") {
  REQUIRE(theta(BoxedPartition(P({4, 4, 3, 3, 1, 1}), 6, 4), 2) ==
          BoxedPartition(P({6, 6, 1}), 3, 7));
  REQUIRE(theta(BoxedPartition(P({1}), 1, 1), 0) ==
          BoxedPartition(P({}), 0, 2));
  REQUIRE(theta(BoxedPartition(P({2, 2}), 2, 2), 0) ==
          BoxedPartition(P({3}), 1, 3));

  REQUIRE_THROWS_AS(theta(BoxedPartition(P({1}), 1, 1), -1),
                    std::domain_error);
  REQUIRE_THROWS_AS(theta(BoxedPartition(P({1, 1}), 2, 1), 0),
                    std::domain_error);
  REQUIRE_THROWS_AS(theta(BoxedPartition(P({2, 2}), 2, 2), 1),
                    std::domain_error);
  REQUIRE_THROWS_AS(theta(BoxedPartition(P({}), 2, 2), 0), std::domain_error);
}

TEST_CASE("theta maps a rank family onto a full box", "[rank]") {
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      for (int ell = 0; ell <= 3; ++ell) {
        if (n + ell < m) continue;

        std::map<long long, std::vector<Partition>> domain;
        for (const std::vector<int>& raw : testutil::box_partitions(m, n)) {
          Partition p(raw);
          if (some_rank_at_most(p, -ell)) domain[p.area()].push_back(p);
        }

        if (m <= ell) {
          REQUIRE(domain.empty());
          continue;
        }

        std::map<long long, std::set<Partition>> boxed;
        for (const std::vector<int>& raw :
             testutil::box_partitions(m - ell - 1, n + ell + 1)) {
          Partition p(raw);
          boxed[p.area()].insert(std::move(p));
        }

        for (const auto& [N, family] : domain) {
          std::set<Partition> images;
          for (const Partition& lam : family) {
            BoxedPartition out = theta(BoxedPartition(lam, m, n), ell);
            REQUIRE(out.m == m - ell - 1);
            REQUIRE(out.n == n + ell + 1);
            REQUIRE(out.partition.area() == N - ell - 1);
            REQUIRE(durfee(out.partition).dr == durfee(lam).dr);
            images.insert(out.partition);
          }
          REQUIRE(images.size() == family.size());
          REQUIRE(images.size() == boxed[N - ell - 1].size());
        }
      }
    }
  }
}

TEST_CASE("f_iter on known boxed partitions", "[rank]") {
  auto [out, traj] = f_iter(BoxedPartition(P({4, 4, 3, 3, 1, 1}), 6, 4), 2);
  REQUIRE(out == BoxedPartition(P({5, 5, 3, 1}), 4, 6));
  REQUIRE(traj.size() == 3);
  REQUIRE(traj[0].partition == P({4, 4, 3, 3, 1, 1}));
  REQUIRE(traj[1].partition == P({4, 4, 3, 3, 1}));
  REQUIRE(traj[2].partition == P({5, 5, 3, 1}));
  REQUIRE(traj[0].tau == -2);
  REQUIRE(traj[0].index == 1);
  REQUIRE(traj[1].tau == -1);
  REQUIRE(traj[1].index == 3);
  REQUIRE(traj[2].tau == 0);
  REQUIRE(traj[0].area == 16);
  REQUIRE(traj[2].area == 14);

  BoxedPartition fixed(P({2, 2}), 2, 2);
  auto [same, short_traj] = f_iter(fixed, 0);
  REQUIRE(same == fixed);
  REQUIRE(short_traj.size() == 1);

  auto [once, steps] = f_iter(BoxedPartition(P({2, 2, 2}), 3, 3), 1);
  REQUIRE(once == BoxedPartition(P({3, 2}), 2, 4));
  REQUIRE(durfee(once.partition).d == durfee(P({2, 2, 2})).d);
  REQUIRE(steps.size() == 2);

  REQUIRE_THROWS_AS(f_iter(BoxedPartition(P({2, 2}), 2, 2), 1),
                    std::domain_error);
}

TEST_CASE("f_iter lands in the base family and logs the trajectory",
          "[rank]") {
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      for (int ell = 0; ell <= 3; ++ell) {
        if (n + ell < m) continue;

        std::map<long long, std::vector<Partition>> domain;
        for (const std::vector<int>& raw : testutil::box_partitions(m, n)) {
          Partition p(raw);
          if (some_rank_at_most(p, -ell)) domain[p.area()].push_back(p);
        }

        std::map<long long, long long> base_family;
        if (m >= ell)
          for (const std::vector<int>& raw :
               testutil::box_partitions(m - ell, n + ell)) {
            Partition p(raw);
            if (some_rank_at_most(p, 0)) ++base_family[p.area()];
          }

        for (const auto& [N, family] : domain) {
          std::set<Partition> images;
          for (const Partition& lam : family) {
            auto [out, traj] = f_iter(BoxedPartition(lam, m, n), ell);
            REQUIRE(out.m == m - ell);
            REQUIRE(out.n == n + ell);
            REQUIRE(some_rank_at_most(out.partition, 0));
            REQUIRE(durfee(out.partition).d == durfee(lam).d);
            REQUIRE(durfee(out.partition).dr == durfee(lam).dr);

            REQUIRE(traj.size() == static_cast<std::size_t>(ell) + 1);
            REQUIRE(traj.front().partition == lam);
            REQUIRE(traj.back().partition == out.partition);
            for (std::size_t k = 0; k < traj.size(); ++k) {
              const TrajectoryState& s = traj[k];
              REQUIRE(s.area == s.partition.area());
              REQUIRE(s.tau == min_rank_of(s.partition));
              REQUIRE(s.index == deepest_index(s.partition));
              REQUIRE(s.d == durfee(s.partition).d);
              REQUIRE(s.dr == durfee(s.partition).dr);
              if (k > 0) {
                REQUIRE(s.area == traj[k - 1].area - 1);
                REQUIRE(s.dr == traj[k - 1].dr);
                // Missing tau means no ranks at all, which beats any value.
                if (s.tau) REQUIRE(*s.tau > *traj[k - 1].tau);
              }
            }
            images.insert(out.partition);
          }
          REQUIRE(images.size() == family.size());
          REQUIRE(static_cast<long long>(images.size()) ==
                  base_family[N - ell]);
        }
      }
    }
  }
}

TEST_CASE("the boxed iterate matches the path lift", "[rank]") {
  BoxedPartition running(P({4, 4, 3, 3, 1, 1}), 6, 4);
  StepWord start = phi_inv_of_partition(
      BoxedPartition(conjugate(running.partition), 4, 6));
  REQUIRE(start == parse_step_word("DDUUDUDDDU"));
  REQUIRE(gamma_iter(start, 3) == parse_step_word("UUUUDUDDUU"));
  BoxedPartition lifted = theta(running, 2);
  REQUIRE(phi_inv_of_partition(BoxedPartition(
              conjugate(lifted.partition), lifted.n, lifted.m)) ==
          parse_step_word("UUUUDUDDUU"));

  REQUIRE(bridge_check(running, 2));
  REQUIRE(bridge_check(BoxedPartition(P({1}), 1, 1), 0));
  REQUIRE_THROWS_AS(bridge_check(BoxedPartition(P({2, 2}), 2, 2), 1),
                    std::domain_error);
}

TEST_CASE("the one-step diagram and the full bridge commute everywhere",
          "[rank]") {
  for (int m = 0; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      for (int ell = 0; ell <= 2; ++ell) {
        if (n + ell < m) continue;
        for (const std::vector<int>& raw : testutil::box_partitions(m, n)) {
          Partition lam(raw);
          if (!some_rank_at_most(lam, -ell)) continue;

          StepWord one_step = phi_inv_of_partition(
              BoxedPartition(conjugate(f(lam)), n + 1, m - 1));
          StepWord lifted = gamma(phi_inv_of_partition(
              BoxedPartition(conjugate(lam), n, m)));
          REQUIRE(one_step == lifted);

          REQUIRE(bridge_check(BoxedPartition(lam, m, n), ell));
        }
      }
    }
  }
}
