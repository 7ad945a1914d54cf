#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <rankpath/foata.hpp>
#include <rankpath/greene_kleitman.hpp>
#include <rankpath/partition.hpp>
#include <rankpath/word.hpp>

namespace rankpath {

namespace detail {

// Smallest successive rank together with the largest index attaining it.
struct MinRank {
  int tau;
  int index;
};

inline std::optional<MinRank> min_rank(const Partition& p) {
  std::vector<int> r = ranks(p);
  if (r.empty()) return std::nullopt;
  MinRank m{r[0], 1};
  for (int k = 1; k < static_cast<int>(r.size()); ++k)
    if (r[k] <= m.tau) m = MinRank{r[k], k + 1};
  return m;
}

inline Partition remove_part(const Partition& p, int size) {
  std::vector<int> parts = p.parts();
  auto it = std::find(parts.begin(), parts.end(), size);
  if (it == parts.end())
    throw std::logic_error("rank raising: expected part is missing");
  parts.erase(it);
  return Partition(std::move(parts));
}

inline Partition add_part(const Partition& p, int size) {
  std::vector<int> parts = p.parts();
  parts.insert(
      std::upper_bound(parts.begin(), parts.end(), size, std::greater<int>()),
      size);
  return Partition(std::move(parts));
}

}  // namespace detail

/**
 * Raises the minimum successive rank by a single cell move. With tau the
 * smallest rank and i the largest index attaining it, remove one part equal
 * to i from the partition and add a part equal to i - 1 to its conjugate
 * (adding a part of size 0 is a no-op). The area drops by exactly 1, the
 * number of parts drops by exactly 1, and the minimum rank strictly
 * increases, by exactly 1 while it is negative.
 */
inline Partition f(const Partition& p) {
  std::optional<detail::MinRank> m = detail::min_rank(p);
  if (!m || m->tau > 0)
    throw std::domain_error("f: every successive rank is positive");
  Partition out = detail::remove_part(p, m->index);
  if (m->index > 1)
    out = conjugate(detail::add_part(conjugate(out), m->index - 1));
  return out;
}

/**
 * Downward companion of f, defined on every partition. With tau the smallest
 * rank, taken as +infinity when there are no ranks, let j = d + 1 if
 * tau > 1 and otherwise the smallest index attaining tau; remove one part
 * equal to j - 1 from the conjugate (no-op when j = 1) and add a part equal
 * to j. Inverts f on the rank families where f is a bijection.
 */
inline Partition g(const Partition& p) {
  std::vector<int> r = ranks(p);
  int j = 1;
  if (!r.empty()) {
    int tau = r[0];
    int smallest = 1;
    for (int k = 1; k < static_cast<int>(r.size()); ++k)
      if (r[k] < tau) {
        tau = r[k];
        smallest = k + 1;
      }
    j = tau > 1 ? static_cast<int>(r.size()) + 1 : smallest;
  }
  Partition out = p;
  if (j > 1) out = conjugate(detail::remove_part(conjugate(out), j - 1));
  return detail::add_part(out, j);
}

// One stop along an iterated application of f. tau and index are absent
// exactly when the partition has no ranks (tau is then +infinity).
struct TrajectoryState {
  Partition partition;
  std::optional<int> tau;
  std::optional<int> index;
  int d = 0;
  int dr = 0;
  long long area = 0;
};

using Trajectory = std::vector<TrajectoryState>;

namespace detail {

inline TrajectoryState snapshot(const Partition& p) {
  TrajectoryState s;
  s.partition = p;
  if (std::optional<MinRank> m = min_rank(p)) {
    s.tau = m->tau;
    s.index = m->index;
  }
  Durfee du = durfee(p);
  s.d = du.d;
  s.dr = du.dr;
  s.area = p.area();
  return s;
}

inline void check_lift_preconditions(const char* who, const BoxedPartition& bp,
                                     int ell) {
  if (ell < 0)
    throw std::domain_error(std::string(who) + ": ell must be nonnegative");
  if (bp.n + ell < bp.m)
    throw std::domain_error(std::string(who) + ": box needs n + ell >= m");
  std::optional<MinRank> m = min_rank(bp.partition);
  if (!m || m->tau > -ell)
    throw std::domain_error(std::string(who) +
                            ": partition needs a rank <= -ell");
}

}  // namespace detail

/**
 * Applies f exactly ell + 1 times to a partition in an m x n box with some
 * rank <= -ell, landing in the full (m - ell - 1) x (n + ell + 1) box with
 * the area reduced by ell + 1 and the Durfee rectangle unchanged. Requires
 * n + ell >= m.
 */
inline BoxedPartition theta(const BoxedPartition& bp, int ell) {
  detail::check_lift_preconditions("theta", bp, ell);
  Partition cur = bp.partition;
  for (int k = 0; k <= ell; ++k) cur = f(cur);
  return BoxedPartition(std::move(cur), bp.m - ell - 1, bp.n + ell + 1);
}

/**
 * The partial iterate: applies f exactly ell times under the same
 * preconditions as theta, stopping one step short of it. The result lies in
 * the (m - ell) x (n + ell) box and still has some rank <= 0; both Durfee
 * statistics survive all ell steps. Also returns the full trajectory,
 * including the starting state, so callers can inspect how tau climbs.
 */
inline std::pair<BoxedPartition, Trajectory> f_iter(const BoxedPartition& bp,
                                                    int ell) {
  detail::check_lift_preconditions("f_iter", bp, ell);
  Trajectory traj;
  traj.reserve(static_cast<std::size_t>(ell) + 1);
  traj.push_back(detail::snapshot(bp.partition));
  Partition cur = bp.partition;
  for (int k = 0; k < ell; ++k) {
    cur = f(cur);
    traj.push_back(detail::snapshot(cur));
  }
  return {BoxedPartition(std::move(cur), bp.m - ell, bp.n + ell),
          std::move(traj)};
}

/**
 * Confirms that the boxed iterate theta and the path lift gamma are the same
 * map up to encoding:
 *
 *   phi_inv_of_partition(conjugate(theta(bp)))
 *     == gamma_iter(phi_inv_of_partition(conjugate(bp)), ell + 1),
 *
 * where each conjugate is read in the transposed box. The conjugation on
 * both sides is essential: encoding the partitions directly, without it,
 * does not commute with the step maps. Preconditions are those of theta;
 * domain errors propagate.
 */
inline bool bridge_check(const BoxedPartition& bp, int ell) {
  BoxedPartition image = theta(bp, ell);
  StepWord lhs = phi_inv_of_partition(
      BoxedPartition(conjugate(image.partition), image.n, image.m));
  StepWord rhs = gamma_iter(
      phi_inv_of_partition(
          BoxedPartition(conjugate(bp.partition), bp.n, bp.m)),
      ell + 1);
  return lhs == rhs;
}

}  // namespace rankpath
