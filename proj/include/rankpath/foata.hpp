#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include <rankpath/partition.hpp>
#include <rankpath/word.hpp>

namespace rankpath {

/*
 * Second fundamental transformation on {U,D} words. Writing
 * w = U^{m_0} D^{n_0} U^{m_1} D^{n_1} ... U^{m_d} D^{n_d}, with m_0 >= 0,
 * n_d >= 0 and all other runs positive, the image is
 *
 *   phi(w) = U^{m_d-1} D U^{m_{d-1}-1} D ... U^{m_1-1} D U^{m_0}
 *            D^{n_0-1} U D^{n_1-1} U ... D^{n_{d-1}-1} U D^{n_d}.
 *
 * Computed in one pass over the runs; sends maj to inv and preserves the
 * number of steps of each kind. The equivalent three-case recursion
 * (phi(wD) = phi(w)D, phi(wUU) = U phi(wU), phi(wDU) = D phi(w) U) lives in
 * the tests as an oracle.
 */
inline StepWord phi(const StepWord& w) {
  std::vector<std::pair<int, int>> runs;
  std::size_t i = 0;
  do {
    int u = 0, d = 0;
    while (i < w.size() && w[i] == 'U') ++u, ++i;
    while (i < w.size() && w[i] == 'D') ++d, ++i;
    runs.emplace_back(u, d);
  } while (i < w.size());

  int d = static_cast<int>(runs.size()) - 1;
  StepWord out;
  out.reserve(w.size());
  for (int j = d; j >= 1; --j) {
    out.append(static_cast<std::size_t>(runs[j].first - 1), 'U');
    out.push_back('D');
  }
  out.append(static_cast<std::size_t>(runs[0].first), 'U');
  for (int j = 0; j < d; ++j) {
    out.append(static_cast<std::size_t>(runs[j].second - 1), 'D');
    out.push_back('U');
  }
  out.append(static_cast<std::size_t>(runs[d].second), 'D');
  return out;
}

/*
 * Inverse transformation, peeling the image from the outside in. A word in
 * the image of "append D" ends with D; otherwise it ends with U, and the
 * first letter tells which of the two remaining cases produced it, because
 * phi of a word ending in U itself ends in U.
 */
inline StepWord phi_inv(const StepWord& w) {
  std::string rev;
  rev.reserve(w.size());
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2) {
    if (w[hi - 1] == 'D') {
      rev.push_back('D');
      --hi;
    } else if (w[lo] == 'U') {
      rev.push_back('U');
      ++lo;
    } else {
      rev.push_back('U');
      rev.push_back('D');
      ++lo;
      --hi;
    }
  }
  if (hi - lo == 1) rev.push_back(w[lo]);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

/*
 * phi_inv applied to the boundary word of a boxed partition, built directly
 * from the hook decomposition: the image is the unique path in the box whose
 * j-th valley from the left is (b_j + a_j, b_j - a_j). Must agree with
 * phi_inv(to_word(bp)); the test suite keeps the two in sync.
 */
inline StepWord phi_inv_of_partition(const BoxedPartition& bp) {
  HookDecomposition h = hook_decomposition(bp.partition);
  int d = static_cast<int>(h.a.size());
  StepWord out;
  out.reserve(static_cast<std::size_t>(bp.m + bp.n));
  int pu = 0, pd = 0;
  for (int j = 0; j < d; ++j) {
    out.append(static_cast<std::size_t>(h.b[j] - pu), 'U');
    out.append(static_cast<std::size_t>(h.a[j] - pd), 'D');
    pu = h.b[j];
    pd = h.a[j];
  }
  out.append(static_cast<std::size_t>(bp.m - pu), 'U');
  out.append(static_cast<std::size_t>(bp.n - pd), 'D');
  return out;
}

/*
 * The (des, maj)-preserving involution P -> phi_inv(conjugate(phi(P))),
 * where phi(P) is read as a partition boundary and conjugated in the
 * transposed box. Valley positions are fixed and each valley height v
 * becomes -2 - v, so paths with valley heights in a set H map onto paths
 * with valley heights in -2 - H.
 */
inline StepWord flip_valleys(const StepWord& w) {
  BoxedPartition bp = from_word(phi(w));
  BoxedPartition flipped(conjugate(bp.partition), bp.n, bp.m);
  return phi_inv_of_partition(flipped);
}

}  // namespace rankpath
