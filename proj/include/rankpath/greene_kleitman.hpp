#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include <rankpath/word.hpp>

namespace rankpath {

// Turns the D step ending at the leftmost minimum into a U step. Raises the
// minimum by exactly 1 and keeps the matched pairs and peak positions; the
// flipped step is always the rightmost unmatched D.
inline StepWord gamma(const StepWord& w) {
  int h = 0, best = 0;
  std::size_t flip = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    h += (w[i] == 'U') ? 1 : -1;
    if (h < best) {
      best = h;
      flip = i;
    }
  }
  if (best >= 0)
    throw std::domain_error("gamma: path has no unmatched D step");
  StepWord out = w;
  assert(out[flip] == 'D');
  out[flip] = 'U';
  return out;
}

// Turns the U step starting at the rightmost minimum into a D step; the
// inverse of gamma. The flipped step is always the leftmost unmatched U.
inline StepWord gamma_inv(const StepWord& w) {
  std::vector<int> h(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i)
    h[i + 1] = h[i] + (w[i] == 'U' ? 1 : -1);
  std::size_t j = w.size();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] <= h[j]) j = i;
  if (j == w.size())
    throw std::domain_error("gamma_inv: path has no unmatched U step");
  StepWord out = w;
  assert(out[j] == 'U');
  out[j] = 'D';
  return out;
}

// k-fold gamma in one shot: the k rightmost unmatched D steps all become U
// steps. Agreement with iterating gamma is a tested property.
inline StepWord gamma_iter(const StepWord& w, int k) {
  if (k < 0) throw std::domain_error("gamma_iter: negative iteration count");
  StepMatching m = match_steps(w);
  if (static_cast<int>(m.unmatched_downs.size()) < k)
    throw std::domain_error(
        "gamma_iter: fewer unmatched D steps than iterations");
  StepWord out = w;
  for (int i = 0; i < k; ++i)
    out[m.unmatched_downs[m.unmatched_downs.size() - 1 - i] - 1] = 'U';
  return out;
}

}  // namespace rankpath
