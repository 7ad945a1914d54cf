#pragma once

#include <algorithm>
#include <string>
#include <vector>

// Small brute-force generators used as independent references by the test
// suites. They are deliberately separate from the library's own enumeration
// module so the two can check each other.
namespace testutil {

inline void box_partitions_rec(int m, int n, std::vector<int>& cur,
                               std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == m) return;
  int hi = cur.empty() ? n : cur.back();
  for (int v = 1; v <= hi; ++v) {
    cur.push_back(v);
    box_partitions_rec(m, n, cur, out);
    cur.pop_back();
  }
}

// Partitions with at most m parts, each at most n, in lexicographic order.
inline std::vector<std::vector<int>> box_partitions(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  box_partitions_rec(m, n, cur, out);
  return out;
}

inline void partitions_of_rec(int remaining, int maxpart, std::vector<int>& cur,
                              std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int v = std::min(maxpart, remaining); v >= 1; --v) {
    cur.push_back(v);
    partitions_of_rec(remaining - v, v, cur, out);
    cur.pop_back();
  }
}

// Partitions of N.
inline std::vector<std::vector<int>> partitions_of(int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_of_rec(N, N, cur, out);
  return out;
}

// Every word with m U steps and n D steps.
inline std::vector<std::string> words(int m, int n) {
  std::string w;
  w.append(static_cast<std::size_t>(n), 'D');
  w.append(static_cast<std::size_t>(m), 'U');
  std::vector<std::string> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace testutil
