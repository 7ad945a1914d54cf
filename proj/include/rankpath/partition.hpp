#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <rankpath/word.hpp>

namespace rankpath {

/**
 * An integer partition: a weakly decreasing sequence of positive parts,
 * possibly empty. Canonical form is checked at construction; all operations
 * on partitions are pure functions, so values can be shared freely.
 */
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1)
        throw std::invalid_argument("partition: parts must be positive");
      if (i > 0 && parts_[i - 1] < parts_[i])
        throw std::invalid_argument("partition: parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  int num_parts() const { return static_cast<int>(parts_.size()); }

  // 1-based access with zero padding: part(i) = 0 for i > num_parts().
  int part(int i) const {
    return (i >= 1 && i <= num_parts()) ? parts_[i - 1] : 0;
  }

  long long area() const {
    long long s = 0;
    for (int p : parts_) s += p;
    return s;
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

inline Partition conjugate(const Partition& p) {
  std::vector<int> cols;
  if (!p.empty()) {
    cols.resize(p.parts()[0]);
    for (int part : p.parts())
      for (int j = 0; j < part; ++j) ++cols[j];
  }
  return Partition(std::move(cols));
}

struct Durfee {
  int d = 0;   // side of the largest square inside the diagram
  int dr = 0;  // height of the largest (i+1) x i rectangle
};

inline Durfee durfee(const Partition& p) {
  Durfee out;
  for (int i = 1; i <= p.num_parts(); ++i) {
    if (p.part(i) >= i) out.d = i;
    if (p.part(i) >= i + 1) out.dr = i;
  }
  return out;
}

// Successive ranks r_i = lambda_i - lambda'_i for 1 <= i <= d.
inline std::vector<int> ranks(const Partition& p) {
  Partition q = conjugate(p);
  int d = durfee(p).d;
  std::vector<int> out;
  out.reserve(d);
  for (int i = 1; i <= d; ++i) out.push_back(p.part(i) - q.part(i));
  return out;
}

/**
 * Principal hook data: for 1 <= j <= d the j-th hook (counted from the
 * inside out) has arm length a_j and leg length b_j, where
 * a_{d+1-j} = lambda_j - j + 1 and b_{d+1-j} = lambda'_j - j. Both sequences
 * are strictly increasing, a_1 >= 1, b_1 >= 0, and the hook lengths
 * a_j + b_j sum to the area.
 */
struct HookDecomposition {
  std::vector<int> a;
  std::vector<int> b;
};

inline HookDecomposition hook_decomposition(const Partition& p) {
  Partition q = conjugate(p);
  int d = durfee(p).d;
  HookDecomposition h;
  h.a.assign(d, 0);
  h.b.assign(d, 0);
  for (int j = 1; j <= d; ++j) {
    h.a[d - j] = p.part(j) - j + 1;
    h.b[d - j] = q.part(j) - j;
  }
  return h;
}

/**
 * A membership predicate for rank values: one of a lower bound, an upper
 * bound, a closed interval, or a finite set.
 */
class RankConstraint {
 public:
  static RankConstraint at_least(int b) {
    return RankConstraint(Kind::at_least, b, 0, {});
  }
  static RankConstraint at_most(int b) {
    return RankConstraint(Kind::at_most, b, 0, {});
  }
  static RankConstraint interval(int lo, int hi) {
    if (lo > hi)
      throw std::invalid_argument("rank constraint: interval needs lo <= hi");
    return RankConstraint(Kind::interval, lo, hi, {});
  }
  static RankConstraint finite(std::set<int> values) {
    if (values.empty())
      throw std::invalid_argument("rank constraint: finite set is empty");
    return RankConstraint(Kind::finite, 0, 0, std::move(values));
  }

  bool contains(int r) const {
    switch (kind_) {
      case Kind::at_least:
        return r >= lo_;
      case Kind::at_most:
        return r <= lo_;
      case Kind::interval:
        return lo_ <= r && r <= hi_;
      case Kind::finite:
        return values_.count(r) > 0;
    }
    return false;
  }

 private:
  enum class Kind { at_least, at_most, interval, finite };

  RankConstraint(Kind k, int lo, int hi, std::set<int> values)
      : kind_(k), lo_(lo), hi_(hi), values_(std::move(values)) {}

  Kind kind_;
  int lo_;
  int hi_;
  std::set<int> values_;
};

// True iff every successive rank of p satisfies c; vacuously true when
// p is empty, so the empty partition belongs to every rank family.
inline bool satisfies(const Partition& p, const RankConstraint& c) {
  for (int r : ranks(p))
    if (!c.contains(r)) return false;
  return true;
}

/**
 * A partition together with the bounding box it is considered in: at most m
 * parts, each at most n. The box matters for the boundary-word encoding,
 * since the same partition traces different words in different boxes.
 */
struct BoxedPartition {
  Partition partition;
  int m = 0;
  int n = 0;

  BoxedPartition() = default;

  BoxedPartition(Partition p, int rows, int cols)
      : partition(std::move(p)), m(rows), n(cols) {
    if (m < 0 || n < 0)
      throw std::invalid_argument("boxed partition: negative box bounds");
    if (partition.num_parts() > m || partition.part(1) > n)
      throw std::invalid_argument("boxed partition: partition exceeds box");
  }

  friend auto operator<=>(const BoxedPartition&, const BoxedPartition&) =
      default;
};

/*
 * Boundary word of the diagram inside its box, read from the lower-left to
 * the upper-right corner of the box: a U for each vertical step along the
 * boundary, a D for each horizontal one. For lambda with k parts this is
 * U^{m-k} D^{lambda_k} U D^{lambda_{k-1}-lambda_k} ... U D^{n-lambda_1},
 * and inv(word) = area.
 */
inline StepWord to_word(const BoxedPartition& bp) {
  const Partition& p = bp.partition;
  int k = p.num_parts();
  StepWord w;
  w.reserve(static_cast<std::size_t>(bp.m + bp.n));
  w.append(static_cast<std::size_t>(bp.m - k), 'U');
  for (int i = k; i >= 1; --i) {
    w.append(static_cast<std::size_t>(p.part(i) - p.part(i + 1)), 'D');
    w.push_back('U');
  }
  w.append(static_cast<std::size_t>(bp.n - p.part(1)), 'D');
  return w;
}

inline BoxedPartition from_word(const StepWord& w) {
  std::vector<int> parts;
  int downs = 0;
  for (char c : w) {
    if (c == 'D')
      ++downs;
    else
      parts.push_back(downs);
  }
  std::reverse(parts.begin(), parts.end());
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  int m = count_ups(w);
  int n = downs;
  return BoxedPartition(Partition(std::move(parts)), m, n);
}

}  // namespace rankpath
