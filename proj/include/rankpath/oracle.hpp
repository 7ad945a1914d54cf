#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankpath/foata.hpp"
#include "rankpath/formulas.hpp"
#include "rankpath/partition.hpp"
#include "rankpath/qpoly.hpp"
#include "rankpath/series.hpp"
#include "rankpath/word.hpp"

namespace rankpath {

inline constexpr long long kEnumerationCap = 10'000'000;

/**
 * A finite family of partitions or paths, described as a root set plus a
 * stack of filters. Partition roots take rank and part filters; path roots
 * take valley-height and minimum-height filters. Everything is enumerated
 * by brute force; this module is the ground truth the closed formulas are
 * checked against.
 */
class FamilySpec {
 public:
  static FamilySpec partitions_in_box(int m, int n) {
    if (m < 0 || n < 0)
      throw std::invalid_argument("family: box sides must be nonnegative");
    FamilySpec s(Kind::partitions_in_box);
    s.a_ = m;
    s.b_ = n;
    return s;
  }

  static FamilySpec partitions_of_n(int N) {
    if (N < 0)
      throw std::invalid_argument("family: partition size must be nonnegative");
    FamilySpec s(Kind::partitions_of_n);
    s.a_ = N;
    return s;
  }

  // Paths with m up steps and n down steps.
  static FamilySpec paths_in_grid(int m, int n) {
    if (m < 0 || n < 0)
      throw std::invalid_argument("family: step counts must be nonnegative");
    FamilySpec s(Kind::paths_in_grid);
    s.a_ = m;
    s.b_ = n;
    return s;
  }

  // Keeps the partitions whose ranks all satisfy the constraint.
  FamilySpec rank_filtered(RankConstraint rc) const {
    require_partitions("rank filter");
    FamilySpec s(Kind::rank_filtered);
    s.constraint_ = std::move(rc);
    s.base_ = std::make_shared<FamilySpec>(*this);
    return s;
  }

  // Keeps the partitions none of whose parts the predicate forbids.
  FamilySpec parts_filtered(std::function<bool(int)> forbidden) const {
    require_partitions("part filter");
    if (!forbidden)
      throw std::invalid_argument("family: empty part predicate");
    FamilySpec s(Kind::parts_filtered);
    s.forbidden_ = std::move(forbidden);
    s.base_ = std::make_shared<FamilySpec>(*this);
    return s;
  }

  // Keeps the paths whose valley heights all satisfy the constraint.
  FamilySpec valley_filtered(RankConstraint heights) const {
    require_paths("valley filter");
    FamilySpec s(Kind::valley_filtered);
    s.constraint_ = std::move(heights);
    s.base_ = std::make_shared<FamilySpec>(*this);
    return s;
  }

  // Keeps the paths that never go below height ell, or with the complement
  // flag exactly the paths that do.
  FamilySpec above_line(int ell, bool complement = false) const {
    require_paths("line filter");
    FamilySpec s(Kind::above_line);
    s.a_ = ell;
    s.flag_ = complement;
    s.base_ = std::make_shared<FamilySpec>(*this);
    return s;
  }

  bool is_path_family() const {
    return root().kind_ == Kind::paths_in_grid;
  }

 private:
  enum class Kind {
    partitions_in_box,
    partitions_of_n,
    paths_in_grid,
    rank_filtered,
    parts_filtered,
    valley_filtered,
    above_line,
  };

  explicit FamilySpec(Kind k) : kind_(k) {}

  const FamilySpec& root() const {
    const FamilySpec* s = this;
    while (s->base_) s = s->base_.get();
    return *s;
  }

  void require_partitions(const char* what) const {
    if (is_path_family())
      throw std::invalid_argument(std::string("family: ") + what +
                                  " applies to partitions, not paths");
  }

  void require_paths(const char* what) const {
    if (!is_path_family())
      throw std::invalid_argument(std::string("family: ") + what +
                                  " applies to paths, not partitions");
  }

  bool passes(const Partition& p) const {
    for (const FamilySpec* s = this; s->base_; s = s->base_.get()) {
      switch (s->kind_) {
        case Kind::rank_filtered:
          if (!satisfies(p, *s->constraint_)) return false;
          break;
        case Kind::parts_filtered:
          for (int part : p.parts())
            if (s->forbidden_(part)) return false;
          break;
        default:
          break;
      }
    }
    return true;
  }

  bool passes(const StepWord& w) const {
    std::optional<PathProfile> pr;
    for (const FamilySpec* s = this; s->base_; s = s->base_.get()) {
      if (!pr) pr = profile(w);
      switch (s->kind_) {
        case Kind::valley_filtered:
          for (const auto& [x, h] : pr->valleys)
            if (!s->constraint_->contains(h)) return false;
          break;
        case Kind::above_line:
          if ((pr->min_height < s->a_) == !s->flag_) return false;
          break;
        default:
          break;
      }
    }
    return true;
  }

  Kind kind_;
  int a_ = 0;
  int b_ = 0;
  bool flag_ = false;
  std::optional<RankConstraint> constraint_;
  std::function<bool(int)> forbidden_;
  std::shared_ptr<const FamilySpec> base_;

  friend void for_each_partition(const FamilySpec&,
                                 const std::function<void(const Partition&)>&,
                                 long long);
  friend void for_each_path(const FamilySpec&,
                            const std::function<void(const StepWord&)>&,
                            long long);
};

namespace detail {

inline void bump_generated(long long& generated, long long cap) {
  if (++generated > cap)
    throw std::length_error("oracle: enumeration exceeded the cap of " +
                            std::to_string(cap) + " objects");
}

}  // namespace detail

// Visits every partition of the family exactly once, in lexicographic order
// of the descending part lists. The cap counts candidates generated at the
// root, before filtering.
inline void for_each_partition(
    const FamilySpec& spec, const std::function<void(const Partition&)>& fn,
    long long cap = kEnumerationCap) {
  if (spec.is_path_family())
    throw std::invalid_argument("oracle: path family has no partitions");
  const FamilySpec& root = spec.root();
  long long generated = 0;
  std::vector<int> cur;

  auto emit = [&] {
    detail::bump_generated(generated, cap);
    Partition p(cur);
    if (spec.passes(p)) fn(p);
  };

  if (root.kind_ == FamilySpec::Kind::partitions_in_box) {
    int m = root.a_;
    int n = root.b_;
    auto rec = [&](auto&& self) -> void {
      emit();
      if (static_cast<int>(cur.size()) == m) return;
      int hi = cur.empty() ? n : cur.back();
      for (int v = 1; v <= hi; ++v) {
        cur.push_back(v);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    return;
  }

  int N = root.a_;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    int hi = cur.empty() ? remaining : std::min(cur.back(), remaining);
    for (int v = 1; v <= hi; ++v) {
      cur.push_back(v);
      self(self, remaining - v);
      cur.pop_back();
    }
  };
  rec(rec, N);
}

// Path analogue; words are visited in lexicographic order with D < U.
inline void for_each_path(const FamilySpec& spec,
                          const std::function<void(const StepWord&)>& fn,
                          long long cap = kEnumerationCap) {
  if (!spec.is_path_family())
    throw std::invalid_argument("oracle: partition family has no paths");
  const FamilySpec& root = spec.root();
  long long generated = 0;
  StepWord w;
  auto rec = [&](auto&& self, int ups, int downs) -> void {
    if (ups == 0 && downs == 0) {
      detail::bump_generated(generated, cap);
      if (spec.passes(w)) fn(w);
      return;
    }
    if (downs > 0) {
      w.push_back('D');
      self(self, ups, downs - 1);
      w.pop_back();
    }
    if (ups > 0) {
      w.push_back('U');
      self(self, ups - 1, downs);
      w.pop_back();
    }
  };
  rec(rec, root.a_, root.b_);
}

inline std::vector<Partition> enumerate_partitions(
    const FamilySpec& spec, long long cap = kEnumerationCap) {
  std::vector<Partition> out;
  for_each_partition(spec, [&](const Partition& p) { out.push_back(p); }, cap);
  return out;
}

inline std::vector<StepWord> enumerate_paths(const FamilySpec& spec,
                                             long long cap = kEnumerationCap) {
  std::vector<StepWord> out;
  for_each_path(spec, [&](const StepWord& w) { out.push_back(w); }, cap);
  return out;
}

// Which statistic t marks in gf(); q always marks the area of a partition,
// the major index of a path counted by valleys, or the peak major index
// when t marks peaks.
enum class TStat { d, dr, des, hdes, none };

inline QTPoly gf(const FamilySpec& spec, TStat tstat,
                 long long cap = kEnumerationCap) {
  QTPoly out;
  if (spec.is_path_family()) {
    if (tstat == TStat::d || tstat == TStat::dr)
      throw std::invalid_argument("oracle: Durfee statistics need partitions");
    for_each_path(
        spec,
        [&](const StepWord& w) {
          PathProfile pr = profile(w);
          int t = tstat == TStat::des  ? pr.des
                  : tstat == TStat::hdes ? pr.hdes
                                         : 0;
          long long q = tstat == TStat::hdes ? pr.hmaj : pr.maj;
          out.add_term(t, QPoly::monomial(static_cast<int>(q)));
        },
        cap);
    return out;
  }
  if (tstat == TStat::des || tstat == TStat::hdes)
    throw std::invalid_argument("oracle: path statistics need paths");
  for_each_partition(
      spec,
      [&](const Partition& p) {
        Durfee du = durfee(p);
        int t = tstat == TStat::d ? du.d : tstat == TStat::dr ? du.dr : 0;
        out.add_term(t, QPoly::monomial(static_cast<int>(p.area())));
      },
      cap);
  return out;
}

// Trivariate refinement used by the parity study: over all partitions in an
// n x n box for 0 <= n <= D, t marks odd ranks, u marks even ranks, z marks
// the box size n.
inline TruncatedSeries rank_parity_oracle(int D,
                                          long long cap = kEnumerationCap) {
  if (D < 0)
    throw std::invalid_argument("oracle: negative truncation order");
  TruncatedSeries out({"t", "u", "z"}, D);
  for (int n = 0; n <= D; ++n) {
    for_each_partition(
        FamilySpec::partitions_in_box(n, n),
        [&](const Partition& p) {
          int odd = 0;
          int even = 0;
          for (int r : ranks(p)) (r % 2 != 0 ? odd : even) += 1;
          out.add_monomial({odd, even, n}, BigRat(1));
        },
        cap);
  }
  return out;
}

// Counts, among the partitions of N, those whose ranks all lie in the
// interval [2-r, M-r-2] and those with no part congruent to 0, r, or -r
// modulo M. The two counts are conjecturally (and, per the acceptance
// sweep, verifiably) equal.
inline std::pair<long long, long long> andrews_bressoud_counts(int r, int M,
                                                               int N) {
  if (r <= 0 || 2 * r >= M || N < 0)
    throw std::domain_error(
        "andrews_bressoud_counts: needs 0 < r < M/2 and N >= 0");
  int lo = 2 - r;
  int hi = M - r - 2;
  long long rank_side = 0;
  if (lo > hi) {
    rank_side = N == 0 ? 1 : 0;
  } else {
    for_each_partition(
        FamilySpec::partitions_of_n(N).rank_filtered(
            RankConstraint::interval(lo, hi)),
        [&](const Partition&) { ++rank_side; });
  }
  long long part_side = 0;
  for_each_partition(
      FamilySpec::partitions_of_n(N).parts_filtered([r, M](int part) {
        int c = part % M;
        return c == 0 || c == r || c == M - r;
      }),
      [&](const Partition&) { ++part_side; });
  return {rank_side, part_side};
}

namespace detail {

// Lattice points of the boundary path of a partition drawn in a rows x cols
// box (largest part on top, diagram in the upper left), translated by
// (dx, dy). The path runs from (dx, dy) to (cols + dx, rows + dy).
inline std::set<std::pair<int, int>> boundary_vertices(const Partition& p,
                                                       int rows, int cols,
                                                       int dx, int dy) {
  std::set<std::pair<int, int>> verts;
  for (int j = 0; j <= rows; ++j) {
    int y = rows - j;
    int lo = j == rows ? 0 : p.part(j + 1);
    int hi = j == 0 ? cols : p.part(j);
    for (int x = lo; x <= hi; ++x) verts.insert({x + dx, y + dy});
  }
  return verts;
}

}  // namespace detail

// Weight generating function for pairs of boundary paths, the first of a
// partition in an i x (n-i) box from (0,0), the second of a partition in an
// i x (m-i) box translated by (ell,-1), split by whether the two paths share
// a lattice point. The enumeration is checked against the closed products
//   all pairs:          qbin(n,i) qbin(m,i)
//   intersecting pairs: q^ell qbin(m+ell-1,i-1) qbin(n-ell+1,i+1)
// before returning. The second product counts intersecting pairs only when
// m + ell >= n; past that the endpoint-swapped paths it enumerates outnumber
// the intersecting pairs, so those inputs are rejected. With i = 0 both
// paths are disjoint horizontals and no restriction is needed.
inline QPoly lgv_pairs_gf(int m, int n, int ell, int i, bool intersecting) {
  if (m < 0 || n < 0 || ell < 0 || i < 0 || i > std::min(m, n))
    throw std::domain_error(
        "lgv_pairs_gf: needs ell >= 0 and 0 <= i <= min(m,n)");
  if (i > 0 && m + ell < n)
    throw std::domain_error("lgv_pairs_gf: needs m + ell >= n");
  std::vector<Partition> alphas =
      enumerate_partitions(FamilySpec::partitions_in_box(i, n - i));
  std::vector<Partition> betas =
      enumerate_partitions(FamilySpec::partitions_in_box(i, m - i));
  std::vector<std::set<std::pair<int, int>>> beta_verts;
  beta_verts.reserve(betas.size());
  for (const Partition& b : betas)
    beta_verts.push_back(detail::boundary_vertices(b, i, m - i, ell, -1));

  QPoly total;
  QPoly crossing;
  for (const Partition& a : alphas) {
    std::set<std::pair<int, int>> va =
        detail::boundary_vertices(a, i, n - i, 0, 0);
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      bool hit = std::any_of(va.begin(), va.end(), [&](const auto& pt) {
        return beta_verts[bi].count(pt) > 0;
      });
      QPoly w = QPoly::monomial(
          static_cast<int>(a.area() + betas[bi].area()));
      total = total + w;
      if (hit) crossing = crossing + w;
    }
  }

  QPoly want_total = qbinom(n, i) * qbinom(m, i);
  QPoly want_crossing =
      (qbinom(m + ell - 1, i - 1) * qbinom(n - ell + 1, i + 1)).shifted(ell);
  if (total != want_total || crossing != want_crossing)
    throw std::logic_error(
        "lgv_pairs_gf: enumeration disagrees with the closed products");
  return intersecting ? crossing : total - crossing;
}

// Checks the bridge from partitions with every rank zero (the
// self-conjugate ones) in an m x n box: their path images must have all
// valleys at height -1, and the valley positions must run over partitions
// into distinct odd parts at most 2 min(m,n) - 1, bijectively and
// preserving the size.
inline bool self_conjugate_bridge(int m, int n) {
  int k = std::min(m, n);
  bool ok = true;
  long long count = 0;
  std::set<std::vector<int>> images;
  for_each_partition(
      FamilySpec::partitions_in_box(m, n).rank_filtered(
          RankConstraint::finite({0})),
      [&](const Partition& p) {
        ++count;
        StepWord w = phi_inv_of_partition(BoxedPartition(p, m, n));
        PathProfile pr = profile(w);
        std::vector<int> parts;
        long long sum = 0;
        for (const auto& [x, h] : pr.valleys) {
          if (h != -1) ok = false;
          parts.push_back(x);
          sum += x;
        }
        for (std::size_t j = 0; j < parts.size(); ++j) {
          if (parts[j] % 2 == 0 || parts[j] > 2 * k - 1) ok = false;
          if (j > 0 && parts[j] <= parts[j - 1]) ok = false;
        }
        if (sum != p.area()) ok = false;
        images.insert(parts);
      });
  return ok && count == (1LL << k) &&
         static_cast<long long>(images.size()) == count;
}

}  // namespace rankpath
