#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankpath {

/*
 * A step word is a string over {'U','D'} describing a lattice path that
 * starts at the origin: U = (1,1), D = (1,-1). The digit alphabet used for
 * partition boundary words maps onto it by 1 = U, 2 = D, so word statistics
 * (descents, inversions, major index) and path statistics (valleys, minima)
 * are literally the same numbers.
 */
using StepWord = std::string;

inline StepWord parse_step_word(const std::string& text) {
  StepWord w;
  w.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '1':
      case 'U':
      case 'u':
        w.push_back('U');
        break;
      case '2':
      case 'D':
      case 'd':
        w.push_back('D');
        break;
      default:
        throw std::invalid_argument("step word: unexpected character '" +
                                    std::string(1, c) + "'");
    }
  }
  return w;
}

enum class WordAlphabet { ud, digits };

inline std::string format_step_word(const StepWord& w,
                                    WordAlphabet a = WordAlphabet::ud) {
  if (a == WordAlphabet::ud) return w;
  std::string out;
  out.reserve(w.size());
  for (char c : w) out.push_back(c == 'U' ? '1' : '2');
  return out;
}

inline int count_ups(const StepWord& w) {
  return static_cast<int>(std::count(w.begin(), w.end(), 'U'));
}

inline int count_downs(const StepWord& w) {
  return static_cast<int>(std::count(w.begin(), w.end(), 'D'));
}

inline int final_height(const StepWord& w) {
  return count_ups(w) - count_downs(w);
}

struct PathProfile {
  std::vector<std::pair<int, int>> valleys;  // (x, height), left to right
  std::vector<std::pair<int, int>> peaks;
  int min_height = 0;  // over all vertices, the origin included
  int des = 0;
  long long maj = 0;
  int hdes = 0;
  long long hmaj = 0;
  long long inv = 0;
};

/*
 * Positions are 1-based step indices; a valley or peak at x sits between
 * steps x and x+1. A valley is a vertex preceded by D and followed by U; a
 * peak is the opposite. des/maj count and sum valley positions, hdes/hmaj do
 * the same for peaks, and inv counts D-before-U step pairs.
 */
inline PathProfile profile(const StepWord& w) {
  PathProfile p;
  int h = 0;
  long long downs_seen = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'U') {
      ++h;
      p.inv += downs_seen;
    } else {
      --h;
      ++downs_seen;
    }
    p.min_height = std::min(p.min_height, h);
    if (i + 1 < w.size() && w[i] != w[i + 1]) {
      int x = static_cast<int>(i) + 1;
      if (w[i] == 'D')
        p.valleys.emplace_back(x, h);
      else
        p.peaks.emplace_back(x, h);
    }
  }
  p.des = static_cast<int>(p.valleys.size());
  for (const auto& v : p.valleys) p.maj += v.first;
  p.hdes = static_cast<int>(p.peaks.size());
  for (const auto& v : p.peaks) p.hmaj += v.first;
  return p;
}

inline int min_height(const StepWord& w) { return profile(w).min_height; }

struct StepMatching {
  std::vector<std::pair<int, int>> pairs;  // (i, j), i < j, w_i = U, w_j = D
  std::vector<int> unmatched_downs;        // ascending positions
  std::vector<int> unmatched_ups;          // ascending positions
};

/*
 * Parenthesis matching with U as the opener: a single left-to-right stack
 * pass, equivalent to repeatedly removing adjacent UD factors. Every
 * unmatched D precedes every unmatched U; the counts are -min(P) and
 * m - n - min(P). Pairs are listed in order of their closing position.
 */
inline StepMatching match_steps(const StepWord& w) {
  StepMatching m;
  std::vector<int> open;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int pos = static_cast<int>(i) + 1;
    if (w[i] == 'U') {
      open.push_back(pos);
    } else if (!open.empty()) {
      m.pairs.emplace_back(open.back(), pos);
      open.pop_back();
    } else {
      m.unmatched_downs.push_back(pos);
    }
  }
  m.unmatched_ups = std::move(open);
  return m;
}

inline StepWord reflect(const StepWord& w) {
  StepWord out = w;
  for (char& c : out) c = (c == 'U') ? 'D' : 'U';
  return out;
}

/*
 * Bijection from grand Dyck paths whose valleys all lie at height <= -2 onto
 * Dyck paths: reflect across the x-axis, then replace each excursion of the
 * reflected path below the axis (necessarily of the form D^i U^i) with
 * (UD)^i. Does not preserve des or maj.
 */
inline StepWord block_bijection(const StepWord& w) {
  if (count_ups(w) != count_downs(w))
    throw std::domain_error("block_bijection: step counts differ");
  for (const auto& v : profile(w).valleys)
    if (v.second > -2)
      throw std::domain_error("block_bijection: valley above height -2");
  StepWord r = reflect(w);
  StepWord out;
  out.reserve(r.size());
  std::size_t i = 0;
  while (i < r.size()) {
    if (r[i] == 'D') {
      std::size_t j = i;
      int depth = 0;
      do {
        depth += (r[j] == 'U') ? 1 : -1;
        ++j;
      } while (depth != 0);
      std::size_t half = (j - i) / 2;
      assert(r.compare(i, half, std::string(half, 'D')) == 0);
      for (std::size_t k = 0; k < half; ++k) out += "UD";
      i = j;
    } else {
      std::size_t j = i;
      int depth = 0;
      do {
        depth += (r[j] == 'U') ? 1 : -1;
        ++j;
      } while (depth != 0);
      out.append(r, i, j - i);
      i = j;
    }
  }
  return out;
}

}  // namespace rankpath
