// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors
//
// Reference BLEU written straight from the modified-precision definition:
// every n-gram is compared position by position, no hashing, no maps.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

inline bool same_ngram(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (a[i + k] != b[j + k]) return false;
  }
  return true;
}

inline std::size_t occurrences(const Tokens& seq, const Tokens& src, std::size_t at, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t j = 0; j + n <= seq.size(); ++j) count += same_ngram(src, at, seq, j, n) ? 1 : 0;
  return count;
}

inline double bleu(const Tokens& cand, const Tokens& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  const std::size_t max_n = std::min<std::size_t>({4, cand.size(), ref.size()});
  double product = 1.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::size_t positions = cand.size() - n + 1;
    double clipped = 0.0;
    for (std::size_t i = 0; i < positions; ++i) {
      // Count each distinct n-gram once: only at its first position.
      bool first = true;
      for (std::size_t p = 0; p < i; ++p) {
        if (same_ngram(cand, p, cand, i, n)) {
          first = false;
          break;
        }
      }
      if (!first) continue;
      clipped += static_cast<double>(std::min(occurrences(cand, cand, i, n), occurrences(ref, cand, i, n)));
    }
    if (clipped == 0.0) return 0.0;
    product *= clipped / static_cast<double>(positions);
  }
  const double geo = std::pow(product, 1.0 / static_cast<double>(max_n));
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * geo;
}

}  // namespace oracle
