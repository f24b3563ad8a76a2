// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#include "infgraph/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "infgraph/graph.hpp"
#include "infgraph/text.hpp"

namespace infgraph {
namespace {

using Ngram = std::vector<std::string_view>;

std::map<Ngram, std::size_t> count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    Ngram g(tokens.begin() + static_cast<std::ptrdiff_t>(i),
            tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[g];
  }
  return counts;
}

}  // namespace

double bleu(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const std::size_t c = candidate.size();
  const std::size_t r = reference.size();
  const std::size_t max_order = std::min<std::size_t>({4, c, r});
  if (max_order == 0) return 0.0;

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_order; ++n) {
    const auto cand = count_ngrams(candidate, n);
    const auto ref = count_ngrams(reference, n);
    std::size_t matched = 0;
    for (const auto& [gram, count] : cand) {
      if (auto it = ref.find(gram); it != ref.end()) matched += std::min(count, it->second);
    }
    if (matched == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) / static_cast<double>(c - n + 1));
  }
  const double brevity =
      c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return 100.0 * brevity * std::exp(log_sum / static_cast<double>(max_order));
}

std::vector<std::string> tokenize_label(std::string_view label) {
  std::vector<std::string> out;
  for (auto& word : text::split_whitespace(text::to_lower(strip_role_prefix(label)))) {
    // Split off conjunction markers glued to neighbouring words.
    std::string_view rest = word;
    while (!rest.empty()) {
      std::size_t at = std::string_view::npos;
      std::string_view marker;
      for (std::string_view m : {std::string_view("[or]"), std::string_view("[and]")}) {
        const std::size_t p = rest.find(m);
        if (p < at) {
          at = p;
          marker = m;
        }
      }
      if (at == std::string_view::npos) {
        out.emplace_back(rest);
        break;
      }
      if (at > 0) out.emplace_back(rest.substr(0, at));
      out.emplace_back(marker == "[or]" ? "[OR]" : "[AND]");
      rest.remove_prefix(at + marker.size());
    }
  }
  return out;
}

}  // namespace infgraph
