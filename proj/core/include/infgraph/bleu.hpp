// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The infgraph Authors

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infgraph {

/// Sentence BLEU on a 0..100 scale.
///
/// Clipped n-gram precisions are combined by an unweighted geometric mean
/// up to order min(4, |candidate|, |reference|), times the brevity penalty
/// exp(1 - r/c) when the candidate is shorter. The order cap (instead of
/// smoothing) makes a one-token exact match score 100. Any zero precision,
/// and an empty candidate or reference, gives 0.
double bleu(std::span<const std::string> candidate, std::span<const std::string> reference);

/// Node-label tokens: role prefix stripped, lowercased, whitespace split,
/// with [OR] / [AND] kept as standalone tokens.
std::vector<std::string> tokenize_label(std::string_view label);

}  // namespace infgraph
