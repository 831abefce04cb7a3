// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "geosearch/engine.hpp"

namespace geosearch {

struct ApiResponse {
    int status = 200;
    std::string body;  // application/json
};

using ApiParams = std::map<std::string, std::string>;

inline constexpr std::size_t kDefaultResultCount = 10;
inline constexpr std::size_t kMaxResultCount = 100;

/**
 * Transport-independent handlers. Bodies are deterministic: fixed key order
 * and every real rounded to six decimals. Client errors give 400 with
 * {"error": message}; unexpected failures give 500 with a generic message
 * and the detail on stderr.
 */

/// Params q, model (semantic | lucene, default semantic), k (default 10).
/// Body: JSON array of results. For the semantic model each result carries
/// a breakdown whose lambda-weighted normalized components sum to `score`.
ApiResponse handle_search(const Engine& engine, const ApiParams& params);

/// Params q, k (default 10). Body: recognized places, thematic terms, both
/// expansions, effective lambdas, kernels, and per-item explanations for
/// the top-k semantic results.
ApiResponse handle_explain(const Engine& engine, const ApiParams& params);

/// 404 when the id is unknown.
ApiResponse handle_item(const Engine& engine, std::string_view id);

ApiResponse handle_health(const Engine& engine);

/// Rounds to six decimals; -0 becomes 0.
double round6(double v);

}  // namespace geosearch
