// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "geosearch/expansion.hpp"
#include "geosearch/index.hpp"
#include "geosearch/scoring.hpp"

namespace geosearch {

/// Every tunable of the engine. Config file keys are the field names.
struct EngineConfig {
    std::filesystem::path catalog;
    std::filesystem::path gazetteer;
    std::filesystem::path embeddings;
    std::filesystem::path stopwords;         // empty: bundled list
    std::filesystem::path lemma_exceptions;  // optional
    std::filesystem::path vocab_filter;      // optional

    double weight_title = 0.4;
    double weight_snippet = 0.3;
    double weight_description = 0.2;
    double weight_item_type = 0.1;

    double lambda_platial = 0.25;
    double lambda_spatial = 0.25;
    double lambda_concept = 0.25;
    double lambda_doc = 0.25;

    std::size_t k_subdiv = 10;
    double self_mass = 0.5;
    std::size_t k_neighbors = 5;
    double min_cos = 0.4;
    bool subdivision_aliases = false;
    double bandwidth_scale = 1.0;
    double default_radius_km = kDefaultRadiusKm;
    std::size_t candidate_pool = 200;

    std::string host = "127.0.0.1";
    std::uint16_t port = 8080;
    std::string cors_origin = "*";

    FieldWeights field_weights() const;
    Lambdas lambdas() const;
    SearchSettings search_settings() const;

    /// Throws ConfigError on negative weights, all-zero weight groups,
    /// self_mass outside (0, 1], non-positive kernel parameters, or missing
    /// required paths.
    void validate() const;
};

/**
 * Flat "key = value" lines; '#' starts a comment. Relative paths resolve
 * against `base_dir`. Unknown keys, repeated keys and malformed values throw
 * ConfigError. The result is validated.
 */
EngineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
/// Reads the file and resolves paths against its directory.
EngineConfig load_config(const std::filesystem::path& path);

}  // namespace geosearch
