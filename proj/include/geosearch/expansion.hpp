// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "geosearch/embeddings.hpp"
#include "geosearch/gazetteer.hpp"
#include "geosearch/query.hpp"

namespace geosearch {

enum class TermKind { self, subdivision };

struct PlatialTerm {
    std::string place_id;
    /// Normalized phrases counted for this term; the first is the canonical name.
    std::vector<std::string> phrases;
    double weight = 0.0;
    TermKind kind = TermKind::self;

    const std::string& phrase() const { return phrases.front(); }
};

struct PlatialExpansion {
    const Place* source = nullptr;
    std::vector<PlatialTerm> terms;
};

struct ThematicTermWeight {
    std::string word;
    double weight = 0.0;
    double cosine = 0.0;
};

struct ThematicExpansion {
    Token source;
    std::vector<ThematicTermWeight> terms;
};

struct ExpansionSettings {
    std::size_t k_subdiv = 10;
    double self_mass = 0.5;
    std::size_t k_neighbors = 5;
    double min_cos = 0.4;
    /// Count every alias of a subdivision, not just its canonical name.
    bool subdivision_aliases = false;
};

/**
 * The place itself carries `self_mass`, its top-k subdivisions split the
 * rest uniformly. A leaf place (or self_mass == 1) carries weight 1 alone.
 * Throws std::invalid_argument unless self_mass is in (0, 1].
 */
PlatialExpansion expand_place(const Place& place, const Gazetteer& gaz, std::size_t k_subdiv, double self_mass,
                              bool subdivision_aliases = false);

/// Weights cos / (1 + sum of neighbor cosines), the source counted with
/// cosine 1. Neighbors with non-positive cosine or equal to the source are
/// dropped. Output is sorted by weight descending, then word.
ThematicExpansion thematic_weights(const Token& source, std::span<const Neighbor> neighbor_list);

ThematicExpansion expand_term(const Token& term, const EmbeddingTable& table, std::size_t k_neighbors,
                              double min_cos);

struct QueryExpansion {
    std::vector<PlatialExpansion> platial;    // parallel to ParsedQuery::places
    std::vector<ThematicExpansion> thematic;  // parallel to ParsedQuery::thematic_terms
};

QueryExpansion expand_query(const ParsedQuery& pq, const Gazetteer& gaz, const EmbeddingTable& table,
                            const ExpansionSettings& settings);

}  // namespace geosearch
