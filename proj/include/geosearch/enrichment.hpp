// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "geosearch/gazetteer.hpp"

namespace geosearch {

/// Result of enriching one place from a knowledge graph.
struct PlaceEnrichment {
    std::optional<double> lat;
    std::optional<double> lon;
    std::optional<std::string> label;
    std::optional<double> area;
    std::optional<std::string> geonames_id;
};

/// Throws InvalidIri unless `iri` is an absolute IRI usable inside <...>.
void validate_iri(std::string_view iri);

/// SELECT ?place ?lat ?long ?label ?area ?geoid with the coordinate,
/// English label, total area and GeoNames sameAs OPTIONAL blocks, and a
/// VALUES clause binding ?place to `place_iri`.
std::string build_enrichment_query(std::string_view place_iri);

/// Maps the first binding of a SPARQL JSON results document. Throws FormatError.
PlaceEnrichment parse_enrichment_response(std::string_view body);

/// Fills the place's coordinates, area, label alias and geonames id from an
/// enrichment. Coordinates only replace the center when both are present.
void apply_enrichment(Place& place, const PlaceEnrichment& enrichment);

/// Synchronous SPARQL protocol client (HTTP GET, JSON results).
class EnrichmentClient {
public:
    /// endpoint: e.g. "https://dbpedia.org/sparql".
    explicit EnrichmentClient(std::string endpoint,
                              std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

    PlaceEnrichment fetch(std::string_view place_iri) const;

    const std::string& endpoint() const noexcept { return endpoint_; }

private:
    std::string endpoint_;
    std::string origin_;
    std::string path_;
    std::chrono::milliseconds timeout_;
};

}  // namespace geosearch
