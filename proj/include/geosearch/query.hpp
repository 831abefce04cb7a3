// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "geosearch/gazetteer.hpp"
#include "geosearch/text.hpp"

namespace geosearch {

struct RecognizedPlace {
    const Place* place = nullptr;
    double weight = 0.0;
    /// The query words that matched, as a normalized phrase.
    std::string matched;
    /// Half-open word range [begin, end) in the raw query.
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct ThematicTerm {
    Token token;
    double weight = 0.0;
};

/**
 * Geo/thematic decomposition of a query. Place weights and thematic
 * weights each sum to 1 when non-empty; no query word is used by both.
 * Place pointers refer into the gazetteer the query was parsed against.
 */
struct ParsedQuery {
    std::string raw;
    std::vector<RecognizedPlace> places;
    std::vector<ThematicTerm> thematic_terms;

    std::vector<Token> thematic_tokens() const;
};

/**
 * Greedy left-to-right longest match of gazetteer aliases over the
 * lowercased query words (stopwords kept while matching; a match made only
 * of stopwords is ignored). Each match takes the first place resolve()
 * returns; a place matched twice is recognized once. Unmatched words go
 * through the analyzer and become thematic terms. Weights are uniform.
 *
 * Throws EmptyQuery when neither places nor thematic terms remain.
 */
ParsedQuery parse_query(std::string_view raw, const Gazetteer& gaz, const AnalyzerConfig& analyzer);

}  // namespace geosearch
