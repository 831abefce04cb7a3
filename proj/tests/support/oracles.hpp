// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

// Reference implementations for tests. Everything here recomputes from raw
// catalog text with plain loops and never reads index postings.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geosearch/catalog.hpp"
#include "geosearch/embeddings.hpp"
#include "geosearch/expansion.hpp"
#include "geosearch/gazetteer.hpp"
#include "geosearch/index.hpp"
#include "geosearch/query.hpp"
#include "geosearch/text.hpp"

namespace geosearch::oracle {

/// Occurrences of `phrase` in `text`, both analyzed, matching the phrase's
/// relative word offsets.
std::uint32_t count_phrase(std::string_view text, std::string_view phrase, const AnalyzerConfig& analyzer);

double platial(const ParsedQuery& pq, const QueryExpansion& ex, const Catalog& catalog, std::size_t ordinal,
               const AnalyzerConfig& analyzer, const FieldWeights& wf);

double concept_score(const ParsedQuery& pq, const QueryExpansion& ex, const Catalog& catalog, std::size_t ordinal,
                     const AnalyzerConfig& analyzer, const FieldWeights& wf);

/// Number of items with the analyzed term in any field.
std::size_t doc_freq(const Catalog& catalog, const std::string& term, const AnalyzerConfig& analyzer);

Vector doc_vector(const Catalog& catalog, std::size_t ordinal, const EmbeddingTable& table,
                  const AnalyzerConfig& analyzer);

double lucene(const Catalog& catalog, std::string_view query, std::size_t ordinal, const AnalyzerConfig& analyzer,
              const FieldWeights& wf);

struct Scored {
    std::string id;
    double score = 0.0;
};

/// All positive scores, descending, ties by id, first k.
std::vector<Scored> lucene_ranking(const Catalog& catalog, std::string_view query, std::size_t k,
                                   const AnalyzerConfig& analyzer, const FieldWeights& wf);

/// Grade column, discount column, product column, then the column total.
double dcg_spreadsheet(std::span<const double> rels, std::size_t k);

/// Random corpus over a small vocabulary mixing fixture place names,
/// stopwords and embedding words.
struct RandomWorld {
    Catalog catalog;
    EmbeddingTable table{6};
    std::vector<std::string> queries;
};

RandomWorld random_world(std::mt19937_64& rng, std::size_t max_items = 30, std::size_t n_queries = 5,
                         std::size_t max_query_words = 8);

/// Fixture directory (data/fixture) and benchmark directory.
std::string fixture_path(std::string_view file);
std::string benchmark_path(std::string_view file);
const Gazetteer& fixture_gazetteer();

/// Writes `content` to a fresh file under the system temp directory.
std::string write_temp(std::string_view name, std::string_view content);

}  // namespace geosearch::oracle
