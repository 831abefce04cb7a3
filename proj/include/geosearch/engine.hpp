// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "geosearch/catalog.hpp"
#include "geosearch/config.hpp"
#include "geosearch/embeddings.hpp"
#include "geosearch/eval.hpp"
#include "geosearch/gazetteer.hpp"
#include "geosearch/index.hpp"
#include "geosearch/query.hpp"
#include "geosearch/scoring.hpp"

namespace geosearch {

/// Immutable search state. Safe to share across threads once built.
class Engine {
public:
    Engine(Catalog catalog, Gazetteer gazetteer, EmbeddingTable table, AnalyzerConfig analyzer,
           SearchSettings settings);

    const Catalog& catalog() const noexcept { return catalog_; }
    const Gazetteer& gazetteer() const noexcept { return gazetteer_; }
    const EmbeddingTable& table() const noexcept { return table_; }
    const InvertedIndex& index() const noexcept { return index_; }
    const std::vector<DocEmbedding>& doc_embeddings() const noexcept { return doc_embeddings_; }
    const SearchSettings& settings() const noexcept { return settings_; }
    SearchContext context() const;

    /// Throws EmptyQuery.
    ParsedQuery parse(std::string_view q) const;
    SemanticResult search_semantic(std::string_view q, std::size_t k,
                                   CandidatePolicy policy = CandidatePolicy::pooled) const;
    std::vector<SearchHit> search_lucene(std::string_view q, std::size_t k) const;

private:
    Catalog catalog_;
    Gazetteer gazetteer_;
    EmbeddingTable table_;
    InvertedIndex index_;
    std::vector<DocEmbedding> doc_embeddings_;
    SearchSettings settings_;
};

/// Loads every input named by the config. Load errors propagate unchanged
/// (IoError carries the failing path).
Engine assemble_engine(const EngineConfig& config);

inline constexpr const char* kSemanticModel = "semantic";
inline constexpr const char* kLuceneModel = "lucene";

/// Top-k rankings of both models for every query, semantic first per query.
std::vector<RunRanking> run_benchmark(const Engine& engine, std::span<const BenchmarkQuery> queries, std::size_t k);

}  // namespace geosearch
