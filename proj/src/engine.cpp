// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/engine.hpp"

#include <unordered_set>

#include "geosearch/text.hpp"

namespace geosearch {

Engine::Engine(Catalog catalog, Gazetteer gazetteer, EmbeddingTable table, AnalyzerConfig analyzer,
               SearchSettings settings)
    : catalog_(std::move(catalog)),
      gazetteer_(std::move(gazetteer)),
      table_(std::move(table)),
      index_(catalog_, std::move(analyzer)),
      doc_embeddings_(build_doc_embeddings(table_, index_)),
      settings_(std::move(settings)) {}

SearchContext Engine::context() const {
    return {catalog_, index_, table_, doc_embeddings_, gazetteer_};
}

ParsedQuery Engine::parse(std::string_view q) const {
    return parse_query(q, gazetteer_, index_.analyzer());
}

SemanticResult Engine::search_semantic(std::string_view q, std::size_t k, CandidatePolicy policy) const {
    return semantic_search(context(), parse(q), settings_, k, policy);
}

std::vector<SearchHit> Engine::search_lucene(std::string_view q, std::size_t k) const {
    return baseline_search(index_, q, k, settings_.field_weights);
}

Engine assemble_engine(const EngineConfig& config) {
    config.validate();
    AnalyzerConfig analyzer = AnalyzerConfig::english();
    if (!config.stopwords.empty()) {
        analyzer.stopwords = load_stopwords(config.stopwords);
    }
    if (!config.lemma_exceptions.empty()) {
        analyzer.lemma_exceptions = load_lemma_exceptions(config.lemma_exceptions);
    }
    Catalog catalog = load_catalog(config.catalog);
    Gazetteer gazetteer = load_gazetteer(config.gazetteer);

    std::unordered_set<std::string> filter;
    EmbeddingLoadOptions options;
    if (!config.vocab_filter.empty()) {
        filter = load_vocab_filter(config.vocab_filter);
        options.vocab_filter = &filter;
    }
    EmbeddingTable table = load_embeddings(config.embeddings, options);
    return Engine(std::move(catalog), std::move(gazetteer), std::move(table), std::move(analyzer),
                  config.search_settings());
}

std::vector<RunRanking> run_benchmark(const Engine& engine, std::span<const BenchmarkQuery> queries, std::size_t k) {
    std::vector<RunRanking> runs;
    for (const auto& q : queries) {
        RunRanking semantic{q.id, kSemanticModel, {}};
        for (const auto& hit : engine.search_semantic(q.text, k).hits) {
            semantic.items.push_back(hit.item_id);
        }
        RunRanking lucene{q.id, kLuceneModel, {}};
        for (const auto& hit : engine.search_lucene(q.text, k)) {
            lucene.items.push_back(hit.id);
        }
        runs.push_back(std::move(semantic));
        runs.push_back(std::move(lucene));
    }
    return runs;
}

}  // namespace geosearch
