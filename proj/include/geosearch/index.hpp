// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geosearch/catalog.hpp"
#include "geosearch/text.hpp"

namespace geosearch {

using DocId = std::uint32_t;
using TermId = std::uint32_t;

/// Per-field weights, normalized to sum 1 at construction.
class FieldWeights {
public:
    /// title 0.4, snippet 0.3, description 0.2, item_type 0.1.
    FieldWeights();
    /// Throws ConfigError on negative or all-zero input.
    FieldWeights(double title, double snippet, double description, double item_type);

    double operator[](Field f) const noexcept { return w_[static_cast<std::size_t>(f)]; }

private:
    std::array<double, kFieldCount> w_;
};

struct Posting {
    DocId doc = 0;
    std::vector<std::uint32_t> positions;  // ascending word ordinals

    std::uint32_t tf() const noexcept { return static_cast<std::uint32_t>(positions.size()); }
};

/**
 * Build-once in-memory inverted index over the four text fields of a
 * catalog. Postings are kept per (term, field) and sorted by doc, with
 * word positions so exact phrase occurrences can be counted.
 */
class InvertedIndex {
public:
    InvertedIndex(const Catalog& catalog, AnalyzerConfig analyzer);

    std::size_t n_docs() const noexcept { return ids_.size(); }
    std::size_t n_terms() const noexcept { return terms_.size(); }
    const AnalyzerConfig& analyzer() const noexcept { return analyzer_; }
    const std::string& doc_id(DocId doc) const { return ids_[doc]; }

    std::optional<TermId> term_id(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_[id]; }

    /// Number of items containing the term in any field.
    std::uint32_t doc_freq(std::string_view term) const;
    std::uint32_t doc_freq(TermId id) const { return doc_freq_[id]; }

    std::span<const Posting> postings(TermId id, Field field) const;
    std::span<const Posting> postings(std::string_view term, Field field) const;
    const Posting* find_posting(TermId id, Field field, DocId doc) const;

    std::uint32_t tf(std::string_view term, DocId doc, Field field) const;
    std::uint32_t field_length(DocId doc, Field field) const {
        return field_lengths_[doc][static_cast<std::size_t>(field)];
    }

    /// (term, tf) pairs of one field of one item, ascending term id.
    std::span<const std::pair<TermId, std::uint32_t>> field_terms(DocId doc, Field field) const {
        return forward_[doc][static_cast<std::size_t>(field)];
    }

    /// Occurrences of an analyzed phrase. Token positions give the required
    /// relative offsets, so stopword gaps inside a phrase are honored.
    std::uint32_t match_count(std::span<const Token> phrase, DocId doc, Field field) const;
    /// Analyzes `phrase` with the index analyzer first.
    std::uint32_t match_count(std::string_view phrase, DocId doc, Field field) const;

    /// Items with at least one occurrence of the phrase's first token in any field.
    std::vector<DocId> candidate_docs(std::span<const Token> phrase) const;

private:
    struct TermEntry {
        std::array<std::vector<Posting>, kFieldCount> fields;
    };

    AnalyzerConfig analyzer_;
    std::vector<std::string> ids_;
    std::vector<std::string> terms_;
    std::unordered_map<std::string, TermId> term_ids_;
    std::vector<TermEntry> entries_;
    std::vector<std::uint32_t> doc_freq_;
    std::vector<std::array<std::uint32_t, kFieldCount>> field_lengths_;
    std::vector<std::array<std::vector<std::pair<TermId, std::uint32_t>>, kFieldCount>> forward_;
};

/**
 * Classic Lucene practical scoring, queryNorm omitted:
 *   coord(q,d) * sum_{t in q, f} w_f * sqrt(tf) * idf(t)^2 / sqrt(len(d,f))
 * with idf(t) = 1 + ln(N / (df(t) + 1)). Query tokens count with multiplicity.
 */
double lucene_baseline_score(const InvertedIndex& index, std::span<const Token> query_tokens, DocId doc,
                             const FieldWeights& weights);

struct SearchHit {
    std::string id;
    DocId doc = 0;
    double score = 0.0;
};

/// Top-k items with positive score, descending; ties by ascending id.
std::vector<SearchHit> baseline_search(const InvertedIndex& index, std::string_view query, std::size_t k,
                                       const FieldWeights& weights);

}  // namespace geosearch
