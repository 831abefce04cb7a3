// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "geosearch/index.hpp"
#include "geosearch/text.hpp"

namespace geosearch {

using Vector = std::vector<double>;

/// Immutable word -> vector table with a single dimension.
class EmbeddingTable {
public:
    explicit EmbeddingTable(std::size_t dimension);

    /// Throws DimensionMismatch on wrong length; duplicate words keep the first vector.
    void add(std::string word, std::span<const double> vec);

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }
    bool contains(std::string_view word) const;

    /// Empty span when out of vocabulary.
    std::span<const double> vector(std::string_view word) const;
    std::span<const double> vector_at(std::size_t row) const { return {data_.data() + row * dim_, dim_}; }
    double norm_at(std::size_t row) const { return norms_[row]; }
    const std::string& word_at(std::size_t row) const { return words_[row]; }

private:
    std::size_t dim_;
    std::vector<std::string> words_;
    std::vector<double> data_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> rows_;
};

struct EmbeddingLoadOptions {
    bool strict = true;
    const std::unordered_set<std::string>* vocab_filter = nullptr;
};

/**
 * GloVe text format ("word v1 ... vD"). Dimension comes from the first
 * non-empty line. Words are lowercased. Throws IoError, FormatError(line)
 * for malformed lines in strict mode, EmptyTable when nothing loads.
 */
EmbeddingTable load_embeddings(const std::filesystem::path& path, const EmbeddingLoadOptions& options = {});

/// One word per line.
std::unordered_set<std::string> load_vocab_filter(const std::filesystem::path& path);

double dot(std::span<const double> u, std::span<const double> v);
double euclidean_norm(std::span<const double> v);

/// u.v / (|u||v|), 0 when either norm is 0. Throws DimensionMismatch.
double cosine(std::span<const double> u, std::span<const double> v);

struct Neighbor {
    std::string word;
    double cosine = 0.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exhaustive scan: up to k words other than `term` with cosine >= min_cos,
/// descending cosine, ties by word.
std::vector<Neighbor> neighbors(const EmbeddingTable& table, std::string_view term, std::size_t k, double min_cos);

/// Sum of the in-vocabulary token vectors, with multiplicity.
Vector query_embedding(const EmbeddingTable& table, std::span<const Token> thematic_tokens);

struct DocEmbedding {
    std::string item_id;
    Vector vector;
    double norm = 0.0;
};

/**
 * TF-IDF weighted sum over distinct in-vocabulary terms of title, snippet
 * and description: weight(t) = tf(t) * (ln((1 + N) / (1 + df(t))) + 1).
 * Terms are visited in ascending lexicographic order.
 */
DocEmbedding doc_embedding(const EmbeddingTable& table, const InvertedIndex& index, DocId doc);

std::vector<DocEmbedding> build_doc_embeddings(const EmbeddingTable& table, const InvertedIndex& index);

}  // namespace geosearch
