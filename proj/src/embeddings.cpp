// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "geosearch/error.hpp"

namespace geosearch {

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dim_(dimension) {
    if (dimension == 0) {
        throw DimensionMismatch("embedding dimension must be positive");
    }
}

void EmbeddingTable::add(std::string word, std::span<const double> vec) {
    if (vec.size() != dim_) {
        throw DimensionMismatch("vector for '" + word + "' has dimension " + std::to_string(vec.size()) +
                                ", table has " + std::to_string(dim_));
    }
    auto [it, inserted] = rows_.emplace(word, words_.size());
    if (!inserted) {
        return;
    }
    words_.push_back(std::move(word));
    data_.insert(data_.end(), vec.begin(), vec.end());
    norms_.push_back(euclidean_norm(vec));
}

bool EmbeddingTable::contains(std::string_view word) const {
    return rows_.contains(std::string(word));
}

std::span<const double> EmbeddingTable::vector(std::string_view word) const {
    auto it = rows_.find(std::string(word));
    if (it == rows_.end()) {
        return {};
    }
    return vector_at(it->second);
}

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            parts.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return parts;
}

bool parse_double(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

EmbeddingTable load_embeddings(const std::filesystem::path& path, const EmbeddingLoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    std::optional<EmbeddingTable> table;
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        auto parts = split_spaces(line);
        if (parts.empty()) {
            continue;
        }
        const std::size_t dim = parts.size() - 1;
        if (!table) {
            if (dim == 0) {
                throw FormatError("first embedding line has no vector", line_no);
            }
            table.emplace(dim);
        }
        if (dim != table->dimension()) {
            if (options.strict) {
                throw FormatError("expected " + std::to_string(table->dimension()) + " components, got " +
                                      std::to_string(dim),
                                  line_no);
            }
            continue;
        }
        values.resize(dim);
        bool ok = true;
        for (std::size_t i = 0; i < dim && ok; ++i) {
            ok = parse_double(parts[i + 1], values[i]);
        }
        if (!ok) {
            if (options.strict) {
                throw FormatError("non-numeric vector component", line_no);
            }
            continue;
        }
        std::string word = to_lower_utf8(parts[0]);
        if (options.vocab_filter && !options.vocab_filter->contains(word)) {
            continue;
        }
        table->add(std::move(word), values);
    }
    if (!table || table->empty()) {
        throw EmptyTable("no embeddings loaded from '" + path.string() + "'");
    }
    return std::move(*table);
}

std::unordered_set<std::string> load_vocab_filter(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto parts = split_spaces(line);
        if (!parts.empty()) {
            words.insert(to_lower_utf8(parts[0]));
        }
    }
    return words;
}

double dot(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("dot product of vectors with dimensions " + std::to_string(u.size()) + " and " +
                                std::to_string(v.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += u[i] * v[i];
    }
    return s;
}

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

double cosine(std::span<const double> u, std::span<const double> v) {
    double d = dot(u, v);
    double nu = euclidean_norm(u);
    double nv = euclidean_norm(v);
    if (nu == 0.0 || nv == 0.0) {
        return 0.0;
    }
    return std::clamp(d / (nu * nv), -1.0, 1.0);
}

std::vector<Neighbor> neighbors(const EmbeddingTable& table, std::string_view term, std::size_t k, double min_cos) {
    std::vector<Neighbor> out;
    auto query = table.vector(term);
    if (k == 0 || query.empty()) {
        return out;
    }
    const double qn = euclidean_norm(query);
    for (std::size_t row = 0; row < table.size(); ++row) {
        if (table.word_at(row) == term) {
            continue;
        }
        double c = 0.0;
        if (qn > 0.0 && table.norm_at(row) > 0.0) {
            c = std::clamp(dot(query, table.vector_at(row)) / (qn * table.norm_at(row)), -1.0, 1.0);
        }
        if (c >= min_cos) {
            out.push_back({table.word_at(row), c});
        }
    }
    auto by_rank = [](const Neighbor& a, const Neighbor& b) {
        if (a.cosine != b.cosine) {
            return a.cosine > b.cosine;
        }
        return a.word < b.word;
    };
    if (out.size() > k) {
        std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), out.end(), by_rank);
        out.resize(k);
    } else {
        std::sort(out.begin(), out.end(), by_rank);
    }
    return out;
}

Vector query_embedding(const EmbeddingTable& table, std::span<const Token> thematic_tokens) {
    Vector sum(table.dimension(), 0.0);
    for (const auto& tok : thematic_tokens) {
        auto v = table.vector(tok.surface);
        for (std::size_t i = 0; i < v.size(); ++i) {
            sum[i] += v[i];
        }
    }
    return sum;
}

DocEmbedding doc_embedding(const EmbeddingTable& table, const InvertedIndex& index, DocId doc) {
    DocEmbedding out{index.doc_id(doc), Vector(table.dimension(), 0.0), 0.0};
    std::map<std::string_view, std::uint32_t> tf;
    for (Field f : {Field::title, Field::snippet, Field::description}) {
        for (auto [tid, count] : index.field_terms(doc, f)) {
            tf[index.term(tid)] += count;
        }
    }
    const double n = static_cast<double>(index.n_docs());
    for (auto [term, count] : tf) {
        auto v = table.vector(term);
        if (v.empty()) {
            continue;
        }
        const double df = static_cast<double>(index.doc_freq(term));
        const double w = static_cast<double>(count) * (std::log((1.0 + n) / (1.0 + df)) + 1.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.vector[i] += w * v[i];
        }
    }
    out.norm = euclidean_norm(out.vector);
    return out;
}

std::vector<DocEmbedding> build_doc_embeddings(const EmbeddingTable& table, const InvertedIndex& index) {
    std::vector<DocEmbedding> out;
    out.reserve(index.n_docs());
    for (std::size_t d = 0; d < index.n_docs(); ++d) {
        out.push_back(doc_embedding(table, index, static_cast<DocId>(d)));
    }
    return out;
}

}  // namespace geosearch
