// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "geosearch/error.hpp"

namespace geosearch {

FieldWeights::FieldWeights() : FieldWeights(0.4, 0.3, 0.2, 0.1) {}

FieldWeights::FieldWeights(double title, double snippet, double description, double item_type)
    : w_{title, snippet, description, item_type} {
    double sum = 0.0;
    for (double w : w_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("field weights must be finite and non-negative");
        }
        sum += w;
    }
    if (sum <= 0.0) {
        throw ConfigError("field weights must not all be zero");
    }
    for (double& w : w_) {
        w /= sum;
    }
}

InvertedIndex::InvertedIndex(const Catalog& catalog, AnalyzerConfig analyzer) : analyzer_(std::move(analyzer)) {
    const std::size_t n = catalog.size();
    ids_.reserve(n);
    field_lengths_.resize(n);
    forward_.resize(n);

    for (std::size_t ord = 0; ord < n; ++ord) {
        const auto& item = catalog[ord];
        const auto doc = static_cast<DocId>(ord);
        ids_.push_back(item.id);
        std::vector<TermId> seen;
        for (Field f : kAllFields) {
            const auto fi = static_cast<std::size_t>(f);
            auto tokens = analyze(item_field_text(item, f), analyzer_);
            field_lengths_[ord][fi] = static_cast<std::uint32_t>(tokens.size());

            std::map<TermId, std::vector<std::uint32_t>> local;
            for (const auto& tok : tokens) {
                auto [it, inserted] = term_ids_.emplace(tok.surface, static_cast<TermId>(terms_.size()));
                if (inserted) {
                    terms_.push_back(tok.surface);
                    entries_.emplace_back();
                    doc_freq_.push_back(0);
                }
                local[it->second].push_back(static_cast<std::uint32_t>(tok.position));
            }
            auto& fwd = forward_[ord][fi];
            for (auto& [tid, positions] : local) {
                fwd.emplace_back(tid, static_cast<std::uint32_t>(positions.size()));
                entries_[tid].fields[fi].push_back({doc, std::move(positions)});
                seen.push_back(tid);
            }
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (TermId tid : seen) {
            ++doc_freq_[tid];
        }
    }
}

std::optional<TermId> InvertedIndex::term_id(std::string_view term) const {
    auto it = term_ids_.find(std::string(term));
    if (it == term_ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::uint32_t InvertedIndex::doc_freq(std::string_view term) const {
    auto id = term_id(term);
    return id ? doc_freq_[*id] : 0;
}

std::span<const Posting> InvertedIndex::postings(TermId id, Field field) const {
    return entries_[id].fields[static_cast<std::size_t>(field)];
}

std::span<const Posting> InvertedIndex::postings(std::string_view term, Field field) const {
    auto id = term_id(term);
    if (!id) {
        return {};
    }
    return postings(*id, field);
}

const Posting* InvertedIndex::find_posting(TermId id, Field field, DocId doc) const {
    auto list = postings(id, field);
    auto it = std::lower_bound(list.begin(), list.end(), doc,
                               [](const Posting& p, DocId d) { return p.doc < d; });
    if (it == list.end() || it->doc != doc) {
        return nullptr;
    }
    return &*it;
}

std::uint32_t InvertedIndex::tf(std::string_view term, DocId doc, Field field) const {
    auto id = term_id(term);
    if (!id) {
        return 0;
    }
    const Posting* p = find_posting(*id, field, doc);
    return p ? p->tf() : 0;
}

std::uint32_t InvertedIndex::match_count(std::span<const Token> phrase, DocId doc, Field field) const {
    if (phrase.empty() || doc >= n_docs()) {
        return 0;
    }
    std::vector<const Posting*> lists;
    lists.reserve(phrase.size());
    for (const auto& tok : phrase) {
        auto id = term_id(tok.surface);
        if (!id) {
            return 0;
        }
        const Posting* p = find_posting(*id, field, doc);
        if (!p) {
            return 0;
        }
        lists.push_back(p);
    }
    if (phrase.size() == 1) {
        return lists.front()->tf();
    }
    std::uint32_t count = 0;
    const std::size_t base = phrase.front().position;
    for (std::uint32_t start : lists.front()->positions) {
        bool all = true;
        for (std::size_t j = 1; j < phrase.size() && all; ++j) {
            const auto want = static_cast<std::uint32_t>(start + (phrase[j].position - base));
            const auto& pos = lists[j]->positions;
            all = std::binary_search(pos.begin(), pos.end(), want);
        }
        count += all ? 1 : 0;
    }
    return count;
}

std::uint32_t InvertedIndex::match_count(std::string_view phrase, DocId doc, Field field) const {
    auto tokens = analyze(phrase, analyzer_);
    return match_count(tokens, doc, field);
}

std::vector<DocId> InvertedIndex::candidate_docs(std::span<const Token> phrase) const {
    std::vector<DocId> docs;
    if (phrase.empty()) {
        return docs;
    }
    auto id = term_id(phrase.front().surface);
    if (!id) {
        return docs;
    }
    for (Field f : kAllFields) {
        for (const auto& p : postings(*id, f)) {
            docs.push_back(p.doc);
        }
    }
    std::sort(docs.begin(), docs.end());
    docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
    return docs;
}

double lucene_baseline_score(const InvertedIndex& index, std::span<const Token> query_tokens, DocId doc,
                             const FieldWeights& weights) {
    if (query_tokens.empty() || doc >= index.n_docs()) {
        return 0.0;
    }
    const double n = static_cast<double>(index.n_docs());
    std::size_t matched = 0;
    double sum = 0.0;
    for (const auto& tok : query_tokens) {
        auto id = index.term_id(tok.surface);
        if (!id) {
            continue;
        }
        const double idf = 1.0 + std::log(n / (static_cast<double>(index.doc_freq(*id)) + 1.0));
        bool any = false;
        for (Field f : kAllFields) {
            const Posting* p = index.find_posting(*id, f, doc);
            if (!p) {
                continue;
            }
            any = true;
            const double norm = 1.0 / std::sqrt(static_cast<double>(index.field_length(doc, f)));
            sum += weights[f] * std::sqrt(static_cast<double>(p->tf())) * idf * idf * norm;
        }
        matched += any ? 1 : 0;
    }
    if (matched == 0) {
        return 0.0;
    }
    const double coord = static_cast<double>(matched) / static_cast<double>(query_tokens.size());
    return coord * sum;
}

std::vector<SearchHit> baseline_search(const InvertedIndex& index, std::string_view query, std::size_t k,
                                       const FieldWeights& weights) {
    std::vector<SearchHit> hits;
    auto tokens = analyze(query, index.analyzer());
    if (tokens.empty() || k == 0) {
        return hits;
    }
    std::vector<DocId> candidates;
    for (const auto& tok : tokens) {
        auto docs = index.candidate_docs(std::span<const Token>(&tok, 1));
        candidates.insert(candidates.end(), docs.begin(), docs.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (DocId doc : candidates) {
        double s = lucene_baseline_score(index, tokens, doc, weights);
        if (s > 0.0) {
            hits.push_back({index.doc_id(doc), doc, s});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.id < b.id;
    });
    if (hits.size() > k) {
        hits.resize(k);
    }
    return hits;
}

}  // namespace geosearch
