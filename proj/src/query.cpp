// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/query.hpp"

#include <algorithm>

#include "geosearch/error.hpp"

namespace geosearch {

std::vector<Token> ParsedQuery::thematic_tokens() const {
    std::vector<Token> out;
    out.reserve(thematic_terms.size());
    for (const auto& t : thematic_terms) {
        out.push_back(t.token);
    }
    return out;
}

ParsedQuery parse_query(std::string_view raw, const Gazetteer& gaz, const AnalyzerConfig& analyzer) {
    ParsedQuery pq;
    pq.raw = std::string(raw);
    const auto words = split_words(raw);
    const std::size_t max_len = gaz.max_alias_words();

    std::size_t i = 0;
    while (i < words.size()) {
        bool matched = false;
        const std::size_t longest = std::min(max_len, words.size() - i);
        for (std::size_t len = longest; len >= 1 && !matched; --len) {
            bool all_stop = true;
            std::string phrase;
            for (std::size_t j = i; j < i + len; ++j) {
                if (j > i) {
                    phrase.push_back(' ');
                }
                phrase += words[j];
                all_stop = all_stop && analyzer.stopwords.contains(words[j]);
            }
            if (all_stop) {
                continue;
            }
            auto hits = gaz.resolve(phrase);
            if (hits.empty()) {
                continue;
            }
            const Place* place = hits.front();
            const bool seen = std::any_of(pq.places.begin(), pq.places.end(),
                                          [&](const RecognizedPlace& r) { return r.place == place; });
            if (!seen) {
                pq.places.push_back({place, 0.0, phrase, i, i + len});
            }
            i += len;
            matched = true;
        }
        if (!matched) {
            if (auto w = normalize_word(words[i], analyzer)) {
                pq.thematic_terms.push_back({{std::move(*w), i}, 0.0});
            }
            ++i;
        }
    }

    if (pq.places.empty() && pq.thematic_terms.empty()) {
        throw EmptyQuery("query '" + pq.raw + "' has no searchable terms");
    }
    for (auto& p : pq.places) {
        p.weight = 1.0 / static_cast<double>(pq.places.size());
    }
    for (auto& t : pq.thematic_terms) {
        t.weight = 1.0 / static_cast<double>(pq.thematic_terms.size());
    }
    return pq;
}

}  // namespace geosearch
