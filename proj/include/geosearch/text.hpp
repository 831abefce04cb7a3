// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace geosearch {

struct Token {
    std::string surface;
    /// Ordinal of the source word before stopword removal.
    std::size_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

struct AnalyzerConfig {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, std::string> lemma_exceptions;
    bool enable_lemmatization = true;

    /// Bundled English stopword list, no lemma exceptions.
    static AnalyzerConfig english();
};

/// The bundled English stopword list, in file order.
const std::vector<std::string>& default_stopwords();

/// One entry per line; blank lines and '#' comments ignored; entries lowercased.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);
/// "surface<TAB>lemma" per line; both sides lowercased.
std::unordered_map<std::string, std::string> load_lemma_exceptions(const std::filesystem::path& path);

/// Maximal runs of letters/digits, lowercased. No filtering.
std::vector<std::string> split_words(std::string_view text);

/// split_words joined by single spaces: the key form used for place names.
std::string normalize_phrase(std::string_view text);

std::string to_lower_utf8(std::string_view text);

/// Exception lookup, then English plural stripping.
std::string lemmatize(std::string_view word, const AnalyzerConfig& config);

/// Pipeline for one lowercased word; nullopt when the word is a stopword
/// (either as written or after lemmatization).
std::optional<std::string> normalize_word(std::string_view word, const AnalyzerConfig& config);

std::vector<Token> analyze(std::string_view text, const AnalyzerConfig& config);

}  // namespace geosearch
