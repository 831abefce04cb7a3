// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/text.hpp"

#include <fstream>

#include "geosearch/error.hpp"

namespace geosearch {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[i] and advances i. Malformed
// sequences consume one byte and yield kInvalid.
char32_t next_code_point(std::string_view text, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
    unsigned char c = byte(i);
    if (c < 0x80) {
        ++i;
        return c;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
        len = 2;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        len = 3;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        len = 4;
        cp = c & 0x07;
    } else {
        ++i;
        return kInvalid;
    }
    if (i + len > text.size()) {
        ++i;
        return kInvalid;
    }
    for (std::size_t k = 1; k < len; ++k) {
        unsigned char cc = byte(i + k);
        if ((cc & 0xC0) != 0x80) {
            ++i;
            return kInvalid;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return kInvalid;
    }
    i += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

constexpr bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

// Letters and digits of the scripts a geoportal catalog realistically
// contains, plus combining marks so decomposed accents stay inside a word.
bool is_word_char(char32_t c) {
    if (c < 0x80) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    }
    if (c == kInvalid) {
        return false;
    }
    return c == 0xAA || c == 0xB5 || c == 0xBA || in(c, 0xC0, 0xD6) || in(c, 0xD8, 0xF6) ||
           in(c, 0xF8, 0x2AF) || in(c, 0x300, 0x36F) || (in(c, 0x370, 0x3FF) && c != 0x37E && c != 0x387) ||
           in(c, 0x400, 0x481) || in(c, 0x48A, 0x52F) || in(c, 0x531, 0x556) || in(c, 0x561, 0x587) ||
           in(c, 0x5D0, 0x5EA) || in(c, 0x620, 0x64A) || in(c, 0x660, 0x669) || in(c, 0x900, 0xDFF) ||
           in(c, 0xE00, 0xE7F) || in(c, 0x1E00, 0x1FFF) || in(c, 0x3040, 0x30FF) || in(c, 0x3400, 0x4DBF) ||
           in(c, 0x4E00, 0x9FFF) || in(c, 0xAC00, 0xD7A3) || in(c, 0xFF10, 0xFF19) || in(c, 0xFF21, 0xFF3A) ||
           in(c, 0xFF41, 0xFF5A);
}

char32_t to_lower(char32_t c) {
    if (c < 0x80) {
        return (c >= 'A' && c <= 'Z') ? c + 32 : c;
    }
    if (in(c, 0xC0, 0xDE) && c != 0xD7) return c + 0x20;
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    if ((in(c, 0x100, 0x137) || in(c, 0x14A, 0x177)) && c % 2 == 0) return c + 1;
    if ((in(c, 0x139, 0x148) || in(c, 0x179, 0x17E)) && c % 2 == 1) return c + 1;
    if (in(c, 0x391, 0x3A9) && c != 0x3A2) return c + 0x20;
    if (c == 0x386) return 0x3AC;
    if (in(c, 0x388, 0x38A)) return c + 0x25;
    if (c == 0x38C) return 0x3CC;
    if (c == 0x38E || c == 0x38F) return c + 0x3F;
    if (in(c, 0x410, 0x42F)) return c + 0x20;
    if (in(c, 0x400, 0x40F)) return c + 0x50;
    if ((in(c, 0x460, 0x481) || in(c, 0x48A, 0x4BF) || in(c, 0x1E00, 0x1E95) || in(c, 0x1EA0, 0x1EFF)) &&
        c % 2 == 0)
        return c + 1;
    if (in(c, 0xFF21, 0xFF3A)) return c + 0x20;
    return c;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string strip_plural(std::string_view w) {
    if (w.size() > 4 && ends_with(w, "ies")) {
        return std::string(w.substr(0, w.size() - 3)) + "y";
    }
    for (std::string_view suffix : {"sses", "shes", "ches", "xes", "zes"}) {
        if (w.size() > suffix.size() + 1 && ends_with(w, suffix)) {
            return std::string(w.substr(0, w.size() - 2));
        }
    }
    if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
        return std::string(w.substr(0, w.size() - 1));
    }
    return std::string(w);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours", "yourself",
        "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself",
        "they", "them", "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that",
        "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has", "had",
        "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because", "as",
        "until", "while", "of", "at", "by", "for", "with", "about", "against", "between", "into", "through",
        "during", "before", "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
        "over", "under", "again", "further", "then", "once", "here", "there", "when", "where", "why", "how",
        "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not",
        "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don", "should",
        "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "couldn", "didn", "doesn", "hadn",
        "hasn", "haven", "isn", "ma", "mightn", "mustn", "needn", "shan", "shouldn", "wasn", "weren", "won",
        "wouldn", "also", "via", "within", "without", "among", "per",
    };
    return words;
}

AnalyzerConfig AnalyzerConfig::english() {
    AnalyzerConfig cfg;
    cfg.stopwords.insert(default_stopwords().begin(), default_stopwords().end());
    return cfg;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        out.insert(to_lower_utf8(line));
    }
    return out;
}

std::unordered_map<std::string, std::string> load_lemma_exceptions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    std::unordered_map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        auto tab = t.find('\t');
        if (tab == std::string::npos) {
            throw FormatError("lemma exception needs 'surface<TAB>lemma'", line_no);
        }
        std::string surface = trim(t.substr(0, tab));
        std::string lemma = trim(t.substr(tab + 1));
        if (surface.empty() || lemma.empty()) {
            throw FormatError("empty lemma exception entry", line_no);
        }
        out[to_lower_utf8(surface)] = to_lower_utf8(lemma);
    }
    return out;
}

std::string to_lower_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t start = i;
        char32_t cp = next_code_point(text, i);
        if (cp == kInvalid) {
            out.append(text.substr(start, i - start));
        } else {
            append_utf8(out, to_lower(cp));
        }
    }
    return out;
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = next_code_point(text, i);
        if (is_word_char(cp)) {
            append_utf8(current, to_lower(cp));
        } else if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        words.push_back(std::move(current));
    }
    return words;
}

std::string normalize_phrase(std::string_view text) {
    std::string out;
    for (const auto& w : split_words(text)) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += w;
    }
    return out;
}

std::string lemmatize(std::string_view word, const AnalyzerConfig& config) {
    if (auto it = config.lemma_exceptions.find(std::string(word)); it != config.lemma_exceptions.end()) {
        return it->second;
    }
    return strip_plural(word);
}

std::optional<std::string> normalize_word(std::string_view word, const AnalyzerConfig& config) {
    std::string w(word);
    if (config.stopwords.contains(w)) {
        return std::nullopt;
    }
    if (config.enable_lemmatization) {
        w = lemmatize(w, config);
        if (w.empty() || config.stopwords.contains(w)) {
            return std::nullopt;
        }
    }
    return w;
}

std::vector<Token> analyze(std::string_view text, const AnalyzerConfig& config) {
    std::vector<Token> tokens;
    auto words = split_words(text);
    for (std::size_t pos = 0; pos < words.size(); ++pos) {
        if (auto w = normalize_word(words[pos], config)) {
            tokens.push_back({std::move(*w), pos});
        }
    }
    return tokens;
}

}  // namespace geosearch
