// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <map>
#include <set>

namespace geosearch::oracle {

std::uint32_t count_phrase(std::string_view text, std::string_view phrase, const AnalyzerConfig& analyzer) {
    const auto doc = analyze(text, analyzer);
    const auto pat = analyze(phrase, analyzer);
    if (pat.empty()) {
        return 0;
    }
    std::map<std::size_t, std::string> at;
    for (const auto& t : doc) {
        at[t.position] = t.surface;
    }
    std::uint32_t n = 0;
    for (const auto& start : doc) {
        bool ok = true;
        for (const auto& p : pat) {
            auto it = at.find(start.position + (p.position - pat[0].position));
            if (it == at.end() || it->second != p.surface) {
                ok = false;
                break;
            }
        }
        n += ok ? 1 : 0;
    }
    return n;
}

namespace {

double fields_weighted(const CatalogItem& item, std::string_view phrase, const AnalyzerConfig& analyzer,
                       const FieldWeights& wf) {
    double s = 0.0;
    for (Field f : kAllFields) {
        s += wf[f] * count_phrase(item_field_text(item, f), phrase, analyzer);
    }
    return s;
}

}  // namespace

double platial(const ParsedQuery& pq, const QueryExpansion& ex, const Catalog& catalog, std::size_t ordinal,
               const AnalyzerConfig& analyzer, const FieldWeights& wf) {
    double total = 0.0;
    for (std::size_t i = 0; i < pq.places.size(); ++i) {
        double inner = 0.0;
        for (const auto& term : ex.platial[i].terms) {
            for (const auto& phrase : term.phrases) {
                inner += term.weight * fields_weighted(catalog[ordinal], phrase, analyzer, wf);
            }
        }
        total += pq.places[i].weight * inner;
    }
    return total;
}

double concept_score(const ParsedQuery& pq, const QueryExpansion& ex, const Catalog& catalog, std::size_t ordinal,
                     const AnalyzerConfig& analyzer, const FieldWeights& wf) {
    double total = 0.0;
    for (std::size_t i = 0; i < pq.thematic_terms.size(); ++i) {
        double inner = 0.0;
        for (const auto& term : ex.thematic[i].terms) {
            inner += term.weight * fields_weighted(catalog[ordinal], term.word, analyzer, wf);
        }
        total += pq.thematic_terms[i].weight * inner;
    }
    return total;
}

std::size_t doc_freq(const Catalog& catalog, const std::string& term, const AnalyzerConfig& analyzer) {
    std::size_t df = 0;
    for (const auto& item : catalog.items()) {
        bool found = false;
        for (Field f : kAllFields) {
            for (const auto& t : analyze(item_field_text(item, f), analyzer)) {
                found = found || t.surface == term;
            }
        }
        df += found ? 1 : 0;
    }
    return df;
}

Vector doc_vector(const Catalog& catalog, std::size_t ordinal, const EmbeddingTable& table,
                  const AnalyzerConfig& analyzer) {
    const auto& item = catalog[ordinal];
    std::map<std::string, int> tf;
    for (const std::string* text : {&item.title, &item.snippet, &item.description}) {
        for (const auto& t : analyze(*text, analyzer)) {
            tf[t.surface] += 1;
        }
    }
    Vector v(table.dimension(), 0.0);
    const double n = static_cast<double>(catalog.size());
    for (const auto& [term, count] : tf) {
        auto vec = table.vector(term);
        if (vec.empty()) {
            continue;
        }
        const double df = static_cast<double>(doc_freq(catalog, term, analyzer));
        const double w = count * (std::log((1.0 + n) / (1.0 + df)) + 1.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += w * vec[i];
        }
    }
    return v;
}

double lucene(const Catalog& catalog, std::string_view query, std::size_t ordinal, const AnalyzerConfig& analyzer,
              const FieldWeights& wf) {
    const auto q = analyze(query, analyzer);
    if (q.empty()) {
        return 0.0;
    }
    const auto& item = catalog[ordinal];
    const double n = static_cast<double>(catalog.size());
    double sum = 0.0;
    int matched = 0;
    for (const auto& tok : q) {
        bool any = false;
        const double df = static_cast<double>(doc_freq(catalog, tok.surface, analyzer));
        const double idf = 1.0 + std::log(n / (df + 1.0));
        for (Field f : kAllFields) {
            const auto toks = analyze(item_field_text(item, f), analyzer);
            const auto tf = std::count_if(toks.begin(), toks.end(), [&](const Token& t) {
                return t.surface == tok.surface;
            });
            if (tf == 0) {
                continue;
            }
            any = true;
            sum += wf[f] * std::sqrt(static_cast<double>(tf)) * idf * idf / std::sqrt(static_cast<double>(toks.size()));
        }
        matched += any ? 1 : 0;
    }
    return static_cast<double>(matched) / static_cast<double>(q.size()) * sum;
}

std::vector<Scored> lucene_ranking(const Catalog& catalog, std::string_view query, std::size_t k,
                                   const AnalyzerConfig& analyzer, const FieldWeights& wf) {
    std::vector<Scored> all;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const double s = lucene(catalog, query, i, analyzer, wf);
        if (s > 0.0) {
            all.push_back({catalog[i].id, s});
        }
    }
    std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
        return a.score != b.score ? a.score > b.score : a.id < b.id;
    });
    if (all.size() > k) {
        all.resize(k);
    }
    return all;
}

double dcg_spreadsheet(std::span<const double> rels, std::size_t k) {
    const std::size_t n = std::min(k, rels.size());
    std::vector<double> discount(n), product(n);
    for (std::size_t row = 0; row < n; ++row) {
        const double rank = static_cast<double>(row + 1);
        discount[row] = row == 0 ? 1.0 : 1.0 / (std::log(rank) / std::log(2.0));
        product[row] = rels[row] * discount[row];
    }
    double total = 0.0;
    for (double p : product) {
        total += p;
    }
    return total;
}

RandomWorld random_world(std::mt19937_64& rng, std::size_t max_items, std::size_t n_queries,
                         std::size_t max_query_words) {
    static const std::vector<std::string> words = {
        "traffic", "fire",    "fires",   "disaster", "water", "rail",  "road",  "school", "map",   "layer",
        "chicago", "belmont", "cragin",  "englewood", "hyde", "park",  "new",   "york",   "city",  "california",
        "sonoma",  "county",  "the",     "of",       "in",    "and",   "zzz",   "data",   "flood", "census",
    };
    static const std::vector<std::string> types = {"Web Map", "Feature Layer", "Map Service", ""};
    static const std::vector<std::string> vocab = {"traffic", "fire", "disaster", "water", "rail",
                                                   "road",    "school", "flood", "census", "map"};
    auto pick = [&](const std::vector<std::string>& from) {
        return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
    };
    auto sentence = [&](std::size_t max_len) {
        const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
        std::string s;
        for (std::size_t i = 0; i < len; ++i) {
            s += (i ? " " : "") + pick(words);
        }
        return s;
    };

    RandomWorld w;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_items)(rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        CatalogItem item;
        item.id = "r" + std::to_string(1000 + i);
        item.title = sentence(6);
        item.snippet = sentence(10);
        item.description = sentence(20);
        item.item_type = pick(types);
        if (std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
            item.location = make_point(std::uniform_real_distribution<double>(25.0, 48.0)(rng),
                                       std::uniform_real_distribution<double>(-124.0, -70.0)(rng));
        }
        w.catalog.add(std::move(item));
    }
    for (const auto& word : vocab) {
        Vector v(w.table.dimension());
        for (double& x : v) {
            x = normal(rng);
        }
        w.table.add(word, v);
    }
    while (w.queries.size() < n_queries) {
        std::string q = sentence(max_query_words);
        if (!q.empty()) {
            w.queries.push_back(q);
        }
    }
    return w;
}

std::string fixture_path(std::string_view file) {
    return std::string(GEOSEARCH_DATA_DIR) + "/fixture/" + std::string(file);
}

std::string benchmark_path(std::string_view file) {
    return std::string(GEOSEARCH_DATA_DIR) + "/benchmark/" + std::string(file);
}

const Gazetteer& fixture_gazetteer() {
    static const Gazetteer gaz = load_gazetteer(fixture_path("gazetteer.jsonl"));
    return gaz;
}

std::string write_temp(std::string_view name, std::string_view content) {
    const auto dir = std::filesystem::temp_directory_path() / ("geosearch-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto path = dir / std::string(name);
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
}

}  // namespace geosearch::oracle
