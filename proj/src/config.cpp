// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>

#include "geosearch/error.hpp"

namespace geosearch {

FieldWeights EngineConfig::field_weights() const {
    return FieldWeights(weight_title, weight_snippet, weight_description, weight_item_type);
}

Lambdas EngineConfig::lambdas() const {
    return Lambdas(lambda_platial, lambda_spatial, lambda_concept, lambda_doc);
}

SearchSettings EngineConfig::search_settings() const {
    SearchSettings s;
    s.expansion = {k_subdiv, self_mass, k_neighbors, min_cos, subdivision_aliases};
    s.field_weights = field_weights();
    s.lambdas = lambdas();
    s.bandwidth_scale = bandwidth_scale;
    s.default_radius_km = default_radius_km;
    s.candidate_pool = candidate_pool;
    return s;
}

void EngineConfig::validate() const {
    if (catalog.empty() || gazetteer.empty() || embeddings.empty()) {
        throw ConfigError("config needs catalog, gazetteer and embeddings paths");
    }
    field_weights();
    lambdas();
    if (!(self_mass > 0.0 && self_mass <= 1.0)) {
        throw ConfigError("self_mass must lie in (0, 1]");
    }
    if (!(min_cos >= -1.0 && min_cos <= 1.0)) {
        throw ConfigError("min_cos must lie in [-1, 1]");
    }
    if (!(bandwidth_scale > 0.0) || !std::isfinite(bandwidth_scale)) {
        throw ConfigError("bandwidth_scale must be positive");
    }
    if (!(default_radius_km > 0.0) || !std::isfinite(default_radius_km)) {
        throw ConfigError("default_radius_km must be positive");
    }
    if (candidate_pool == 0) {
        throw ConfigError("candidate_pool must be positive");
    }
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, v));
    }
    return out;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
    Int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, v));
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, v));
}

using Setter = std::function<void(EngineConfig&, const std::string&, const std::filesystem::path&)>;

const std::map<std::string, Setter>& setters() {
    auto path = [](std::filesystem::path EngineConfig::*m) -> Setter {
        return [m](EngineConfig& c, const std::string& v, const std::filesystem::path& base) {
            std::filesystem::path p(v);
            c.*m = p.is_absolute() || base.empty() ? p : base / p;
        };
    };
    auto real = [](double EngineConfig::*m) -> Setter {
        return [m](EngineConfig& c, const std::string& v, const std::filesystem::path&) { c.*m = to_double("", v); };
    };
    auto size = [](std::size_t EngineConfig::*m) -> Setter {
        return [m](EngineConfig& c, const std::string& v, const std::filesystem::path&) {
            c.*m = to_int<std::size_t>("", v);
        };
    };
    static const std::map<std::string, Setter> table = {
        {"catalog", path(&EngineConfig::catalog)},
        {"gazetteer", path(&EngineConfig::gazetteer)},
        {"embeddings", path(&EngineConfig::embeddings)},
        {"stopwords", path(&EngineConfig::stopwords)},
        {"lemma_exceptions", path(&EngineConfig::lemma_exceptions)},
        {"vocab_filter", path(&EngineConfig::vocab_filter)},
        {"weight_title", real(&EngineConfig::weight_title)},
        {"weight_snippet", real(&EngineConfig::weight_snippet)},
        {"weight_description", real(&EngineConfig::weight_description)},
        {"weight_item_type", real(&EngineConfig::weight_item_type)},
        {"lambda_platial", real(&EngineConfig::lambda_platial)},
        {"lambda_spatial", real(&EngineConfig::lambda_spatial)},
        {"lambda_concept", real(&EngineConfig::lambda_concept)},
        {"lambda_doc", real(&EngineConfig::lambda_doc)},
        {"k_subdiv", size(&EngineConfig::k_subdiv)},
        {"self_mass", real(&EngineConfig::self_mass)},
        {"k_neighbors", size(&EngineConfig::k_neighbors)},
        {"min_cos", real(&EngineConfig::min_cos)},
        {"subdivision_aliases",
         [](EngineConfig& c, const std::string& v, const std::filesystem::path&) {
             c.subdivision_aliases = to_bool("subdivision_aliases", v);
         }},
        {"bandwidth_scale", real(&EngineConfig::bandwidth_scale)},
        {"default_radius_km", real(&EngineConfig::default_radius_km)},
        {"candidate_pool", size(&EngineConfig::candidate_pool)},
        {"host", [](EngineConfig& c, const std::string& v, const std::filesystem::path&) { c.host = v; }},
        {"port",
         [](EngineConfig& c, const std::string& v, const std::filesystem::path&) {
             c.port = to_int<std::uint16_t>("port", v);
         }},
        {"cors_origin", [](EngineConfig& c, const std::string& v, const std::filesystem::path&) { c.cors_origin = v; }},
    };
    return table;
}

}  // namespace

EngineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    EngineConfig cfg;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key));
        }
        if (!seen.insert(key).second) {
            throw ConfigError(fmt::format("line {}: key '{}' repeated", line_no, key));
        }
        try {
            it->second(cfg, value, base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("line {}: {} {}", line_no, key, e.what()));
        }
    }
    cfg.validate();
    return cfg;
}

EngineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    return parse_config(in, path.parent_path());
}

}  // namespace geosearch
