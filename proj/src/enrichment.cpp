// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/enrichment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "geosearch/error.hpp"
#include "geosearch/text.hpp"

namespace geosearch {

using nlohmann::json;

void validate_iri(std::string_view iri) {
    auto colon = iri.find(':');
    if (colon == std::string_view::npos || colon == 0) {
        throw InvalidIri("IRI has no scheme: '" + std::string(iri) + "'");
    }
    if (!std::isalpha(static_cast<unsigned char>(iri[0]))) {
        throw InvalidIri("IRI scheme must start with a letter: '" + std::string(iri) + "'");
    }
    for (std::size_t i = 0; i < colon; ++i) {
        auto c = static_cast<unsigned char>(iri[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') {
            throw InvalidIri("invalid IRI scheme: '" + std::string(iri) + "'");
        }
    }
    if (colon + 1 >= iri.size()) {
        throw InvalidIri("IRI has an empty body: '" + std::string(iri) + "'");
    }
    // IRIREF excludes these characters.
    for (char ch : iri) {
        auto c = static_cast<unsigned char>(ch);
        if (c <= 0x20 || ch == '<' || ch == '>' || ch == '"' || ch == '{' || ch == '}' || ch == '|' || ch == '^' ||
            ch == '`' || ch == '\\') {
            throw InvalidIri("IRI contains a forbidden character: '" + std::string(iri) + "'");
        }
    }
}

std::string build_enrichment_query(std::string_view place_iri) {
    validate_iri(place_iri);
    std::string q;
    q += "PREFIX geo: <http://www.w3.org/2003/01/geo/wgs84_pos#>\n";
    q += "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n";
    q += "PREFIX owl: <http://www.w3.org/2002/07/owl#>\n";
    q += "select ?place ?lat ?long ?label ?area ?geoid {\n";
    q += "OPTIONAL {\n";
    q += "    ?place geo:lat ?lat.\n";
    q += "    ?place geo:long ?long.\n";
    q += "}\n";
    q += "OPTIONAL {\n";
    q += "    ?place rdfs:label ?label.\n";
    q += "    FILTER(lang(?label) = \"en\")\n";
    q += "}\n";
    q += "OPTIONAL {\n";
    q += "    ?place <http://dbpedia.org/ontology/PopulatedPlace/areaTotal> ?area.\n";
    q += "}\n";
    q += "OPTIONAL {\n";
    q += "    ?place owl:sameAs ?geoid .\n";
    q += "    FILTER(CONTAINS(str(?geoid), 'geonames'))\n";
    q += "}\n";
    q += "VALUES ?place {\n";
    q += "    <" + std::string(place_iri) + ">\n";
    q += "}\n";
    q += "}\n";
    return q;
}

namespace {

std::optional<std::string> binding_value(const json& row, const char* var) {
    auto it = row.find(var);
    if (it == row.end()) {
        return std::nullopt;
    }
    if (!it->is_object() || !it->contains("value") || !(*it)["value"].is_string()) {
        throw FormatError(std::string("binding for ?") + var + " has no string value");
    }
    return (*it)["value"].get<std::string>();
}

std::optional<double> numeric_value(const json& row, const char* var) {
    auto s = binding_value(row, var);
    if (!s) {
        return std::nullopt;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
    if (ec != std::errc() || ptr != s->data() + s->size() || !std::isfinite(v)) {
        throw FormatError(std::string("binding for ?") + var + " is not numeric: '" + *s + "'");
    }
    return v;
}

// "http://sws.geonames.org/4887398/" -> "4887398"; other forms kept verbatim.
std::string geonames_id_from(const std::string& uri) {
    std::string trimmed = uri;
    while (!trimmed.empty() && trimmed.back() == '/') {
        trimmed.pop_back();
    }
    auto slash = trimmed.find_last_of('/');
    std::string last = slash == std::string::npos ? trimmed : trimmed.substr(slash + 1);
    if (!last.empty() && std::all_of(last.begin(), last.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return last;
    }
    return uri;
}

}  // namespace

PlaceEnrichment parse_enrichment_response(std::string_view body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        throw FormatError(std::string("enrichment response is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_object() ||
        !doc["results"].contains("bindings") || !doc["results"]["bindings"].is_array()) {
        throw FormatError("enrichment response lacks results.bindings");
    }
    PlaceEnrichment out;
    const auto& rows = doc["results"]["bindings"];
    if (rows.empty()) {
        return out;
    }
    const auto& row = rows.front();
    if (!row.is_object()) {
        throw FormatError("binding row is not an object");
    }
    out.lat = numeric_value(row, "lat");
    out.lon = numeric_value(row, "long");
    out.label = binding_value(row, "label");
    out.area = numeric_value(row, "area");
    if (auto g = binding_value(row, "geoid")) {
        out.geonames_id = geonames_id_from(*g);
    }
    return out;
}

void apply_enrichment(Place& place, const PlaceEnrichment& e) {
    if (e.lat && e.lon) {
        place.center = make_point(*e.lat, *e.lon);
    }
    if (e.area) {
        place.area_km2 = *e.area;
    }
    if (e.label) {
        std::string alias = normalize_phrase(*e.label);
        if (!alias.empty() && std::find(place.aliases.begin(), place.aliases.end(), alias) == place.aliases.end()) {
            place.aliases.push_back(alias);
        }
    }
    if (e.geonames_id) {
        place.external_ids["geonames"] = *e.geonames_id;
    }
}

EnrichmentClient::EnrichmentClient(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
    auto scheme_end = endpoint_.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("SPARQL endpoint must be an absolute http(s) URL: '" + endpoint_ + "'");
    }
    auto path_start = endpoint_.find('/', scheme_end + 3);
    origin_ = endpoint_.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);
}

PlaceEnrichment EnrichmentClient::fetch(std::string_view place_iri) const {
    std::string query = build_enrichment_query(place_iri);
    httplib::Client client(origin_);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    httplib::Params params{{"query", query}, {"format", "application/sparql-results+json"}};
    httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
    auto res = client.Get(path_, params, headers);
    if (!res) {
        throw Error("SPARQL request to '" + endpoint_ + "' failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error("SPARQL endpoint '" + endpoint_ + "' returned HTTP " + std::to_string(res->status));
    }
    return parse_enrichment_response(res->body);
}

}  // namespace geosearch
