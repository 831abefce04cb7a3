// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geosearch/geo.hpp"

namespace geosearch {

struct Place {
    std::string place_id;
    std::string canonical_name;
    /// Normalized phrases (see normalize_phrase); always includes the canonical name.
    std::vector<std::string> aliases;
    std::optional<GeoPoint> center;
    std::optional<BoundingBox> bbox;
    std::optional<double> area_km2;
    std::optional<std::string> parent;
    std::vector<std::string> children;
    /// source -> id, e.g. "geonames" -> "4887398", "dbpedia" -> IRI.
    std::map<std::string, std::string> external_ids;
};

/**
 * Place store with a normalized-alias lookup. Construction validates the
 * partonomy: parent and child links are made mutually consistent, missing
 * targets raise DanglingReference and cycles raise CycleDetected.
 */
class Gazetteer {
public:
    Gazetteer() = default;
    explicit Gazetteer(std::vector<Place> places);

    std::size_t size() const noexcept { return places_.size(); }
    const std::vector<Place>& places() const noexcept { return places_; }
    const Place* find(std::string_view place_id) const;

    /// Places with an alias equal to the phrase, by descending area (absent
    /// area last), then place_id.
    std::vector<const Place*> resolve(std::string_view phrase) const;

    /// Up to k direct children, by descending area then place_id.
    std::vector<const Place*> subdivisions(const Place& place, std::size_t k) const;

    const Place* parent_of(const Place& place) const;

    /// Longest alias, in words.
    std::size_t max_alias_words() const noexcept { return max_alias_words_; }

private:
    std::vector<Place> places_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::vector<std::size_t>> name_index_;
    std::size_t max_alias_words_ = 0;
};

/// True when a sorts before b under the resolve/subdivisions ordering.
bool larger_place_first(const Place& a, const Place& b);

/**
 * Line-delimited JSON records with keys place_id, name, aliases, lat, lon,
 * bbox [w,s,e,n], area_km2, parent, children, geonames_id, dbpedia.
 */
Gazetteer load_gazetteer(const std::filesystem::path& path);
std::vector<Place> read_places(std::istream& in);
void write_places(std::ostream& out, const std::vector<Place>& places);

}  // namespace geosearch
