// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/gazetteer.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "geosearch/error.hpp"
#include "geosearch/text.hpp"

namespace geosearch {

using nlohmann::json;

bool larger_place_first(const Place& a, const Place& b) {
    if (a.area_km2.has_value() != b.area_km2.has_value()) {
        return a.area_km2.has_value();
    }
    if (a.area_km2 && *a.area_km2 != *b.area_km2) {
        return *a.area_km2 > *b.area_km2;
    }
    return a.place_id < b.place_id;
}

Gazetteer::Gazetteer(std::vector<Place> places) : places_(std::move(places)) {
    for (std::size_t i = 0; i < places_.size(); ++i) {
        auto& p = places_[i];
        if (p.place_id.empty()) {
            throw FormatError("place with empty place_id");
        }
        if (!by_id_.emplace(p.place_id, i).second) {
            throw FormatError("duplicate place_id '" + p.place_id + "'");
        }
        if (p.center && p.bbox && !p.bbox->contains(*p.center)) {
            throw FormatError("bbox of place '" + p.place_id + "' does not contain its center");
        }
        for (auto& a : p.aliases) {
            a = normalize_phrase(a);
        }
        std::string canonical = normalize_phrase(p.canonical_name);
        if (canonical.empty()) {
            throw FormatError("place '" + p.place_id + "' has no name");
        }
        p.aliases.push_back(canonical);
        std::erase_if(p.aliases, [](const std::string& a) { return a.empty(); });
        std::sort(p.aliases.begin(), p.aliases.end());
        p.aliases.erase(std::unique(p.aliases.begin(), p.aliases.end()), p.aliases.end());
    }

    // Make parent/children mutually consistent.
    for (auto& p : places_) {
        if (p.parent && !by_id_.contains(*p.parent)) {
            throw DanglingReference(p.place_id, *p.parent);
        }
        for (const auto& c : p.children) {
            if (!by_id_.contains(c)) {
                throw DanglingReference(p.place_id, c);
            }
        }
    }
    for (auto& p : places_) {
        for (const auto& c : p.children) {
            auto& child = places_[by_id_.at(c)];
            if (!child.parent) {
                child.parent = p.place_id;
            } else if (*child.parent != p.place_id) {
                throw FormatError("place '" + c + "' is listed as a child of '" + p.place_id + "' but has parent '" +
                                  *child.parent + "'");
            }
        }
    }
    for (std::size_t i = 0; i < places_.size(); ++i) {
        const auto& p = places_[i];
        if (!p.parent) {
            continue;
        }
        if (*p.parent == p.place_id) {
            throw CycleDetected(p.place_id);
        }
        auto& siblings = places_[by_id_.at(*p.parent)].children;
        if (std::find(siblings.begin(), siblings.end(), p.place_id) == siblings.end()) {
            siblings.push_back(p.place_id);
        }
    }
    for (auto& p : places_) {
        std::unordered_set<std::string> uniq;
        std::erase_if(p.children, [&](const std::string& c) { return !uniq.insert(c).second; });
    }

    // Acyclicity: every parent chain must end within size() steps.
    for (const auto& p : places_) {
        const Place* cur = &p;
        std::size_t steps = 0;
        while (cur->parent) {
            cur = &places_[by_id_.at(*cur->parent)];
            if (++steps > places_.size()) {
                throw CycleDetected(p.place_id);
            }
        }
    }

    for (std::size_t i = 0; i < places_.size(); ++i) {
        for (const auto& a : places_[i].aliases) {
            name_index_[a].push_back(i);
            auto words = static_cast<std::size_t>(std::count(a.begin(), a.end(), ' ') + 1);
            max_alias_words_ = std::max(max_alias_words_, words);
        }
    }
    for (auto& [name, ids] : name_index_) {
        std::sort(ids.begin(), ids.end(),
                  [&](std::size_t a, std::size_t b) { return larger_place_first(places_[a], places_[b]); });
    }
}

const Place* Gazetteer::find(std::string_view place_id) const {
    auto it = by_id_.find(std::string(place_id));
    return it == by_id_.end() ? nullptr : &places_[it->second];
}

std::vector<const Place*> Gazetteer::resolve(std::string_view phrase) const {
    std::vector<const Place*> out;
    auto it = name_index_.find(normalize_phrase(phrase));
    if (it == name_index_.end()) {
        return out;
    }
    for (std::size_t i : it->second) {
        out.push_back(&places_[i]);
    }
    return out;
}

std::vector<const Place*> Gazetteer::subdivisions(const Place& place, std::size_t k) const {
    std::vector<const Place*> kids;
    for (const auto& c : place.children) {
        if (const Place* p = find(c)) {
            kids.push_back(p);
        }
    }
    std::sort(kids.begin(), kids.end(), [](const Place* a, const Place* b) { return larger_place_first(*a, *b); });
    if (kids.size() > k) {
        kids.resize(k);
    }
    return kids;
}

const Place* Gazetteer::parent_of(const Place& place) const {
    return place.parent ? find(*place.parent) : nullptr;
}

namespace {

std::optional<double> opt_number(const json& rec, const char* key) {
    auto it = rec.find(key);
    if (it == rec.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw FormatError(std::string("'") + key + "' is not a number");
    }
    return it->get<double>();
}

std::optional<std::string> opt_string(const json& rec, const char* key) {
    auto it = rec.find(key);
    if (it == rec.end() || it->is_null()) {
        return std::nullopt;
    }
    if (it->is_number_integer()) {
        return std::to_string(it->get<long long>());
    }
    if (!it->is_string()) {
        throw FormatError(std::string("'") + key + "' is not a string");
    }
    return it->get<std::string>();
}

std::vector<std::string> string_list(const json& rec, const char* key) {
    std::vector<std::string> out;
    auto it = rec.find(key);
    if (it == rec.end() || it->is_null()) {
        return out;
    }
    if (!it->is_array()) {
        throw FormatError(std::string("'") + key + "' is not an array");
    }
    for (const auto& v : *it) {
        if (!v.is_string()) {
            throw FormatError(std::string("'") + key + "' must contain strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

Place parse_place(const std::string& line) {
    json rec = json::parse(line);
    if (!rec.is_object()) {
        throw FormatError("record is not an object");
    }
    Place p;
    auto id = opt_string(rec, "place_id");
    auto name = opt_string(rec, "name");
    if (!id || id->empty()) {
        throw FormatError("record without place_id");
    }
    if (!name || name->empty()) {
        throw FormatError("record without name");
    }
    p.place_id = *id;
    p.canonical_name = *name;
    p.aliases = string_list(rec, "aliases");
    auto lat = opt_number(rec, "lat");
    auto lon = opt_number(rec, "lon");
    if (lat.has_value() != lon.has_value()) {
        throw FormatError("lat and lon must be given together");
    }
    if (lat) {
        p.center = make_point(*lat, *lon);
    }
    if (auto it = rec.find("bbox"); it != rec.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != 4 || !std::all_of(it->begin(), it->end(), [](const json& v) {
                return v.is_number();
            })) {
            throw FormatError("bbox must be [west, south, east, north]");
        }
        p.bbox = make_bbox((*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>(),
                           (*it)[3].get<double>());
    }
    p.area_km2 = opt_number(rec, "area_km2");
    if (p.area_km2 && *p.area_km2 < 0.0) {
        throw FormatError("negative area");
    }
    p.parent = opt_string(rec, "parent");
    p.children = string_list(rec, "children");
    if (auto g = opt_string(rec, "geonames_id")) {
        p.external_ids["geonames"] = *g;
    }
    if (auto d = opt_string(rec, "dbpedia")) {
        p.external_ids["dbpedia"] = *d;
    }
    return p;
}

}  // namespace

std::vector<Place> read_places(std::istream& in) {
    std::vector<Place> places;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            places.push_back(parse_place(line));
        } catch (const FormatError& e) {
            throw FormatError(e.what(), line_no);
        } catch (const json::exception& e) {
            throw FormatError(e.what(), line_no);
        }
    }
    return places;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    return Gazetteer(read_places(in));
}

void write_places(std::ostream& out, const std::vector<Place>& places) {
    for (const auto& p : places) {
        json rec = json::object();
        rec["place_id"] = p.place_id;
        rec["name"] = p.canonical_name;
        rec["aliases"] = p.aliases;
        if (p.center) {
            rec["lat"] = p.center->lat;
            rec["lon"] = p.center->lon;
        }
        if (p.bbox) {
            rec["bbox"] = {p.bbox->west, p.bbox->south, p.bbox->east, p.bbox->north};
        }
        if (p.area_km2) {
            rec["area_km2"] = *p.area_km2;
        }
        if (p.parent) {
            rec["parent"] = *p.parent;
        }
        rec["children"] = p.children;
        if (auto it = p.external_ids.find("geonames"); it != p.external_ids.end()) {
            rec["geonames_id"] = it->second;
        }
        if (auto it = p.external_ids.find("dbpedia"); it != p.external_ids.end()) {
            rec["dbpedia"] = it->second;
        }
        out << rec.dump() << '\n';
    }
}

}  // namespace geosearch
