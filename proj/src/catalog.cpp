// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/catalog.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "geosearch/error.hpp"

namespace geosearch {

using nlohmann::json;

std::string_view field_name(Field f) noexcept {
    switch (f) {
        case Field::title: return "title";
        case Field::snippet: return "snippet";
        case Field::description: return "description";
        case Field::item_type: return "item_type";
    }
    return "unknown";
}

std::optional<GeoPoint> CatalogItem::representative_point() const {
    if (bbox) {
        return bbox->center();
    }
    return location;
}

const std::string& item_field_text(const CatalogItem& item, Field field) noexcept {
    switch (field) {
        case Field::title: return item.title;
        case Field::snippet: return item.snippet;
        case Field::description: return item.description;
        case Field::item_type: return item.item_type;
    }
    return item.title;
}

Catalog::Catalog(std::vector<CatalogItem> items) {
    items_.reserve(items.size());
    for (auto& it : items) {
        add(std::move(it));
    }
}

std::size_t Catalog::add(CatalogItem item) {
    if (item.id.empty()) {
        throw FormatError("catalog item with empty id");
    }
    auto [pos, inserted] = by_id_.emplace(item.id, items_.size());
    if (!inserted) {
        throw FormatError("duplicate catalog id '" + item.id + "'");
    }
    items_.push_back(std::move(item));
    return pos->second;
}

std::optional<std::size_t> Catalog::ordinal_of(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const CatalogItem* Catalog::find(std::string_view id) const {
    auto ord = ordinal_of(id);
    return ord ? &items_[*ord] : nullptr;
}

namespace {

std::string text_field(const json& rec, const char* key) {
    auto it = rec.find(key);
    if (it == rec.end() || it->is_null()) {
        return {};
    }
    if (!it->is_string()) {
        throw FormatError(std::string("field '") + key + "' is not a string");
    }
    return it->get<std::string>();
}

double number(const json& v, const char* what) {
    if (!v.is_number()) {
        throw FormatError(std::string(what) + " is not a number");
    }
    return v.get<double>();
}

CatalogItem parse_item(const std::string& line) {
    json rec = json::parse(line);
    if (!rec.is_object()) {
        throw FormatError("record is not an object");
    }
    CatalogItem item;
    auto id = rec.find("id");
    if (id == rec.end() || !id->is_string() || id->get<std::string>().empty()) {
        throw FormatError("record without id");
    }
    item.id = id->get<std::string>();
    item.title = text_field(rec, "title");
    item.snippet = text_field(rec, "snippet");
    item.description = text_field(rec, "description");
    item.item_type = text_field(rec, "type");

    if (auto loc = rec.find("location"); loc != rec.end() && !loc->is_null()) {
        if (!loc->is_object() || !loc->contains("lat") || !loc->contains("lon")) {
            throw FormatError("location must be an object with lat and lon");
        }
        item.location = make_point(number(loc->at("lat"), "lat"), number(loc->at("lon"), "lon"));
    }
    if (auto bb = rec.find("bbox"); bb != rec.end() && !bb->is_null()) {
        if (!bb->is_array() || bb->size() != 4) {
            throw FormatError("bbox must be [west, south, east, north]");
        }
        item.bbox = make_bbox(number((*bb)[0], "west"), number((*bb)[1], "south"), number((*bb)[2], "east"),
                              number((*bb)[3], "north"));
    }
    return item;
}

}  // namespace

Catalog read_catalog(std::istream& in, LoadMode mode, LoadReport* report) {
    Catalog catalog;
    LoadReport local;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            catalog.add(parse_item(line));
            ++local.records;
        } catch (const std::exception& e) {
            if (mode == LoadMode::strict) {
                throw FormatError(e.what(), line_no);
            }
            ++local.skipped;
            local.skipped_lines.push_back(line_no);
        }
    }
    if (report) {
        *report = std::move(local);
    }
    return catalog;
}

Catalog load_catalog(const std::filesystem::path& path, LoadMode mode, LoadReport* report) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string());
    }
    return read_catalog(in, mode, report);
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
    for (const auto& item : catalog.items()) {
        json rec = json::object();
        rec["id"] = item.id;
        rec["title"] = item.title;
        rec["snippet"] = item.snippet;
        rec["description"] = item.description;
        rec["type"] = item.item_type;
        if (item.location) {
            rec["location"] = {{"lat", item.location->lat}, {"lon", item.location->lon}};
        }
        if (item.bbox) {
            rec["bbox"] = {item.bbox->west, item.bbox->south, item.bbox->east, item.bbox->north};
        }
        out << rec.dump() << '\n';
    }
}

}  // namespace geosearch
