// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geosearch/geo.hpp"

namespace geosearch {

enum class Field : std::size_t { title = 0, snippet, description, item_type };

inline constexpr std::size_t kFieldCount = 4;
inline constexpr std::array<Field, kFieldCount> kAllFields = {Field::title, Field::snippet, Field::description,
                                                               Field::item_type};

std::string_view field_name(Field f) noexcept;

struct CatalogItem {
    std::string id;
    std::string title;
    std::string snippet;
    std::string description;
    std::string item_type;
    std::optional<GeoPoint> location;
    std::optional<BoundingBox> bbox;

    /// Point used for distance computations: bbox center, else location.
    std::optional<GeoPoint> representative_point() const;

    friend bool operator==(const CatalogItem&, const CatalogItem&) = default;
};

const std::string& item_field_text(const CatalogItem& item, Field field) noexcept;

/// Ordered item collection with id lookup. Immutable once handed to an index.
class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogItem> items);

    /// Throws FormatError on empty or duplicate id.
    std::size_t add(CatalogItem item);

    const std::vector<CatalogItem>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const CatalogItem& operator[](std::size_t ordinal) const { return items_[ordinal]; }

    std::optional<std::size_t> ordinal_of(std::string_view id) const;
    const CatalogItem* find(std::string_view id) const;

    friend bool operator==(const Catalog& a, const Catalog& b) { return a.items_ == b.items_; }

private:
    std::vector<CatalogItem> items_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

enum class LoadMode { strict, lenient };

struct LoadReport {
    std::size_t records = 0;
    std::size_t skipped = 0;
    std::vector<std::size_t> skipped_lines;
};

/**
 * Reads one JSON object per line (blank lines ignored). Recognized keys:
 * id, title, snippet, description, type, location {lat, lon},
 * bbox [west, south, east, north]. Other keys are ignored.
 *
 * In strict mode the first bad record raises FormatError with its line
 * number; in lenient mode bad records are skipped and counted in `report`.
 */
Catalog load_catalog(const std::filesystem::path& path, LoadMode mode = LoadMode::strict,
                     LoadReport* report = nullptr);
Catalog read_catalog(std::istream& in, LoadMode mode = LoadMode::strict, LoadReport* report = nullptr);

/// Inverse of read_catalog; absent text fields are written as empty strings.
void write_catalog(std::ostream& out, const Catalog& catalog);

}  // namespace geosearch
