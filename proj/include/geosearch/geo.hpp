// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <compare>

namespace geosearch {

inline constexpr double kEarthRadiusKm = 6371.0;

/// Latitude in [-90, 90], longitude normalized to [-180, 180).
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Throws FormatError when lat is out of range or either value is not finite.
GeoPoint make_point(double lat, double lon);

double normalize_longitude(double lon);

/// Great-circle distance in km (haversine, mean Earth radius 6371.0 km).
double haversine_km(const GeoPoint& a, const GeoPoint& b);

/**
 * Degree box. A box whose west edge is greater than its east edge crosses
 * the antimeridian; such boxes are kept as-is and every computation here
 * unwraps them.
 */
struct BoundingBox {
    double west = 0.0;
    double south = 0.0;
    double east = 0.0;
    double north = 0.0;

    bool crosses_antimeridian() const noexcept { return west > east; }
    double width_deg() const noexcept;
    double height_deg() const noexcept { return north - south; }
    GeoPoint center() const;
    GeoPoint south_west() const { return {south, west}; }
    GeoPoint north_east() const { return {north, east}; }
    bool contains(const GeoPoint& p) const noexcept;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Throws FormatError unless south <= north and all edges are in range.
BoundingBox make_bbox(double west, double south, double east, double north);

/// Equirectangular area in km^2, evaluated at the box's mean latitude.
double box_area_km2(const BoundingBox& box);

/// Area of the intersection of two boxes (0 when disjoint), each overlapping
/// piece evaluated at its own mean latitude.
double intersection_area_km2(const BoundingBox& a, const BoundingBox& b);

}  // namespace geosearch
