// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#include "geosearch/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geosearch/error.hpp"

namespace geosearch {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double hav(double angle) {
    double s = std::sin(0.5 * angle);
    return s * s;
}

}  // namespace

double normalize_longitude(double lon) {
    double x = std::fmod(lon + 180.0, 360.0);
    if (x < 0) {
        x += 360.0;
    }
    return x - 180.0;
}

GeoPoint make_point(double lat, double lon) {
    if (!std::isfinite(lat) || !std::isfinite(lon)) {
        throw FormatError("non-finite coordinate");
    }
    if (lat < -90.0 || lat > 90.0) {
        throw FormatError("latitude out of range: " + std::to_string(lat));
    }
    return {lat, normalize_longitude(lon)};
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    double lat_a = a.lat * kDegToRad;
    double lat_b = b.lat * kDegToRad;
    double h = hav(lat_b - lat_a) + std::cos(lat_a) * std::cos(lat_b) * hav((b.lon - a.lon) * kDegToRad);
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double BoundingBox::width_deg() const noexcept {
    return crosses_antimeridian() ? east + 360.0 - west : east - west;
}

GeoPoint BoundingBox::center() const {
    return {0.5 * (south + north), normalize_longitude(west + 0.5 * width_deg())};
}

bool BoundingBox::contains(const GeoPoint& p) const noexcept {
    if (p.lat < south || p.lat > north) {
        return false;
    }
    if (!crosses_antimeridian()) {
        return p.lon >= west && p.lon <= east;
    }
    return p.lon >= west || p.lon <= east;
}

BoundingBox make_bbox(double west, double south, double east, double north) {
    for (double v : {west, south, east, north}) {
        if (!std::isfinite(v)) {
            throw FormatError("non-finite bounding box edge");
        }
    }
    if (south > north) {
        throw FormatError("bounding box south > north");
    }
    if (south < -90.0 || north > 90.0) {
        throw FormatError("bounding box latitude out of range");
    }
    if (west < -180.0 || west > 180.0 || east < -180.0 || east > 180.0) {
        throw FormatError("bounding box longitude out of range");
    }
    return {west, south, east, north};
}

namespace {

double rect_area_km2(double width_deg, double south, double north) {
    if (width_deg <= 0.0 || north <= south) {
        return 0.0;
    }
    double mean_lat = 0.5 * (south + north) * kDegToRad;
    return kEarthRadiusKm * kEarthRadiusKm * (width_deg * kDegToRad) * ((north - south) * kDegToRad) *
           std::cos(mean_lat);
}

}  // namespace

double box_area_km2(const BoundingBox& box) {
    return rect_area_km2(box.width_deg(), box.south, box.north);
}

double intersection_area_km2(const BoundingBox& a, const BoundingBox& b) {
    double south = std::max(a.south, b.south);
    double north = std::min(a.north, b.north);
    if (north <= south) {
        return 0.0;
    }
    // Unwrapped longitude intervals; b is compared at three 360-degree shifts.
    double a_lo = a.west;
    double a_hi = a.west + a.width_deg();
    double total = 0.0;
    for (double shift : {-360.0, 0.0, 360.0}) {
        double b_lo = b.west + shift;
        double b_hi = b.west + b.width_deg() + shift;
        double overlap = std::min(a_hi, b_hi) - std::max(a_lo, b_lo);
        if (overlap > 0.0) {
            total += rect_area_km2(overlap, south, north);
        }
    }
    return total;
}

}  // namespace geosearch
