// Copyright 2026 The geosearch Authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geosearch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& path)
        : Error("cannot read '" + path + "'"), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Malformed input. line() is 1-based, 0 when the error has no line context.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DanglingReference : public Error {
public:
    DanglingReference(const std::string& from, const std::string& to)
        : Error("place '" + from + "' references unknown place '" + to + "'"), missing_(to) {}
    const std::string& missing() const noexcept { return missing_; }

private:
    std::string missing_;
};

class CycleDetected : public Error {
public:
    explicit CycleDetected(const std::string& place_id)
        : Error("partonomy cycle through place '" + place_id + "'") {}
};

#define GEOSEARCH_SIMPLE_ERROR(Name)  \
    class Name : public Error {       \
    public:                           \
        using Error::Error;           \
    };

GEOSEARCH_SIMPLE_ERROR(EmptyTable)
GEOSEARCH_SIMPLE_ERROR(DimensionMismatch)
GEOSEARCH_SIMPLE_ERROR(InvalidIri)
GEOSEARCH_SIMPLE_ERROR(NoGeometry)
GEOSEARCH_SIMPLE_ERROR(DegenerateBox)
GEOSEARCH_SIMPLE_ERROR(EmptyQuery)
GEOSEARCH_SIMPLE_ERROR(UnknownQuery)
GEOSEARCH_SIMPLE_ERROR(QuerySetMismatch)
GEOSEARCH_SIMPLE_ERROR(ConfigError)

#undef GEOSEARCH_SIMPLE_ERROR

}  // namespace geosearch
