#pragma once

#include <stdexcept>
#include <string>

namespace dca {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameter value (non-positive sigma, bad thresholds, ...).
class ParamError : public Error {
public:
    explicit ParamError(const std::string& msg) : Error(msg) {}
};

// Buffer/region dimensions do not match.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Statistics requested over a region with no member pixels.
class EmptyRegionError : public Error {
public:
    explicit EmptyRegionError(const std::string& msg) : Error(msg) {}
};

// No dark corner artifact could be detected in the image.
class NoDcaDetected : public Error {
public:
    explicit NoDcaDetected(const std::string& msg) : Error(msg) {}
};

// Inpainting hole covers the whole image; no known boundary exists.
class NoBoundaryError : public Error {
public:
    explicit NoBoundaryError(const std::string& msg) : Error(msg) {}
};

// File/format problems: unreadable images, malformed CSV, missing columns.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

} // namespace dca
