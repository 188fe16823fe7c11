#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dca/errors.hpp"

namespace dca {

// 2-D raster of 8-bit intensities, row-major, channels interleaved.
// 1 channel (grayscale) or 3 channels (RGB). Operations treat buffers as
// values: they take const references and return new buffers, so sharing a
// buffer across worker threads is safe.
class ImageBuffer {
public:
    ImageBuffer(int width, int height, int channels, uint8_t fill = 0);
    ImageBuffer(int width, int height, int channels, std::vector<uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    uint8_t at(int x, int y, int c = 0) const {
        return data_[index(x, y, c)];
    }
    void set(int x, int y, int c, uint8_t v) {
        data_[index(x, y, c)] = v;
    }
    // Clamped access: coordinates outside the raster replicate the edge.
    uint8_t at_clamped(int x, int y, int c = 0) const;

    std::size_t index(int x, int y, int c = 0) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    std::span<const uint8_t> data() const { return data_; }
    std::span<uint8_t> data() { return data_; }

    bool same_shape(const ImageBuffer& other) const {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }
    bool operator==(const ImageBuffer& other) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<uint8_t> data_;
};

// Boolean membership raster over a parent image's pixel grid.
class PixelRegion {
public:
    PixelRegion(int width, int height, bool fill = false);

    static PixelRegion full(int width, int height) { return PixelRegion(width, height, true); }

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(int x, int y) const {
        return member_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool in) {
        member_[static_cast<std::size_t>(y) * width_ + x] = in ? 1 : 0;
    }

    std::size_t count() const;
    bool empty() const { return count() == 0; }

    PixelRegion complement() const;
    // Morphological dilation by `px` steps of the 8-neighbourhood
    // (Chebyshev radius `px`).
    PixelRegion dilated(int px) const;

    bool same_shape(const ImageBuffer& img) const {
        return width_ == img.width() && height_ == img.height();
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<uint8_t> member_;
};

// Location and value of the global intensity extrema of a 1-channel image.
struct ExtremaReport {
    int brightest_x = 0;
    int brightest_y = 0;
    int darkest_x = 0;
    int darkest_y = 0;
    uint8_t brightest_value = 0;
    uint8_t darkest_value = 0;
};

} // namespace dca
