#include "dca/image.hpp"

#include <algorithm>
#include <utility>

namespace dca {

namespace {

void check_dims(int width, int height, int channels) {
    if (width < 1 || height < 1)
        throw ParamError("ImageBuffer dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
    if (channels != 1 && channels != 3)
        throw ParamError("ImageBuffer supports 1 or 3 channels, got " +
                         std::to_string(channels));
}

} // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
    check_dims(width, height, channels);
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height, channels);
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    if (data_.size() != expected)
        throw ShapeError("ImageBuffer data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(expected));
}

uint8_t ImageBuffer::at_clamped(int x, int y, int c) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return data_[index(x, y, c)];
}

PixelRegion::PixelRegion(int width, int height, bool fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw ParamError("PixelRegion dimensions must be positive");
    member_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t PixelRegion::count() const {
    return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), uint8_t{1}));
}

PixelRegion PixelRegion::complement() const {
    PixelRegion out(width_, height_);
    for (std::size_t i = 0; i < member_.size(); ++i)
        out.member_[i] = member_[i] ? 0 : 1;
    return out;
}

PixelRegion PixelRegion::dilated(int px) const {
    if (px < 0)
        throw ParamError("dilation amount must be non-negative");
    PixelRegion cur = *this;
    for (int step = 0; step < px; ++step) {
        PixelRegion next = cur;
        for (int y = 0; y < height_; ++y) {
            for (int x = 0; x < width_; ++x) {
                if (cur.contains(x, y)) continue;
                bool near = false;
                for (int dy = -1; dy <= 1 && !near; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) continue;
                        if (cur.contains(nx, ny)) { near = true; break; }
                    }
                }
                if (near) next.set(x, y, true);
            }
        }
        cur = next;
    }
    return cur;
}

} // namespace dca
