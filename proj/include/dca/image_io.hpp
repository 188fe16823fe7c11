#pragma once

#include <filesystem>

#include "dca/image.hpp"

namespace dca {

// Reads an 8-bit PNG or JPEG (format detected from the file's magic bytes).
// Palette and 16-bit PNGs are converted to 8-bit; alpha is stripped;
// gray+alpha becomes gray, RGB(A) becomes RGB. Throws DataError on failure.
ImageBuffer read_image(const std::filesystem::path& path);

// Lossless 8-bit PNG; gray or RGB according to the buffer's channel count.
void write_png(const std::filesystem::path& path, const ImageBuffer& img);

// Baseline JPEG, quality in [1, 100].
void write_jpeg(const std::filesystem::path& path, const ImageBuffer& img,
                int quality = 95);

// Dispatches on the extension (.png, .jpg, .jpeg); anything else is a
// DataError.
void write_image(const std::filesystem::path& path, const ImageBuffer& img);

} // namespace dca
