#pragma once

#include "dca/image.hpp"

namespace dca {

// ITU-R 601 luma: round(0.299 R + 0.587 G + 0.114 B).
ImageBuffer to_grayscale(const ImageBuffer& img);

// Promote a 1-channel image to 3 channels (value replicated); 3-channel
// input is returned unchanged.
ImageBuffer to_rgb(const ImageBuffer& img);

// Separable Gaussian blur. Kernel is a sampled, normalized Gaussian with
// half-width ceil(3*sigma); borders replicate the edge pixel. The
// intermediate pass is kept in float so the result matches a direct 2-D
// convolution to within one intensity level.
ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma);

// v -> clamp(round(128 + factor*(v - 128)), 0, 255) on every channel.
ImageBuffer enhance_contrast(const ImageBuffer& img, double factor);

// Population standard deviation of the member intensities (Eq.-style RMS
// contrast). `normalized` first maps intensities to [0,1] by dividing by
// 255; the default raw scale keeps values comparable with 0-255 reports.
double region_rms(const ImageBuffer& img, const PixelRegion& region,
                  bool normalized = false);

// Arithmetic mean of member intensities on the raw 0-255 scale.
double region_brightness(const ImageBuffer& img, const PixelRegion& region);

// Global max and min locations; ties resolved to the smallest row-major index.
ExtremaReport locate_extrema(const ImageBuffer& img);

// Serial reference kernels. Straight nested loops, no OpenMP, no shared
// helpers with the parallel versions; used by the tests as an independent
// implementation and by the benchmark as the baseline.
namespace reference {

ImageBuffer to_grayscale(const ImageBuffer& img);
ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma);
ImageBuffer enhance_contrast(const ImageBuffer& img, double factor);
double region_rms(const ImageBuffer& img, const PixelRegion& region,
                  bool normalized = false);
double region_brightness(const ImageBuffer& img, const PixelRegion& region);

} // namespace reference

} // namespace dca
