#include "dca/image_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace dca {

namespace {

uint8_t round_clamp(double v) {
    const long r = std::lround(v);
    return static_cast<uint8_t>(std::clamp(r, 0L, 255L));
}

std::vector<float> gaussian_kernel(double sigma) {
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<float> k(2 * half + 1);
    double sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k[i + half] = static_cast<float>(w);
        sum += w;
    }
    for (auto& w : k) w = static_cast<float>(w / sum);
    return k;
}

std::array<uint8_t, 256> contrast_lut(double factor) {
    std::array<uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v)
        lut[v] = round_clamp(128.0 + factor * (v - 128.0));
    return lut;
}

void check_region(const ImageBuffer& img, const PixelRegion& region) {
    if (img.channels() != 1)
        throw ShapeError("region statistics require a 1-channel image");
    if (!region.same_shape(img))
        throw ShapeError("region dimensions do not match image");
}

} // namespace

ImageBuffer to_grayscale(const ImageBuffer& img) {
    if (img.channels() != 3)
        throw ShapeError("to_grayscale expects a 3-channel image");
    ImageBuffer out(img.width(), img.height(), 1);
    const uint8_t* src = img.data().data();
    uint8_t* dst = out.data().data();
    const std::size_t n = img.pixel_count();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const uint8_t* p = src + 3 * i;
        dst[i] = round_clamp(0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]);
    }
    return out;
}

ImageBuffer to_rgb(const ImageBuffer& img) {
    if (img.channels() == 3) return img;
    ImageBuffer out(img.width(), img.height(), 3);
    const uint8_t* src = img.data().data();
    uint8_t* dst = out.data().data();
    const std::size_t n = img.pixel_count();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        dst[3 * i] = src[i];
        dst[3 * i + 1] = src[i];
        dst[3 * i + 2] = src[i];
    }
    return out;
}

ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma) {
    if (!(sigma > 0.0))
        throw ParamError("gaussian_blur requires sigma > 0");
    const std::vector<float> kernel = gaussian_kernel(sigma);
    const int half = static_cast<int>(kernel.size() / 2);
    const int w = img.width(), h = img.height(), ch = img.channels();

    // Horizontal pass into a float plane so only one rounding happens.
    std::vector<float> mid(static_cast<std::size_t>(w) * h * ch);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                float acc = 0.0f;
                for (int k = -half; k <= half; ++k)
                    acc += kernel[k + half] *
                           static_cast<float>(img.at_clamped(x + k, y, c));
                mid[img.index(x, y, c)] = acc;
            }
        }
    }

    ImageBuffer out(w, h, ch);
    uint8_t* dst = out.data().data();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                float acc = 0.0f;
                for (int k = -half; k <= half; ++k) {
                    const int yy = std::clamp(y + k, 0, h - 1);
                    acc += kernel[k + half] * mid[img.index(x, yy, c)];
                }
                dst[img.index(x, y, c)] = round_clamp(acc);
            }
        }
    }
    return out;
}

ImageBuffer enhance_contrast(const ImageBuffer& img, double factor) {
    if (!(factor > 0.0))
        throw ParamError("enhance_contrast requires factor > 0");
    const auto lut = contrast_lut(factor);
    ImageBuffer out(img.width(), img.height(), img.channels());
    const uint8_t* src = img.data().data();
    uint8_t* dst = out.data().data();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(img.data().size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        dst[i] = lut[src[i]];
    return out;
}

double region_rms(const ImageBuffer& img, const PixelRegion& region, bool normalized) {
    check_region(img, region);
    const int w = img.width(), h = img.height();
    const uint8_t* src = img.data().data();
    const double scale = normalized ? 1.0 / 255.0 : 1.0;

    double sum = 0.0;
    std::size_t n = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum, n)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!region.contains(x, y)) continue;
            sum += src[static_cast<std::size_t>(y) * w + x] * scale;
            ++n;
        }
    }
    if (n == 0)
        throw EmptyRegionError("region_rms over an empty region");
    const double mean = sum / static_cast<double>(n);

    double sq = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sq)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!region.contains(x, y)) continue;
            const double d = src[static_cast<std::size_t>(y) * w + x] * scale - mean;
            sq += d * d;
        }
    }
    return std::sqrt(sq / static_cast<double>(n));
}

double region_brightness(const ImageBuffer& img, const PixelRegion& region) {
    check_region(img, region);
    const int w = img.width(), h = img.height();
    const uint8_t* src = img.data().data();

    double sum = 0.0;
    std::size_t n = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum, n)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!region.contains(x, y)) continue;
            sum += src[static_cast<std::size_t>(y) * w + x];
            ++n;
        }
    }
    if (n == 0)
        throw EmptyRegionError("region_brightness over an empty region");
    return sum / static_cast<double>(n);
}

ExtremaReport locate_extrema(const ImageBuffer& img) {
    if (img.channels() != 1)
        throw ShapeError("locate_extrema expects a 1-channel image");
    const uint8_t* src = img.data().data();
    const std::size_t n = img.pixel_count();
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (src[i] > src[imax]) imax = i;
        if (src[i] < src[imin]) imin = i;
    }
    ExtremaReport r;
    r.brightest_x = static_cast<int>(imax % img.width());
    r.brightest_y = static_cast<int>(imax / img.width());
    r.darkest_x = static_cast<int>(imin % img.width());
    r.darkest_y = static_cast<int>(imin / img.width());
    r.brightest_value = src[imax];
    r.darkest_value = src[imin];
    return r;
}

namespace reference {

ImageBuffer to_grayscale(const ImageBuffer& img) {
    if (img.channels() != 3)
        throw ShapeError("to_grayscale expects a 3-channel image");
    ImageBuffer out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double lum = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                               0.114 * img.at(x, y, 2);
            out.set(x, y, 0, round_clamp(lum));
        }
    }
    return out;
}

ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma) {
    if (!(sigma > 0.0))
        throw ParamError("gaussian_blur requires sigma > 0");
    const std::vector<float> kernel = gaussian_kernel(sigma);
    const int half = static_cast<int>(kernel.size() / 2);
    const int w = img.width(), h = img.height(), ch = img.channels();

    std::vector<float> mid(static_cast<std::size_t>(w) * h * ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                float acc = 0.0f;
                for (int k = -half; k <= half; ++k)
                    acc += kernel[k + half] *
                           static_cast<float>(img.at_clamped(x + k, y, c));
                mid[img.index(x, y, c)] = acc;
            }

    ImageBuffer out(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                float acc = 0.0f;
                for (int k = -half; k <= half; ++k) {
                    const int yy = std::clamp(y + k, 0, h - 1);
                    acc += kernel[k + half] * mid[img.index(x, yy, c)];
                }
                out.set(x, y, c, round_clamp(acc));
            }
    return out;
}

ImageBuffer enhance_contrast(const ImageBuffer& img, double factor) {
    if (!(factor > 0.0))
        throw ParamError("enhance_contrast requires factor > 0");
    ImageBuffer out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < img.channels(); ++c)
                out.set(x, y, c, round_clamp(128.0 + factor * (img.at(x, y, c) - 128.0)));
    return out;
}

double region_rms(const ImageBuffer& img, const PixelRegion& region, bool normalized) {
    check_region(img, region);
    const double scale = normalized ? 1.0 / 255.0 : 1.0;
    double sum = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (region.contains(x, y)) {
                sum += img.at(x, y) * scale;
                ++n;
            }
    if (n == 0)
        throw EmptyRegionError("region_rms over an empty region");
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (region.contains(x, y)) {
                const double d = img.at(x, y) * scale - mean;
                sq += d * d;
            }
    return std::sqrt(sq / static_cast<double>(n));
}

double region_brightness(const ImageBuffer& img, const PixelRegion& region) {
    check_region(img, region);
    double sum = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (region.contains(x, y)) {
                sum += img.at(x, y);
                ++n;
            }
    if (n == 0)
        throw EmptyRegionError("region_brightness over an empty region");
    return sum / static_cast<double>(n);
}

} // namespace reference

} // namespace dca
