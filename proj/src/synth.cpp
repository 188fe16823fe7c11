#include "dca/synth.hpp"

#include <algorithm>
#include <cmath>

#include "dca/image_io.hpp"
#include "dca/image_ops.hpp"
#include "dca/rng.hpp"

namespace dca {

RealisticDcaParams RealisticDcaParams::defaults_for(const Circle& circle) {
    const double sigma = std::clamp(circle.radius() / 20.0, 2.0, 15.0);
    return RealisticDcaParams{sigma, std::ceil(3.0 * sigma)};
}

void RealisticDcaParams::validate(const Circle& circle) const {
    if (!(sigma > 0.0))
        throw ParamError("realistic DCA sigma must be positive");
    if (!(radius_reduction > 0.0))
        throw ParamError("radius_reduction must be positive");
    if (circle.radius() - radius_reduction < 1.0)
        throw ParamError("reduced radius must be at least 1 px (radius " +
                         std::to_string(circle.radius()) + ", reduction " +
                         std::to_string(radius_reduction) + ")");
}

SynthMode synth_mode_from_string(const std::string& s) {
    if (s == "binary") return SynthMode::Binary;
    if (s == "realistic") return SynthMode::Realistic;
    throw ParamError("unknown synth mode '" + s + "'");
}

std::string to_string(SynthMode mode) {
    return mode == SynthMode::Binary ? "binary" : "realistic";
}

ImageBuffer superimpose_binary(const ImageBuffer& img, const Circle& circle) {
    ImageBuffer out(img.width(), img.height(), img.channels());
    const uint8_t* src = img.data().data();
    uint8_t* dst = out.data().data();
    const int w = img.width(), h = img.height(), ch = img.channels();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = (static_cast<std::size_t>(y) * w + x) * ch;
            if (circle.contains(x, y))
                for (int c = 0; c < ch; ++c) dst[i + c] = src[i + c];
            else
                for (int c = 0; c < ch; ++c) dst[i + c] = 0;
        }
    }
    return out;
}

ImageBuffer superimpose_realistic(const ImageBuffer& img, const Circle& circle,
                                  const RealisticDcaParams& params) {
    params.validate(circle);
    const ImageBuffer composite = superimpose_binary(img, circle);
    const ImageBuffer blurred = gaussian_blur(composite, params.sigma);
    const Circle reduced(circle.cx(), circle.cy(),
                         circle.radius() - params.radius_reduction);

    ImageBuffer out(img.width(), img.height(), img.channels());
    const uint8_t* orig = img.data().data();
    const uint8_t* soft = blurred.data().data();
    uint8_t* dst = out.data().data();
    const int w = img.width(), h = img.height(), ch = img.channels();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = (static_cast<std::size_t>(y) * w + x) * ch;
            const uint8_t* src = reduced.contains(x, y) ? orig : soft;
            for (int c = 0; c < ch; ++c) dst[i + c] = src[i + c];
        }
    }
    return out;
}

ImageBuffer superimpose_realistic(const ImageBuffer& img, const Circle& circle) {
    return superimpose_realistic(img, circle, RealisticDcaParams::defaults_for(circle));
}

namespace {

// Exact rendered DCA fraction for a candidate circle, same membership
// predicate as render_mask.
double dca_fraction(const Circle& c, int w, int h) {
    std::size_t dark = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (!c.contains(x, y)) ++dark;
    return static_cast<double>(dark) / (static_cast<double>(w) * h);
}

struct Band {
    double lo, hi;  // DCA area fraction, [lo, hi)
};

Band band_for(DcaSizeCategory cat, const CategoryThresholds& t) {
    switch (cat) {
        case DcaSizeCategory::Other: return {0.0, t.other_max};
        case DcaSizeCategory::Small: return {t.other_max, t.small_max};
        case DcaSizeCategory::Medium: return {t.small_max, t.medium_max};
        case DcaSizeCategory::Large: return {t.medium_max, 0.90};
    }
    return {0.0, 1.0};
}

} // namespace

SampledCircle sample_circle_in_band(uint64_t rng_seed, int width, int height,
                                    DcaSizeCategory band,
                                    const CategoryThresholds& thresholds) {
    thresholds.validate();
    Rng rng(rng_seed);
    const Band target = band_for(band, thresholds);
    const double min_wh = std::min(width, height);
    const double area = static_cast<double>(width) * height;

    // Radius window from the full-disk approximation pi r^2 = (1 - f) * area;
    // the window is widened because clipping at the image border shrinks the
    // covered area. Rejection against the exact rendered fraction decides.
    const double r_for = [&](double f) {
        return std::sqrt(std::max(0.02, 1.0 - f) * area / M_PI);
    };
    double r_lo = std::max(8.0, 0.8 * r_for(target.hi));
    double r_hi = std::min(1.05 * min_wh, 1.4 * r_for(target.lo));
    if (band == DcaSizeCategory::Other) r_hi = 1.05 * min_wh;
    if (r_hi <= r_lo) r_hi = r_lo + 2.0;

    // Centres stay near the middle; tight for near-total lens coverage.
    const double spread = band == DcaSizeCategory::Other ? 0.06 : 0.25;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double cx = width * (0.5 + spread * (2.0 * rng.uniform() - 1.0));
        const double cy = height * (0.5 + spread * (2.0 * rng.uniform() - 1.0));
        const double r = rng.uniform(r_lo, r_hi);
        const Circle c(cx, cy, r);
        const double f = dca_fraction(c, width, height);
        if (f >= target.lo && f < target.hi)
            return SampledCircle{c, f};
    }
    throw DataError("could not sample a circle in band '" + to_string(band) +
                    "' for " + std::to_string(width) + "x" + std::to_string(height));
}

std::vector<SynthRowResult> batch_superimpose(const std::vector<SynthJob>& jobs,
                                              const std::filesystem::path& out_dir,
                                              const SynthBatchOptions& options) {
    if (jobs.empty())
        throw DataError("synth batch received an empty manifest");
    options.thresholds.validate();
    for (std::size_t i = 0; i < jobs.size(); ++i)
        for (std::size_t j = i + 1; j < jobs.size(); ++j)
            if (jobs[i].image_id == jobs[j].image_id)
                throw DataError("duplicate image_id '" + jobs[i].image_id +
                                "' in synth manifest");

    std::filesystem::create_directories(out_dir);
    std::vector<SynthRowResult> results(jobs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i) {
        const SynthJob& job = jobs[i];
        SynthRowResult& row = results[i];
        row.image_id = job.image_id;
        try {
            const ImageBuffer img = read_image(job.input_path);
            const uint64_t row_seed = Rng::mix(options.seed, static_cast<uint64_t>(i));
            const SampledCircle sampled = sample_circle_in_band(
                row_seed, img.width(), img.height(), options.band, options.thresholds);

            ImageBuffer out(1, 1, 1);
            if (options.mode == SynthMode::Binary) {
                out = superimpose_binary(img, sampled.circle);
            } else {
                RealisticDcaParams params =
                    RealisticDcaParams::defaults_for(sampled.circle);
                if (options.sigma) params.sigma = *options.sigma;
                if (options.radius_reduction)
                    params.radius_reduction = *options.radius_reduction;
                out = superimpose_realistic(img, sampled.circle, params);
                row.sigma = params.sigma;
                row.radius_reduction = params.radius_reduction;
            }
            write_png(out_dir / (job.image_id + ".png"), out);

            row.cx = sampled.circle.cx();
            row.cy = sampled.circle.cy();
            row.radius = sampled.circle.radius();
            row.area_fraction = sampled.area_fraction;
            row.category = categorize(sampled.area_fraction, options.thresholds);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    }

    const bool any_ok = std::any_of(results.begin(), results.end(),
                                    [](const SynthRowResult& r) { return r.ok; });
    if (!any_ok)
        throw DataError("synth batch produced zero successful rows");
    return results;
}

} // namespace dca
