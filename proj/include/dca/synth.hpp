#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dca/image.hpp"
#include "dca/mask.hpp"

namespace dca {

// Blend parameters for the realistic artifact: sigma is the Gaussian blur
// width and radius_reduction shrinks the lens circle to form the inner
// boundary of the transition band. Defaults derive from the circle radius.
struct RealisticDcaParams {
    double sigma;
    double radius_reduction;

    static RealisticDcaParams defaults_for(const Circle& circle);
    void validate(const Circle& circle) const;
};

enum class SynthMode { Binary, Realistic };

SynthMode synth_mode_from_string(const std::string& s);
std::string to_string(SynthMode mode);

// Hard-edged artifact: pixels inside the closed disk are copied verbatim,
// everything else becomes pure black.
ImageBuffer superimpose_binary(const ImageBuffer& img, const Circle& circle);

// Soft artifact: blur the binary composite, then keep the original pixels
// inside the reduced circle and the blurred pixels everywhere else, giving
// a smooth transition band between content and black.
ImageBuffer superimpose_realistic(const ImageBuffer& img, const Circle& circle,
                                  const RealisticDcaParams& params);
ImageBuffer superimpose_realistic(const ImageBuffer& img, const Circle& circle);

struct SampledCircle {
    Circle circle;
    double area_fraction;
};

// Draws a circle whose rendered DCA area fraction lands inside the given
// category band. Deterministic for a fixed rng seed. Throws DataError when
// the band cannot be hit for this image size.
SampledCircle sample_circle_in_band(uint64_t rng_seed, int width, int height,
                                    DcaSizeCategory band,
                                    const CategoryThresholds& thresholds = {});

// One input row for batch superimposition.
struct SynthJob {
    std::string image_id;
    std::filesystem::path input_path;
};

struct SynthRowResult {
    std::string image_id;
    bool ok = false;
    std::string error;
    double cx = 0, cy = 0, radius = 0;
    std::optional<double> sigma;
    std::optional<double> radius_reduction;
    double area_fraction = 0;
    DcaSizeCategory category = DcaSizeCategory::Other;
};

struct SynthBatchOptions {
    SynthMode mode = SynthMode::Realistic;
    DcaSizeCategory band = DcaSizeCategory::Large;
    uint64_t seed = 0;
    CategoryThresholds thresholds;
    // When set, override the per-circle defaults.
    std::optional<double> sigma;
    std::optional<double> radius_reduction;
};

// Applies the selected mode to every job, writing <image_id>.png under
// out_dir. Unreadable inputs are recorded per row and the batch continues;
// zero successful rows is an error. Fully reproducible from the seed.
std::vector<SynthRowResult> batch_superimpose(const std::vector<SynthJob>& jobs,
                                              const std::filesystem::path& out_dir,
                                              const SynthBatchOptions& options);

} // namespace dca
