#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dca/image.hpp"

namespace dca {

enum class InpaintMethod { Telea, NavierStokes };

InpaintMethod inpaint_method_from_string(const std::string& s);
std::string to_string(InpaintMethod m);

struct InpaintRequest {
    ImageBuffer image;
    PixelRegion hole;  // true = pixels to fill (the DCA region)
    InpaintMethod method = InpaintMethod::Telea;
    double inpaint_radius = 5.0;  // neighbourhood for the fast-marching fill
    int ns_iterations = 300;
    double ns_dt = 0.1;

    void validate() const;
};

struct InpaintResult {
    ImageBuffer image;
    bool converged = true;  // NS only; Telea always converges
    int iterations = 0;
};

// Fast-marching fill: hole pixels are visited in increasing distance from
// the boundary and set to a weighted average of already-known neighbour
// estimates within inpaint_radius. Weights combine alignment with the
// marching direction, geometric distance and level-set distance. Pixels
// outside the hole are untouched.
InpaintResult inpaint_telea(const InpaintRequest& req);

// PDE fill warm-started from the Telea result: transports the Laplacian of
// intensity along isophote directions with explicit steps of ns_dt,
// interleaved with anisotropic diffusion, until the largest per-pixel
// update drops below 0.01 levels or ns_iterations is reached.
InpaintResult inpaint_navier_stokes(const InpaintRequest& req);

// Dispatch on req.method.
InpaintResult inpaint(const InpaintRequest& req);

struct InpaintJob {
    std::string image_id;
    std::filesystem::path image_path;
    std::filesystem::path mask_path;
};

struct InpaintRowReport {
    std::string image_id;
    std::string method;
    bool ok = false;
    std::string error;
    std::size_t fill_pixels = 0;
    double seconds = 0.0;
    bool converged = true;
};

struct InpaintBatchOptions {
    InpaintMethod method = InpaintMethod::Telea;
    double inpaint_radius = 5.0;
    int ns_iterations = 300;
    double ns_dt = 0.1;
    // The raw DCA region is grown before filling so the near-black
    // anti-aliased rim of a real artifact does not seed the fill.
    int hole_dilation_px = 2;
};

// For each job: hole = complement of the mask's 255 region, dilated; the
// filled image is written as <image_id>.png under out_dir. Per-row failures
// are recorded and the batch continues.
std::vector<InpaintRowReport> inpaint_batch(const std::vector<InpaintJob>& jobs,
                                            const std::filesystem::path& out_dir,
                                            const InpaintBatchOptions& options);

} // namespace dca
