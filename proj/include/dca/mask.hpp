#pragma once

#include <string>

#include "dca/image.hpp"

namespace dca {

// Circle in pixel coordinates. The centre may lie outside the image (large
// lens circles often do); the radius must be positive.
class Circle {
public:
    Circle(double cx, double cy, double radius) : cx_(cx), cy_(cy), radius_(radius) {
        if (!(radius > 0.0))
            throw ParamError("Circle radius must be positive");
    }

    double cx() const { return cx_; }
    double cy() const { return cy_; }
    double radius() const { return radius_; }

    // Closed-disk membership test used everywhere a mask is rendered.
    bool contains(int x, int y) const {
        const double dx = x - cx_, dy = y - cy_;
        return dx * dx + dy * dy <= radius_ * radius_;
    }

private:
    double cx_, cy_, radius_;
};

// Binary lens mask: raster value 255 = inside the lens circle (image
// content), 0 = dark corner artifact. area_fraction is the exact count of
// 0-valued pixels divided by width*height.
struct DcaMask {
    ImageBuffer raster;
    Circle circle;
    double area_fraction;
};

enum class DcaSizeCategory { Small, Medium, Large, Other };

std::string to_string(DcaSizeCategory c);
DcaSizeCategory category_from_string(const std::string& s);

// Ascending DCA area-fraction cut points. Below `other_max` the artifact is
// too small to matter ("other"); the remaining bands are small, medium and
// large.
struct CategoryThresholds {
    double other_max = 0.01;
    double small_max = 0.10;
    double medium_max = 0.30;

    void validate() const;
};

// Detection knobs. Intensities at or below `dark_threshold` count as DCA
// candidates; `fit_tolerance` bounds the RMS residual of the trimmed circle
// fit, in pixels.
struct DetectParams {
    int dark_threshold = 40;
    double fit_tolerance = 5.0;
    double min_dark_fraction = 0.01;
};

// Renders the closed disk into a 0/255 raster and counts the DCA area.
DcaMask render_mask(const Circle& circle, int width, int height);

// Finds the lens circle of a dark corner artifact: grayscale, dark
// threshold, edge-connected dark components, boundary extraction, trimmed
// least-squares circle fit, mask rendering. Throws NoDcaDetected when no
// plausible circle exists.
DcaMask detect_dca_circle(const ImageBuffer& img, const DetectParams& params = {});

DcaSizeCategory categorize(double area_fraction, const CategoryThresholds& t = {});
DcaSizeCategory categorize(const DcaMask& mask, const CategoryThresholds& t = {});

} // namespace dca
