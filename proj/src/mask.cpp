#include "dca/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dca/image_ops.hpp"

namespace dca {

std::string to_string(DcaSizeCategory c) {
    switch (c) {
        case DcaSizeCategory::Small: return "small";
        case DcaSizeCategory::Medium: return "medium";
        case DcaSizeCategory::Large: return "large";
        case DcaSizeCategory::Other: return "other";
    }
    return "other";
}

DcaSizeCategory category_from_string(const std::string& s) {
    if (s == "small") return DcaSizeCategory::Small;
    if (s == "medium") return DcaSizeCategory::Medium;
    if (s == "large") return DcaSizeCategory::Large;
    if (s == "other") return DcaSizeCategory::Other;
    throw ParamError("unknown DCA size category '" + s + "'");
}

void CategoryThresholds::validate() const {
    if (!(other_max > 0.0 && other_max < small_max && small_max < medium_max &&
          medium_max < 1.0))
        throw ParamError("category thresholds must be strictly ascending in (0,1)");
}

DcaMask render_mask(const Circle& circle, int width, int height) {
    if (width < 1 || height < 1)
        throw ParamError("render_mask dimensions must be positive");
    ImageBuffer raster(width, height, 1);
    uint8_t* data = raster.data().data();
    std::size_t dark = 0;
#pragma omp parallel for schedule(static) reduction(+ : dark)
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const bool inside = circle.contains(x, y);
            data[static_cast<std::size_t>(y) * width + x] = inside ? 255 : 0;
            if (!inside) ++dark;
        }
    }
    const double fraction =
        static_cast<double>(dark) / (static_cast<double>(width) * height);
    return DcaMask{std::move(raster), circle, fraction};
}

namespace {

struct FitResult {
    double cx, cy, r;
};

// Least-squares circle through (x_i, y_i): minimises the algebraic distance
// sum((x^2 + y^2 + D x + E y + F)^2). Points are centred first to keep the
// normal equations well conditioned. Returns false when degenerate
// (collinear or too few points).
bool fit_circle(const std::vector<double>& xs, const std::vector<double>& ys,
                FitResult& out) {
    const std::size_t n = xs.size();
    if (n < 3) return false;
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;

    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxz = 0, syz = 0, sz = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i] - mx, y = ys[i] - my;
        const double z = x * x + y * y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        sx += x;
        sy += y;
        sxz += x * z;
        syz += y * z;
        sz += z;
    }

    double A[3][4] = {{sxx, sxy, sx, -sxz},
                      {sxy, syy, sy, -syz},
                      {sx, sy, static_cast<double>(n), -sz}};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) < 1e-12) return false;
        std::swap(A[col], A[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c) A[r][c] -= f * A[col][c];
        }
    }
    const double D = A[0][3] / A[0][0];
    const double E = A[1][3] / A[1][1];
    const double F = A[2][3] / A[2][2];

    const double cx = -D / 2.0, cy = -E / 2.0;
    const double r2 = cx * cx + cy * cy - F;
    if (!(r2 > 0.0) || !std::isfinite(r2)) return false;
    out = {cx + mx, cy + my, std::sqrt(r2)};
    return true;
}

} // namespace

DcaMask detect_dca_circle(const ImageBuffer& img, const DetectParams& params) {
    if (img.width() < 32 || img.height() < 32)
        throw ParamError("detect_dca_circle requires an image of at least 32x32");

    const ImageBuffer gray = img.channels() == 3 ? to_grayscale(img) : img;
    const int w = gray.width(), h = gray.height();
    const auto is_dark = [&](int x, int y) {
        return gray.at(x, y) <= params.dark_threshold;
    };

    // Flood the dark components that touch the image border; the DCA always
    // reaches the corners while dark lesion blobs rarely reach any edge.
    std::vector<uint8_t> edge_dark(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::pair<int, int>> stack;
    const auto push = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!edge_dark[i] && is_dark(x, y)) {
            edge_dark[i] = 1;
            stack.emplace_back(x, y);
        }
    };
    for (int x = 0; x < w; ++x) {
        push(x, 0);
        push(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push(0, y);
        push(w - 1, y);
    }
    std::size_t dark_count = stack.size();
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                const std::size_t i = static_cast<std::size_t>(ny) * w + nx;
                if (!edge_dark[i] && is_dark(nx, ny)) {
                    edge_dark[i] = 1;
                    stack.emplace_back(nx, ny);
                    ++dark_count;
                }
            }
    }

    const double total = static_cast<double>(w) * h;
    if (static_cast<double>(dark_count) < params.min_dark_fraction * total)
        throw NoDcaDetected("dark edge-connected area below " +
                            std::to_string(params.min_dark_fraction * 100.0) +
                            "% of the image");

    // Boundary samples: dark pixels with a bright 4-neighbour.
    std::vector<double> xs, ys;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!edge_dark[static_cast<std::size_t>(y) * w + x]) continue;
            const bool bright_nbr =
                (x > 0 && !is_dark(x - 1, y)) || (x + 1 < w && !is_dark(x + 1, y)) ||
                (y > 0 && !is_dark(x, y - 1)) || (y + 1 < h && !is_dark(x, y + 1));
            if (bright_nbr) {
                xs.push_back(x);
                ys.push_back(y);
            }
        }

    FitResult fit{};
    if (!fit_circle(xs, ys, fit))
        throw NoDcaDetected("degenerate circle fit (no dark/bright boundary)");

    // Trim the worst 10% of residuals once and refit; stray dark blobs that
    // merged with the rim otherwise skew the circle.
    std::vector<double> resid(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        resid[i] = std::abs(std::hypot(xs[i] - fit.cx, ys[i] - fit.cy) - fit.r);
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return resid[a] < resid[b]; });
    const std::size_t keep = std::max<std::size_t>(3, xs.size() * 9 / 10);
    std::vector<double> kx(keep), ky(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        kx[i] = xs[order[i]];
        ky[i] = ys[order[i]];
    }
    FitResult refit{};
    if (fit_circle(kx, ky, refit)) fit = refit;

    double rms = 0.0;
    for (std::size_t i = 0; i < keep; ++i) {
        const double d = std::hypot(kx[i] - fit.cx, ky[i] - fit.cy) - fit.r;
        rms += d * d;
    }
    rms = std::sqrt(rms / static_cast<double>(keep));
    if (rms > params.fit_tolerance)
        throw NoDcaDetected("circle fit residual " + std::to_string(rms) +
                            " px exceeds tolerance");

    // Boundary samples are centres of dark pixels, half a pixel outside the
    // true lens edge.
    const double radius = fit.r - 0.5;
    if (!(radius > 0.0))
        throw NoDcaDetected("fitted radius collapsed to zero");
    return render_mask(Circle(fit.cx, fit.cy, radius), w, h);
}

DcaSizeCategory categorize(double area_fraction, const CategoryThresholds& t) {
    t.validate();
    if (area_fraction < t.other_max) return DcaSizeCategory::Other;
    if (area_fraction < t.small_max) return DcaSizeCategory::Small;
    if (area_fraction < t.medium_max) return DcaSizeCategory::Medium;
    return DcaSizeCategory::Large;
}

DcaSizeCategory categorize(const DcaMask& mask, const CategoryThresholds& t) {
    return categorize(mask.area_fraction, t);
}

} // namespace dca
