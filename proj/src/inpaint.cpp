#include "dca/inpaint.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "dca/image_io.hpp"

namespace dca {

InpaintMethod inpaint_method_from_string(const std::string& s) {
    if (s == "telea") return InpaintMethod::Telea;
    if (s == "ns" || s == "navier-stokes") return InpaintMethod::NavierStokes;
    throw ParamError("unknown inpaint method '" + s + "'");
}

std::string to_string(InpaintMethod m) {
    return m == InpaintMethod::Telea ? "telea" : "ns";
}

void InpaintRequest::validate() const {
    if (!hole.same_shape(image))
        throw ShapeError("inpaint hole dimensions do not match image");
    if (!(inpaint_radius >= 1.0))
        throw ParamError("inpaint_radius must be at least 1 pixel");
    if (ns_iterations < 1)
        throw ParamError("ns_iterations must be at least 1");
    if (!(ns_dt > 0.0))
        throw ParamError("ns_dt must be positive");
    if (hole.count() == image.pixel_count())
        throw NoBoundaryError("hole covers the entire image; nothing known to fill from");
}

namespace {

constexpr uint8_t kKnown = 0, kBand = 1, kInside = 2;
constexpr float kInf = 1e6f;

struct HeapNode {
    float t;
    int idx;
    bool operator>(const HeapNode& o) const { return t > o.t; }
};
using MinHeap =
    std::priority_queue<HeapNode, std::vector<HeapNode>, std::greater<HeapNode>>;

float eikonal_pair(float a, float b) {
    if (a > b) std::swap(a, b);
    if (a >= kInf) return kInf;
    if (b >= kInf || b - a >= 1.0f) return a + 1.0f;
    return 0.5f * (a + b + std::sqrt(2.0f - (b - a) * (b - a)));
}

// Arrival time at (x, y) from the finalized neighbour values in `t`;
// neighbours flagged INSIDE are unusable.
float eikonal_solve(int x, int y, int w, int h, const std::vector<float>& t,
                    const std::vector<uint8_t>& flags) {
    const auto value = [&](int xx, int yy) -> float {
        if (xx < 0 || yy < 0 || xx >= w || yy >= h) return kInf;
        const std::size_t i = static_cast<std::size_t>(yy) * w + xx;
        return flags[i] == kInside ? kInf : std::max(t[i], 0.0f);
    };
    const float a = std::min(value(x - 1, y), value(x + 1, y));
    const float b = std::min(value(x, y - 1), value(x, y + 1));
    return eikonal_pair(a, b);
}

constexpr int kDx[4] = {-1, 1, 0, 0};
constexpr int kDy[4] = {0, 0, -1, 1};

// Truncated fast-marching distance from the seed set across `walkable`
// pixels (4-connectivity).
std::vector<float> fmm_distance(int w, int h, const std::vector<uint8_t>& walkable,
                                const std::vector<int>& seeds, float t_max) {
    std::vector<float> dist(static_cast<std::size_t>(w) * h, kInf);
    MinHeap heap;
    for (int s : seeds) {
        dist[s] = 0.0f;
        heap.push({0.0f, s});
    }
    while (!heap.empty()) {
        const auto [t, p] = heap.top();
        heap.pop();
        if (t != dist[p] || t > t_max) continue;
        const int px = p % w, py = p / w;
        for (int k = 0; k < 4; ++k) {
            const int nx = px + kDx[k], ny = py + kDy[k];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const int q = ny * w + nx;
            if (!walkable[q]) continue;
            const float ax = std::min(nx > 0 ? dist[q - 1] : kInf,
                                      nx + 1 < w ? dist[q + 1] : kInf);
            const float ay = std::min(ny > 0 ? dist[q - w] : kInf,
                                      ny + 1 < h ? dist[q + w] : kInf);
            const float nd = eikonal_pair(ax, ay);
            if (nd < dist[q]) {
                dist[q] = nd;
                heap.push({nd, q});
            }
        }
    }
    return dist;
}

struct DiskOffset {
    int dx, dy;
};

std::vector<DiskOffset> disk_offsets(double radius) {
    std::vector<DiskOffset> out;
    const int r = static_cast<int>(std::floor(radius));
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (dx * dx + dy * dy <= radius * radius) out.push_back({dx, dy});
        }
    return out;
}

uint8_t round_clamp_u8(float v) {
    const long r = std::lround(v);
    return static_cast<uint8_t>(std::clamp(r, 0L, 255L));
}

struct TeleaField {
    int w = 0, h = 0, ch = 0;
    std::vector<std::vector<float>> planes;  // per channel, floats
    std::vector<uint8_t> hole;               // 1 = filled pixel
};

// Fast-marching fill on float planes. Returns the filled planes plus the
// hole map so the NS refinement can keep iterating on them.
TeleaField telea_fill(const InpaintRequest& req) {
    const int w = req.image.width(), h = req.image.height(), ch = req.image.channels();
    const std::size_t n = static_cast<std::size_t>(w) * h;

    TeleaField field;
    field.w = w;
    field.h = h;
    field.ch = ch;
    field.hole.assign(n, 0);
    field.planes.assign(ch, std::vector<float>(n));
    for (int c = 0; c < ch; ++c) {
        auto& plane = field.planes[c];
        const uint8_t* src = req.image.data().data();
        for (std::size_t i = 0; i < n; ++i) plane[i] = src[i * ch + c];
    }

    std::vector<uint8_t> flags(n, kKnown);
    std::size_t hole_count = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (req.hole.contains(x, y)) {
                flags[static_cast<std::size_t>(y) * w + x] = kInside;
                field.hole[static_cast<std::size_t>(y) * w + x] = 1;
                ++hole_count;
            }
    if (hole_count == 0) return field;

    // Initial band: known pixels 4-adjacent to the hole.
    std::vector<int> band;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (flags[i] != kKnown) continue;
            for (int k = 0; k < 4; ++k) {
                const int nx = x + kDx[k], ny = y + kDy[k];
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (flags[static_cast<std::size_t>(ny) * w + nx] == kInside) {
                    band.push_back(static_cast<int>(i));
                    break;
                }
            }
        }
    if (band.empty())
        throw NoBoundaryError("hole has no known boundary");

    // Level-set coordinates on the known side: distance from the band,
    // negated, truncated a little past the averaging radius.
    const float t_cut = static_cast<float>(req.inpaint_radius) + 2.0f;
    std::vector<uint8_t> known_side(n);
    for (std::size_t i = 0; i < n; ++i) known_side[i] = flags[i] != kInside;
    const std::vector<float> known_dist = fmm_distance(w, h, known_side, band, t_cut);

    std::vector<float> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (flags[i] == kInside)
            t[i] = kInf;
        else
            t[i] = known_dist[i] >= kInf ? -t_cut : -known_dist[i];
    }

    MinHeap heap;
    for (int b : band) {
        flags[b] = kBand;
        t[b] = 0.0f;
        heap.push({0.0f, b});
    }

    const std::vector<DiskOffset> offsets = disk_offsets(req.inpaint_radius);

    // One-sided/central difference of t at a band pixel, over usable
    // neighbours only.
    const auto grad_t = [&](int x, int y, float& gx, float& gy) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const auto usable = [&](int xx, int yy) {
            return xx >= 0 && yy >= 0 && xx < w && yy < h &&
                   flags[static_cast<std::size_t>(yy) * w + xx] != kInside;
        };
        if (usable(x - 1, y) && usable(x + 1, y))
            gx = 0.5f * (t[i + 1] - t[i - 1]);
        else if (usable(x + 1, y))
            gx = t[i + 1] - t[i];
        else if (usable(x - 1, y))
            gx = t[i] - t[i - 1];
        else
            gx = 0.0f;
        if (usable(x, y - 1) && usable(x, y + 1))
            gy = 0.5f * (t[i + w] - t[i - w]);
        else if (usable(x, y + 1))
            gy = t[i + w] - t[i];
        else if (usable(x, y - 1))
            gy = t[i] - t[i - w];
        else
            gy = 0.0f;
    };

    const auto fill_pixel = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        float gtx, gty;
        grad_t(x, y, gtx, gty);

        for (int c = 0; c < ch; ++c) {
            auto& plane = field.planes[c];
            double num = 0.0, den = 0.0;
            float lo = 255.0f, hi = 0.0f;
            for (const auto& off : offsets) {
                const int qx = x + off.dx, qy = y + off.dy;
                if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
                const std::size_t q = static_cast<std::size_t>(qy) * w + qx;
                if (flags[q] == kInside) continue;

                const float rx = static_cast<float>(-off.dx);  // q -> p
                const float ry = static_cast<float>(-off.dy);
                const float len2 = rx * rx + ry * ry;
                const float len = std::sqrt(len2);

                float dir = std::fabs(rx * gtx + ry * gty) / len;
                if (dir < 1e-6f) dir = 1e-6f;
                const float dst = 1.0f / len2;
                const float lev = 1.0f / (1.0f + std::fabs(t[i] - t[q]));
                const float wgt = dir * dst * lev;

                // Intensity gradient at q over usable pixels for the
                // first-order extrapolation term.
                const auto val = [&](int xx, int yy) -> float {
                    return plane[static_cast<std::size_t>(yy) * w + xx];
                };
                const auto usable = [&](int xx, int yy) {
                    return xx >= 0 && yy >= 0 && xx < w && yy < h &&
                           flags[static_cast<std::size_t>(yy) * w + xx] != kInside;
                };
                float gix = 0.0f, giy = 0.0f;
                if (usable(qx - 1, qy) && usable(qx + 1, qy))
                    gix = 0.5f * (val(qx + 1, qy) - val(qx - 1, qy));
                else if (usable(qx + 1, qy))
                    gix = val(qx + 1, qy) - val(qx, qy);
                else if (usable(qx - 1, qy))
                    gix = val(qx, qy) - val(qx - 1, qy);
                if (usable(qx, qy - 1) && usable(qx, qy + 1))
                    giy = 0.5f * (val(qx, qy + 1) - val(qx, qy - 1));
                else if (usable(qx, qy + 1))
                    giy = val(qx, qy + 1) - val(qx, qy);
                else if (usable(qx, qy - 1))
                    giy = val(qx, qy) - val(qx, qy - 1);

                const float v = plane[q];
                num += static_cast<double>(wgt) * (v + gix * rx + giy * ry);
                den += wgt;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            // den > 0: the popped band neighbour is always usable. The clamp
            // to the consulted range keeps the fill inside the local known
            // band (maximum principle).
            const float est = static_cast<float>(num / den);
            plane[i] = std::clamp(est, lo, hi);
        }
    };

    while (!heap.empty()) {
        const auto [pt, p] = heap.top();
        heap.pop();
        if (flags[p] != kBand || pt != t[p]) continue;
        flags[p] = kKnown;
        const int px = p % w, py = p / w;
        for (int k = 0; k < 4; ++k) {
            const int nx = px + kDx[k], ny = py + kDy[k];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
            if (flags[q] == kInside) {
                t[q] = eikonal_solve(nx, ny, w, h, t, flags);
                fill_pixel(nx, ny);
                flags[q] = kBand;
                heap.push({t[q], static_cast<int>(q)});
            } else if (flags[q] == kBand) {
                const float nt = eikonal_solve(nx, ny, w, h, t, flags);
                if (nt < t[q]) {
                    t[q] = nt;
                    heap.push({nt, static_cast<int>(q)});
                }
            }
        }
    }
    return field;
}

ImageBuffer field_to_image(const InpaintRequest& req, const TeleaField& field) {
    ImageBuffer out = req.image;
    uint8_t* dst = out.data().data();
    const std::size_t n = static_cast<std::size_t>(field.w) * field.h;
    for (std::size_t i = 0; i < n; ++i) {
        if (!field.hole[i]) continue;  // known pixels stay bit-exact
        for (int c = 0; c < field.ch; ++c)
            dst[i * field.ch + c] = round_clamp_u8(field.planes[c][i]);
    }
    return out;
}

} // namespace

InpaintResult inpaint_telea(const InpaintRequest& req) {
    req.validate();
    const TeleaField field = telea_fill(req);
    return InpaintResult{field_to_image(req, field), true, 0};
}

InpaintResult inpaint_navier_stokes(const InpaintRequest& req) {
    req.validate();
    TeleaField field = telea_fill(req);
    const int w = field.w, h = field.h;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<std::size_t> hole_px;
    for (std::size_t i = 0; i < n; ++i)
        if (field.hole[i]) hole_px.push_back(i);
    if (hole_px.empty())
        return InpaintResult{field_to_image(req, field), true, 0};

    // Laplacian is needed on the hole plus a one-pixel collar.
    std::vector<uint8_t> active(n, 0);
    for (std::size_t i : hole_px) {
        const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
        active[i] = 1;
        for (int k = 0; k < 4; ++k) {
            const int nx = std::clamp(x + kDx[k], 0, w - 1);
            const int ny = std::clamp(y + kDy[k], 0, h - 1);
            active[static_cast<std::size_t>(ny) * w + nx] = 1;
        }
    }
    std::vector<std::size_t> active_px;
    for (std::size_t i = 0; i < n; ++i)
        if (active[i]) active_px.push_back(i);

    const float dt = static_cast<float>(req.ns_dt);
    constexpr float kConvergedAt = 0.01f;
    constexpr float kStepLimit = 5.0f;
    constexpr int kDiffuseEvery = 6;
    constexpr float kDiffuseLambda = 0.15f;
    constexpr float kEdgeK = 10.0f;

    std::vector<float> lap(n, 0.0f);
    std::vector<float> delta(hole_px.size());
    bool converged = false;
    int iterations = 0;

    const auto clamped_at = [&](const std::vector<float>& plane, int x, int y) {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return plane[static_cast<std::size_t>(y) * w + x];
    };

    for (int iter = 0; iter < req.ns_iterations && !converged; ++iter) {
        float max_update = 0.0f;
        for (int c = 0; c < field.ch; ++c) {
            auto& plane = field.planes[c];

            for (std::size_t i : active_px) {
                const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
                lap[i] = clamped_at(plane, x + 1, y) + clamped_at(plane, x - 1, y) +
                         clamped_at(plane, x, y + 1) + clamped_at(plane, x, y - 1) -
                         4.0f * plane[i];
            }

            // Transport the smoothness estimate along isophotes.
            for (std::size_t k = 0; k < hole_px.size(); ++k) {
                const std::size_t i = hole_px[k];
                const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);

                const float dlx = clamped_at(lap, x + 1, y) - clamped_at(lap, x - 1, y);
                const float dly = clamped_at(lap, x, y + 1) - clamped_at(lap, x, y - 1);
                const float ix = 0.5f * (clamped_at(plane, x + 1, y) -
                                         clamped_at(plane, x - 1, y));
                const float iy = 0.5f * (clamped_at(plane, x, y + 1) -
                                         clamped_at(plane, x, y - 1));
                const float norm = std::sqrt(ix * ix + iy * iy) + 1e-8f;
                const float beta = (dlx * -iy + dly * ix) / norm;

                const float fxb = plane[i] - clamped_at(plane, x - 1, y);
                const float fxf = clamped_at(plane, x + 1, y) - plane[i];
                const float fyb = plane[i] - clamped_at(plane, x, y - 1);
                const float fyf = clamped_at(plane, x, y + 1) - plane[i];
                float slope;
                if (beta > 0.0f)
                    slope = std::sqrt(std::min(fxb, 0.0f) * std::min(fxb, 0.0f) +
                                      std::max(fxf, 0.0f) * std::max(fxf, 0.0f) +
                                      std::min(fyb, 0.0f) * std::min(fyb, 0.0f) +
                                      std::max(fyf, 0.0f) * std::max(fyf, 0.0f));
                else
                    slope = std::sqrt(std::max(fxb, 0.0f) * std::max(fxb, 0.0f) +
                                      std::min(fxf, 0.0f) * std::min(fxf, 0.0f) +
                                      std::max(fyb, 0.0f) * std::max(fyb, 0.0f) +
                                      std::min(fyf, 0.0f) * std::min(fyf, 0.0f));

                const float upd =
                    std::clamp(dt * beta * slope, -kStepLimit, kStepLimit);
                delta[k] = upd;
                max_update = std::max(max_update, std::fabs(upd));
            }
            for (std::size_t k = 0; k < hole_px.size(); ++k)
                plane[hole_px[k]] =
                    std::clamp(plane[hole_px[k]] + delta[k], 0.0f, 255.0f);

            // Edge-preserving diffusion pass, interleaved.
            if (iter % kDiffuseEvery == kDiffuseEvery - 1) {
                for (std::size_t k = 0; k < hole_px.size(); ++k) {
                    const std::size_t i = hole_px[k];
                    const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
                    float flux = 0.0f;
                    for (int d = 0; d < 4; ++d) {
                        const float diff =
                            clamped_at(plane, x + kDx[d], y + kDy[d]) - plane[i];
                        const float g = 1.0f / (1.0f + (diff / kEdgeK) * (diff / kEdgeK));
                        flux += g * diff;
                    }
                    delta[k] = kDiffuseLambda * flux;
                    max_update = std::max(max_update, std::fabs(delta[k]));
                }
                for (std::size_t k = 0; k < hole_px.size(); ++k)
                    plane[hole_px[k]] =
                        std::clamp(plane[hole_px[k]] + delta[k], 0.0f, 255.0f);
            }
        }
        iterations = iter + 1;
        if (max_update < kConvergedAt) converged = true;
    }

    return InpaintResult{field_to_image(req, field), converged, iterations};
}

InpaintResult inpaint(const InpaintRequest& req) {
    return req.method == InpaintMethod::Telea ? inpaint_telea(req)
                                              : inpaint_navier_stokes(req);
}

std::vector<InpaintRowReport> inpaint_batch(const std::vector<InpaintJob>& jobs,
                                            const std::filesystem::path& out_dir,
                                            const InpaintBatchOptions& options) {
    if (jobs.empty())
        throw DataError("inpaint batch received an empty manifest");
    std::filesystem::create_directories(out_dir);
    std::vector<InpaintRowReport> reports(jobs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i) {
        const InpaintJob& job = jobs[i];
        InpaintRowReport& rep = reports[i];
        rep.image_id = job.image_id;
        rep.method = to_string(options.method);
        const auto start = std::chrono::steady_clock::now();
        try {
            const ImageBuffer img = read_image(job.image_path);
            const ImageBuffer mask = read_image(job.mask_path);
            if (mask.channels() != 1)
                throw DataError("mask must be single-channel: " + job.mask_path.string());
            if (mask.width() != img.width() || mask.height() != img.height())
                throw ShapeError("mask dimensions do not match image for " + job.image_id);

            PixelRegion hole(img.width(), img.height());
            for (int y = 0; y < img.height(); ++y)
                for (int x = 0; x < img.width(); ++x) {
                    const uint8_t v = mask.at(x, y);
                    if (v != 0 && v != 255)
                        throw DataError("mask is not binary (0/255) for " + job.image_id);
                    if (v == 0) hole.set(x, y, true);
                }
            if (options.hole_dilation_px > 0 && hole.count() > 0)
                hole = hole.dilated(options.hole_dilation_px);

            InpaintRequest req{img, hole, options.method, options.inpaint_radius,
                               options.ns_iterations, options.ns_dt};
            const InpaintResult result = inpaint(req);
            write_png(out_dir / (job.image_id + ".png"), result.image);

            rep.fill_pixels = hole.count();
            rep.converged = result.converged;
            rep.ok = true;
        } catch (const std::exception& e) {
            rep.ok = false;
            rep.error = e.what();
        }
        rep.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
    }
    return reports;
}

} // namespace dca
