#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dca/csv.hpp"
#include "dca/image.hpp"
#include "dca/mask.hpp"

namespace dca {

// Per-heatmap region statistics on the raw 0-255 scale. External values are
// absent when the mask has no DCA pixels (the row then carries an explicit
// no-external marker instead of zeros).
struct RegionStatsRow {
    std::string image_id;
    double internal_rms = 0.0;
    double internal_brightness = 0.0;
    std::optional<double> external_rms;
    std::optional<double> external_brightness;
    std::optional<double> rms_diff;         // internal - external
    std::optional<double> brightness_diff;  // internal - external
};

struct GroupKey {
    std::string model;
    std::string test_set;
    std::string dca_size;

    bool operator==(const GroupKey&) const = default;
    bool operator<(const GroupKey& o) const {
        return std::tie(model, test_set, dca_size) < std::tie(o.model, o.test_set, o.dca_size);
    }
};

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population
};

struct GroupAggregate {
    GroupKey key;
    std::size_t n = 0;
    MeanStd internal_rms, external_rms, rms_diff;
    MeanStd internal_brightness, external_brightness, brightness_diff;
};

// internal = lens pixels (raster 255), external = DCA pixels (raster 0);
// together they partition the image exactly.
std::pair<PixelRegion, PixelRegion> split_regions(const DcaMask& mask);

// Region RMS contrast and brightness for both sides of the mask plus their
// internal-minus-external differences. Colour heatmaps are converted to
// grayscale luma first.
RegionStatsRow quantify_heatmap(const ImageBuffer& heatmap, const DcaMask& mask,
                                const std::string& image_id = "");

struct LabeledStatsRow {
    RegionStatsRow stats;
    GroupKey group;
};

// Mean and population std of all six statistics per (model, test set, DCA
// size) group. Rows without external stats are skipped; a group must keep
// at least one complete row.
std::vector<GroupAggregate> aggregate_groups(const std::vector<LabeledStatsRow>& rows);

// stats.csv rows: image_id,model,test_set,dca_size,internal_rms,
// external_rms,rms_diff,internal_brightness,external_brightness,
// brightness_diff (missing external stats rendered as NA).
CsvTable stats_to_csv(const std::vector<LabeledStatsRow>& rows);

// Aggregate table with one row per group: for RMS then brightness, the
// columns run internal mean, internal std, external mean, external std,
// diff mean.
CsvTable aggregates_to_csv(const std::vector<GroupAggregate>& groups);

} // namespace dca
