#ifndef GRIDEX_MASK_HPP
#define GRIDEX_MASK_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gridex {

// Binary H x W grid, row-major, values in {0,1}.
struct Mask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> cells;

    Mask() = default;
    Mask(int h, int w) : height(h), width(w), cells(static_cast<std::size_t>(h) * w, 0) {}

    std::uint8_t at(int y, int x) const { return cells[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int y, int x) { return cells[static_cast<std::size_t>(y) * width + x]; }
    std::span<const std::uint8_t> row(int y) const {
        return {cells.data() + static_cast<std::size_t>(y) * width, static_cast<std::size_t>(width)};
    }

    bool operator==(const Mask&) const = default;
};

// Affine record mapping processed-space coordinates back to the original
// image: original = (processed - pad) * scale.
struct GeometryTransform {
    double scale_x = 1.0;
    double scale_y = 1.0;
    int pad_left = 0;
    int pad_top = 0;
    int original_width = 0;
    int original_height = 0;

    double to_original_x(double x) const { return (x - pad_left) * scale_x; }
    double to_original_y(double y) const { return (y - pad_top) * scale_y; }
    double to_processed_x(double x) const { return x / scale_x + pad_left; }
    double to_processed_y(double y) const { return y / scale_y + pad_top; }
};

// Ground-truth layout for synthetic masks. column_boundaries are the
// separator x-coordinates c_0 < ... < c_n delimiting n column regions;
// one filled band of width 2*band_half_width is centered inside each
// region. row_boundaries play the same role along y.
struct GridSpec {
    int image_width = 0;
    int image_height = 0;
    std::vector<double> column_boundaries;
    std::vector<double> row_boundaries;
    int band_half_width = 0;

    void validate() const; // throws InvalidArgument on violated invariants
};

struct NoiseSpec {
    double flip_probability = 0.0;     // per-pixel inversion
    double dropout_probability = 0.0;  // per-scan-line zeroing
    std::uint64_t seed = 0;
};

struct SynthResult {
    Mask mask;
    std::vector<double> truth_boundaries; // = grid.column_boundaries
};

enum class ResizeMode { Stretch, PadPreserveAspect };

// Decode a PNG or PGM (P5) raster and binarize: cell = 1 iff intensity
// >= threshold. Multi-channel PNGs are reduced by luminance first.
Mask load_mask(std::span<const std::uint8_t> image_bytes, int binarize_threshold);
Mask load_mask_file(const std::string& path, int binarize_threshold);

// PGM export with values {0, 255}.
std::vector<std::uint8_t> mask_to_pgm(const Mask& mask);
void save_mask_pgm(const Mask& mask, const std::string& path);

// Nearest-neighbor resize. Pad mode scales aspect-preserving, anchors
// top-left and zero-fills right/bottom. The transform inverts the
// coordinate mapping to within 0.5 px.
std::pair<Mask, GeometryTransform> resize_mask(const Mask& mask, int target_width,
                                               int target_height, ResizeMode mode);

Mask transpose(const Mask& mask);

// Deterministic band mask with per-pixel flips and scan-line dropout.
SynthResult synth_mask(const GridSpec& grid, const NoiseSpec& noise);

} // namespace gridex

#endif
