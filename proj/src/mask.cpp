#include "gridex/mask.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <png.h>

#include "gridex/errors.hpp"
#include "gridex/rng.hpp"

namespace gridex {

namespace {

bool is_png(std::span<const std::uint8_t> bytes) {
    static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

struct PngReadState {
    std::span<const std::uint8_t> bytes;
    std::size_t offset = 0;
};

void png_read_cb(png_structp png, png_bytep out, png_size_t len) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (state->offset + len > state->bytes.size())
        png_error(png, "truncated PNG stream");
    std::memcpy(out, state->bytes.data() + state->offset, len);
    state->offset += len;
}

// Decode to 8-bit grayscale; color input is reduced by luminance.
std::vector<std::uint8_t> decode_png(std::span<const std::uint8_t> bytes, int& width,
                                     int& height) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("failed to allocate PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("failed to allocate PNG info");
    }
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("undecodable PNG raster");
    }
    PngReadState state{bytes, 0};
    png_set_read_fn(png, &state, png_read_cb);
    png_read_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_COLOR)
        png_set_rgb_to_gray(png, 1, -1, -1); // BT.601 luminance
    if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    pixels.resize(static_cast<std::size_t>(width) * height);
    rows.resize(height);
    for (int y = 0; y < height; ++y)
        rows[y] = pixels.data() + static_cast<std::size_t>(y) * width;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return pixels;
}

std::vector<std::uint8_t> decode_pgm(std::span<const std::uint8_t> bytes, int& width,
                                     int& height) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < bytes.size()) {
            if (std::isspace(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&]() -> long {
        skip_ws();
        long v = 0;
        bool any = false;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            v = v * 10 + (bytes[pos] - '0');
            ++pos;
            any = true;
        }
        if (!any) throw IoError("malformed PGM header");
        return v;
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw IoError("unsupported raster format (expected PNG or P5 PGM)");
    pos = 2;
    const long w = read_int();
    const long h = read_int();
    const long maxval = read_int();
    if (w < 1 || h < 1) throw IoError("PGM dimensions must be positive");
    if (maxval < 1 || maxval > 255) throw IoError("only 8-bit PGM supported");
    ++pos; // single whitespace after maxval
    const std::size_t need = static_cast<std::size_t>(w) * h;
    if (bytes.size() - pos < need) throw IoError("truncated PGM payload");
    width = static_cast<int>(w);
    height = static_cast<int>(h);
    return {bytes.begin() + pos, bytes.begin() + pos + need};
}

} // namespace

Mask load_mask(std::span<const std::uint8_t> image_bytes, int binarize_threshold) {
    int w = 0, h = 0;
    std::vector<std::uint8_t> gray;
    if (is_png(image_bytes))
        gray = decode_png(image_bytes, w, h);
    else
        gray = decode_pgm(image_bytes, w, h);
    Mask mask(h, w);
    for (std::size_t i = 0; i < gray.size(); ++i)
        mask.cells[i] = gray[i] >= binarize_threshold ? 1 : 0;
    return mask;
}

Mask load_mask_file(const std::string& path, int binarize_threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_mask(bytes, binarize_threshold);
}

std::vector<std::uint8_t> mask_to_pgm(const Mask& mask) {
    std::string header = "P5\n" + std::to_string(mask.width) + " " +
                         std::to_string(mask.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + mask.cells.size());
    for (std::uint8_t c : mask.cells) out.push_back(c ? 255 : 0);
    return out;
}

void save_mask_pgm(const Mask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    const auto bytes = mask_to_pgm(mask);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

std::pair<Mask, GeometryTransform> resize_mask(const Mask& mask, int target_width,
                                               int target_height, ResizeMode mode) {
    if (target_width < 1 || target_height < 1)
        throw InvalidArgument("resize targets must be positive");

    GeometryTransform t;
    t.original_width = mask.width;
    t.original_height = mask.height;

    int content_w = target_width;
    int content_h = target_height;
    if (mode == ResizeMode::PadPreserveAspect) {
        const double s = std::min(static_cast<double>(target_width) / mask.width,
                                  static_cast<double>(target_height) / mask.height);
        content_w = std::max(1, static_cast<int>(std::lround(mask.width * s)));
        content_h = std::max(1, static_cast<int>(std::lround(mask.height * s)));
    }
    t.scale_x = static_cast<double>(mask.width) / content_w;
    t.scale_y = static_cast<double>(mask.height) / content_h;

    Mask out(target_height, target_width);
    for (int y = 0; y < content_h; ++y) {
        const int sy = std::min(mask.height - 1,
                                static_cast<int>(static_cast<std::int64_t>(y) * mask.height / content_h));
        for (int x = 0; x < content_w; ++x) {
            const int sx = std::min(mask.width - 1,
                                    static_cast<int>(static_cast<std::int64_t>(x) * mask.width / content_w));
            out.at(y, x) = mask.at(sy, sx);
        }
    }
    return {std::move(out), t};
}

Mask transpose(const Mask& mask) {
    Mask out(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            out.at(x, y) = mask.at(y, x);
    return out;
}

void GridSpec::validate() const {
    if (image_width < 1 || image_height < 1)
        throw InvalidArgument("grid image extent must be positive");
    if (band_half_width < 1) throw InvalidArgument("band_half_width must be positive");
    auto check_axis = [this](const std::vector<double>& bounds, double extent,
                             const char* name) {
        if (bounds.size() < 2)
            throw InvalidArgument(std::string(name) + ": need at least two boundaries");
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (bounds[i] < 0 || bounds[i] > extent)
                throw InvalidArgument(std::string(name) + ": boundary out of image bounds");
            if (i > 0) {
                if (bounds[i] <= bounds[i - 1])
                    throw InvalidArgument(std::string(name) + ": boundaries must be strictly increasing");
                if (bounds[i] - bounds[i - 1] <= 2.0 * band_half_width)
                    throw InvalidArgument(std::string(name) +
                                          ": boundaries closer than twice the band half width");
            }
        }
    };
    check_axis(column_boundaries, image_width, "column_boundaries");
    if (!row_boundaries.empty()) check_axis(row_boundaries, image_height, "row_boundaries");
}

SynthResult synth_mask(const GridSpec& grid, const NoiseSpec& noise) {
    grid.validate();
    if (noise.flip_probability < 0 || noise.flip_probability >= 1)
        throw InvalidArgument("flip_probability must be in [0, 1)");
    if (noise.dropout_probability < 0 || noise.dropout_probability > 1)
        throw InvalidArgument("dropout_probability must be in [0, 1]");

    Mask mask(grid.image_height, grid.image_width);
    const auto& c = grid.column_boundaries;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const double center = (c[i] + c[i + 1]) / 2.0;
        const int lo = std::max(0, static_cast<int>(std::lround(center - grid.band_half_width)));
        const int hi = std::min(grid.image_width - 1,
                                static_cast<int>(std::lround(center + grid.band_half_width)));
        for (int y = 0; y < grid.image_height; ++y)
            for (int x = lo; x <= hi; ++x) mask.at(y, x) = 1;
    }

    Rng rng(noise.seed);
    if (noise.flip_probability > 0)
        for (auto& cell : mask.cells)
            if (rng.bernoulli(noise.flip_probability)) cell ^= 1;
    if (noise.dropout_probability > 0)
        for (int y = 0; y < grid.image_height; ++y)
            if (rng.bernoulli(noise.dropout_probability))
                std::fill_n(mask.cells.begin() + static_cast<std::size_t>(y) * grid.image_width,
                            grid.image_width, std::uint8_t{0});

    return {std::move(mask), grid.column_boundaries};
}

} // namespace gridex
