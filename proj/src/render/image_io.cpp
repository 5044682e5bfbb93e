#include "urbansim/render/image_io.hpp"

#include <png.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "urbansim/core/text.hpp"

namespace urbansim {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

void write_png_image(const std::filesystem::path& path, png_image& image, const void* buffer, const void* colormap) {
    if (!png_image_write_to_file(&image, path.c_str(), 0, buffer, 0, colormap)) {
        const std::string msg = image.message;
        png_image_free(&image);
        fail(path, "PNG write failed: " + msg);
    }
}

template <typename T>
void write_pfm_raw(const std::filesystem::path& path, int width, int height, int channels, const T& get) {
    static_assert(std::endian::native == std::endian::little, "PFM writer assumes a little-endian host");
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(path, "cannot open for writing");
    os << (channels == 3 ? "PF" : "Pf") << '\n' << width << ' ' << height << '\n' << "-1.0" << '\n';
    std::vector<float> row(static_cast<std::size_t>(width) * channels);
    for (int y = height - 1; y >= 0; --y) {
        for (int x = 0; x < width; ++x) get(x, y, &row[static_cast<std::size_t>(x) * channels]);
        os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!os) fail(path, "write failed");
}

struct PfmData {
    int width = 0, height = 0, channels = 0;
    std::vector<float> values;  ///< top row first
};

PfmData read_pfm_raw(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(path, "cannot open for reading");
    std::string magic;
    double scale = 0.0;
    PfmData d;
    is >> magic >> d.width >> d.height >> scale;
    if (!is || (magic != "PF" && magic != "Pf")) fail(path, "not a portable float map");
    if (scale >= 0.0) fail(path, "big-endian PFM is not supported");
    if (d.width <= 0 || d.height <= 0) fail(path, "invalid PFM dimensions");
    is.get();
    d.channels = magic == "PF" ? 3 : 1;
    const std::size_t row_len = static_cast<std::size_t>(d.width) * d.channels;
    d.values.resize(row_len * d.height);
    for (int y = d.height - 1; y >= 0; --y)
        is.read(reinterpret_cast<char*>(&d.values[row_len * y]), static_cast<std::streamsize>(row_len * sizeof(float)));
    if (!is) fail(path, "truncated PFM data");
    return d;
}

}  // namespace

void write_png(const std::filesystem::path& path, const Image<Rgb8>& image) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width());
    png.height = static_cast<png_uint_32>(image.height());
    png.format = PNG_FORMAT_RGB;
    static_assert(sizeof(Rgb8) == 3);
    write_png_image(path, png, image.pixels().data(), nullptr);
}

Image<Rgb8> read_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) fail(path, std::string("PNG read failed: ") + png.message);
    png.format = PNG_FORMAT_RGB;
    Image<Rgb8> out(static_cast<int>(png.width), static_cast<int>(png.height));
    if (!png_image_finish_read(&png, nullptr, out.pixels().data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        fail(path, "PNG decode failed: " + msg);
    }
    return out;
}

void write_label_png(const std::filesystem::path& path, const LabelMap& labels) {
    std::vector<std::uint8_t> indices(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!is_valid_class(static_cast<std::uint8_t>(labels[i]))) fail(path, "label outside the class palette");
        indices[i] = static_cast<std::uint8_t>(labels[i]);
    }
    const auto& palette = class_palette();
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(labels.width());
    png.height = static_cast<png_uint_32>(labels.height());
    png.format = PNG_FORMAT_RGB_COLORMAP;
    png.colormap_entries = static_cast<png_uint_32>(palette.size());
    write_png_image(path, png, indices.data(), palette.data());
}

LabelMap read_label_png(const std::filesystem::path& path) {
    const Image<Rgb8> rgb = read_png(path);
    const auto& palette = class_palette();
    LabelMap out(rgb.width(), rgb.height());
    for (std::size_t i = 0; i < rgb.size(); ++i) {
        int found = -1;
        for (int c = 0; c < kNumClasses && found < 0; ++c)
            if (palette[static_cast<std::size_t>(c)] == rgb[i]) found = c;
        if (found < 0) fail(path, "pixel color is not in the class palette");
        out[i] = static_cast<ClassId>(found);
    }
    return out;
}

void write_pfm(const std::filesystem::path& path, const Image<float>& image) {
    write_pfm_raw(path, image.width(), image.height(), 1, [&](int x, int y, float* out) { out[0] = image(x, y); });
}

void write_pfm(const std::filesystem::path& path, const Image<Vec3f>& image) {
    write_pfm_raw(path, image.width(), image.height(), 3, [&](int x, int y, float* out) {
        const Vec3f v = image(x, y);
        out[0] = v.x, out[1] = v.y, out[2] = v.z;
    });
}

void write_pfm(const std::filesystem::path& path, const Image<Rgb32f>& image) {
    write_pfm_raw(path, image.width(), image.height(), 3, [&](int x, int y, float* out) {
        const Rgb32f v = image(x, y);
        out[0] = v.r, out[1] = v.g, out[2] = v.b;
    });
}

Image<float> read_pfm_gray(const std::filesystem::path& path) {
    const PfmData d = read_pfm_raw(path);
    if (d.channels != 1) fail(path, "expected a single-channel PFM");
    Image<float> out(d.width, d.height);
    out.pixels() = d.values;
    return out;
}

Image<Vec3f> read_pfm_vec3(const std::filesystem::path& path) {
    const PfmData d = read_pfm_raw(path);
    if (d.channels != 3) fail(path, "expected a three-channel PFM");
    Image<Vec3f> out(d.width, d.height);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {d.values[3 * i], d.values[3 * i + 1], d.values[3 * i + 2]};
    return out;
}

void write_metadata(const std::filesystem::path& path, const Metadata& entries) {
    std::ofstream os(path);
    if (!os) fail(path, "cannot open for writing");
    for (const auto& [k, v] : entries) {
        if (k.find('=') != std::string::npos || k.find('\n') != std::string::npos || v.find('\n') != std::string::npos)
            fail(path, "metadata key or value contains a reserved character");
        os << k << '=' << v << '\n';
    }
    if (!os) fail(path, "write failed");
}

Metadata read_metadata(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) fail(path, "cannot open for reading");
    Metadata out;
    std::string line;
    int number = 0;
    while (std::getline(is, line)) {
        ++number;
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(path, "line " + std::to_string(number) + ": expected key=value");
        out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

}  // namespace urbansim
