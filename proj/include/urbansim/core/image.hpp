#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace urbansim {

/// Row-major 2D pixel buffer, row 0 at the top of the image.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, T fill = T{}) : width_(width), height_(height) {
        if (width < 0 || height < 0) throw std::invalid_argument("Image: negative dimensions");
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    T& operator()(int x, int y) { return pixels_[index(x, y)]; }
    const T& operator()(int x, int y) const { return pixels_[index(x, y)]; }
    T& operator[](std::size_t i) { return pixels_[i]; }
    const T& operator[](std::size_t i) const { return pixels_[i]; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    std::vector<T>& pixels() { return pixels_; }
    const std::vector<T>& pixels() const { return pixels_; }

    bool same_shape(const auto& other) const { return width_ == other.width() && height_ == other.height(); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> pixels_;
};

struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend constexpr bool operator==(Rgb8, Rgb8) = default;
};

struct Rgb32f {
    float r = 0.0f;
    float g = 0.0f;
    float b = 0.0f;
    friend constexpr bool operator==(Rgb32f, Rgb32f) = default;
};

struct Vec3f {
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;
    friend constexpr bool operator==(Vec3f, Vec3f) = default;
};

}  // namespace urbansim
