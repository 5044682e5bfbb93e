#include "urbansim/core/labels.hpp"

namespace urbansim {

namespace {
constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "building", "pedestrian", "tree", "vehicle", "ground", "sky", "void"};
}

std::string_view name_of(Category c) { return kClassNames[index_of(c)]; }
std::string_view name_of(ClassId c) { return kClassNames[index_of(c)]; }

std::optional<Category> parse_category(std::string_view name) {
    for (Category c : kAllCategories)
        if (name_of(c) == name) return c;
    return std::nullopt;
}

std::optional<ClassId> parse_class(std::string_view name) {
    for (int i = 0; i < kNumClasses; ++i)
        if (kClassNames[i] == name) return static_cast<ClassId>(i);
    return std::nullopt;
}

const std::array<Rgb8, kNumClasses>& class_palette() {
    static constexpr std::array<Rgb8, kNumClasses> palette = {{
        {70, 70, 70},     // building
        {220, 20, 60},    // pedestrian
        {107, 142, 35},   // tree
        {0, 0, 142},      // vehicle
        {128, 64, 128},   // ground
        {70, 130, 180},   // sky
        {0, 0, 0},        // void
    }};
    return palette;
}

}  // namespace urbansim
