#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "urbansim/core/image.hpp"

namespace urbansim {

/// Object categories carried by marks.
enum class Category : std::uint8_t { Building = 0, Pedestrian = 1, Tree = 2, Vehicle = 3 };
inline constexpr int kNumCategories = 4;
inline constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::Building, Category::Pedestrian, Category::Tree, Category::Vehicle};

/// Semantic classes of the 7-class label set. Values double as palette indices.
enum class ClassId : std::uint8_t {
    Building = 0,
    Pedestrian = 1,
    Tree = 2,
    Vehicle = 3,
    Ground = 4,
    Sky = 5,
    Void = 6,
};
inline constexpr int kNumClasses = 7;

using LabelMap = Image<ClassId>;

constexpr int index_of(Category c) { return static_cast<int>(c); }
constexpr int index_of(ClassId c) { return static_cast<int>(c); }
constexpr ClassId class_of(Category c) { return static_cast<ClassId>(static_cast<std::uint8_t>(c)); }
constexpr bool is_valid_class(std::uint8_t v) { return v < kNumClasses; }

std::string_view name_of(Category c);
std::string_view name_of(ClassId c);
std::optional<Category> parse_category(std::string_view name);
std::optional<ClassId> parse_class(std::string_view name);

/// Display color for each class id (indexed-PNG palette).
const std::array<Rgb8, kNumClasses>& class_palette();

}  // namespace urbansim
