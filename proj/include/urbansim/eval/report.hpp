#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "urbansim/eval/confusion.hpp"
#include "urbansim/eval/trimap.hpp"

namespace urbansim {

/// Header "name,building,...,ground,sky,mean"; undefined IoUs are written as "nan".
void write_iou_header(std::ostream& os);
void write_iou_row(std::ostream& os, const std::string& name, const IouResult& result);

/// "width_px,mean_iou,pixels" rows.
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve);

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Minimal standalone SVG line chart with axes, ticks and a legend.
void write_svg_plot(std::ostream& os, const std::string& title, const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);
void save_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                   const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace urbansim
