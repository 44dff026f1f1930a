#pragma once

#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "hotelbell/chsh.hpp"
#include "hotelbell/density.hpp"

namespace hotelbell {

/// { "x_rect": [lo,hi], "y_rect": [lo,hi], "nx": int, "ny": int,
///   "weights": [row-major, x index major] }. Weights are normalized on read.
nlohmann::json density_to_json(const GridDensity& rho);
GridDensity density_from_json(const nlohmann::json& j);

/// Blocks "rho00", "rho10", "rho01", "rho11" plus an "expectations" block
/// (e00, e10, e01, e11, S and the eight marginals) written for readers;
/// the expectations block is ignored on read.
nlohmann::json family_to_json(const ChshFamily& family);
ChshFamily family_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// fig1.csv: x,a0,logcurve for x = i/1000 on [0,1].
void write_fig1(std::ostream& out);
/// fig2.csv: alpha,x,value for alpha = j/100 on [0,1], x = i/1000 on [0,2].
void write_fig2(std::ostream& out);
/// fig3.csv: alpha,x,sumvalue with sumvalue = a0(x) + a_alpha(x), same grid.
void write_fig3(std::ostream& out);
/// Writes the three files above into `dir`, creating it if needed.
void write_figures(const std::filesystem::path& dir);

}  // namespace hotelbell
