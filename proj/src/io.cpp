#include "hotelbell/io.hpp"

#include <fstream>
#include <optional>
#include <string>

#include "hotelbell/error.hpp"
#include "hotelbell/hotel.hpp"

namespace hotelbell {

namespace {

constexpr int kPointsPerUnit = 1000;
constexpr int kAlphaSteps = 100;

const char* const kFamilyKeys[4] = {"rho00", "rho10", "rho01", "rho11"};

Interval rect_from_json(const nlohmann::json& j, const char* key) {
  const auto& r = j.at(key);
  if (!r.is_array() || r.size() != 2) {
    throw Error(ErrorKind::Io, std::string("'") + key + "' must be a [lo, hi] pair");
  }
  return Interval{r[0].get<double>(), r[1].get<double>()};
}

std::string cell(std::optional<double> v) { return v ? format_real(*v) : "nan"; }

}  // namespace

nlohmann::json density_to_json(const GridDensity& rho) {
  return nlohmann::json{{"x_rect", {rho.x_rect().lo, rho.x_rect().hi}},
                        {"y_rect", {rho.y_rect().lo, rho.y_rect().hi}},
                        {"nx", rho.nx()},
                        {"ny", rho.ny()},
                        {"weights", rho.values()}};
}

GridDensity density_from_json(const nlohmann::json& j) {
  try {
    return GridDensity(rect_from_json(j, "x_rect"), rect_from_json(j, "y_rect"),
                       j.at("nx").get<std::size_t>(), j.at("ny").get<std::size_t>(),
                       j.at("weights").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed density: ") + e.what());
  }
}

nlohmann::json family_to_json(const ChshFamily& family) {
  nlohmann::json j;
  for (std::size_t k = 0; k < 4; ++k) j[kFamilyKeys[k]] = density_to_json(family.density(k));
  const auto e = family_expectations(family);
  const auto m = family_marginals(family);
  nlohmann::json summary;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string label = pair_label(k);
    summary["e" + label] = e[k];
    summary["marginals" + label] = {m[k].first, m[k].second};
  }
  summary["S"] = chsh_value(e);
  j["expectations"] = std::move(summary);
  return j;
}

ChshFamily family_from_json(const nlohmann::json& j) {
  for (const char* key : kFamilyKeys) {
    if (!j.contains(key)) throw Error(ErrorKind::Io, std::string("family is missing '") + key + "'");
  }
  return ChshFamily(density_from_json(j.at(kFamilyKeys[0])), density_from_json(j.at(kFamilyKeys[1])),
                    density_from_json(j.at(kFamilyKeys[2])), density_from_json(j.at(kFamilyKeys[3])));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_fig1(std::ostream& out) {
  const PartialRV a0 = make_observable(0.0);
  out << "x,a0,logcurve\n";
  for (int i = 0; i <= kPointsPerUnit; ++i) {
    const double x = i / static_cast<double>(kPointsPerUnit);
    std::optional<double> curve;
    if (0.0 < x && x < 1.0) curve = log_curve(0.0, x);
    out << format_real(x) << ',' << cell(a0.find(x)) << ',' << cell(curve) << '\n';
  }
}

void write_fig2(std::ostream& out) {
  out << "alpha,x,value\n";
  for (int j = 0; j <= kAlphaSteps; ++j) {
    const double alpha = j / static_cast<double>(kAlphaSteps);
    const PartialRV a = make_observable(alpha);
    for (int i = 0; i <= 2 * kPointsPerUnit; ++i) {
      const double x = i / static_cast<double>(kPointsPerUnit);
      out << format_real(alpha) << ',' << format_real(x) << ',' << cell(a.find(x)) << '\n';
    }
  }
}

void write_fig3(std::ostream& out) {
  const PartialRV a0 = make_observable(0.0);
  out << "alpha,x,sumvalue\n";
  for (int j = 0; j <= kAlphaSteps; ++j) {
    const double alpha = j / static_cast<double>(kAlphaSteps);
    std::optional<PartialRV> sum;
    try {
      sum = combine(a0, make_observable(alpha), CombineOp::Sum);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyDomain) throw;
    }
    for (int i = 0; i <= 2 * kPointsPerUnit; ++i) {
      const double x = i / static_cast<double>(kPointsPerUnit);
      const std::optional<double> v = sum ? sum->find(x) : std::nullopt;
      out << format_real(alpha) << ',' << format_real(x) << ',' << cell(v) << '\n';
    }
  }
}

void write_figures(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  auto emit = [&dir](const char* name, void (*writer)(std::ostream&)) {
    std::ofstream out(dir / name);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / name).string());
    writer(out);
  };
  emit("fig1.csv", write_fig1);
  emit("fig2.csv", write_fig2);
  emit("fig3.csv", write_fig3);
}

}  // namespace hotelbell
