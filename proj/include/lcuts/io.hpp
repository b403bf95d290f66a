#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lcuts/geometry.hpp"
#include "lcuts/image.hpp"

namespace lcuts {

/// Point-cloud CSV: header row, columns x,y[,z],intensity[,group].
/// Intensity cells may be empty. Group is a ground-truth label.
struct CloudFile {
  PointCloud cloud;
  std::optional<std::vector<int>> labels;
};

CloudFile read_cloud_csv(std::istream& in);
CloudFile read_cloud_csv(const std::filesystem::path& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud, const std::vector<int>* labels = nullptr);
void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud, const std::vector<int>* labels = nullptr);

/// Binary PGM (P5), 8- or 16-bit big-endian; values divided by the header maxval.
RasterImage read_pgm(std::istream& in);
/// Writes 8-bit P5, rounding value*255.
void write_pgm(std::ostream& out, const RasterImage& img);

/// Rows of comma-separated reals in [0,1], one row per image line.
RasterImage read_csv_grid(std::istream& in);

/// Dispatches on content: "P5" magic means PGM, anything else a CSV grid.
RasterImage read_image(const std::filesystem::path& path);

/// Square matrix as CSV rows.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lcuts
