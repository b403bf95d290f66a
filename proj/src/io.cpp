#include "lcuts/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lcuts/error.hpp"

namespace lcuts {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) throw InputError("cannot parse " + what + ": '" + t + "'");
  return v;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

CloudFile read_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("point-cloud CSV is empty");
  std::vector<std::string> header;
  for (auto& h : split_csv(line)) header.push_back(trim(h));
  int ix = -1, iy = -1, iz = -1, ii = -1, ig = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    const int col = static_cast<int>(c);
    if (h == "x") ix = col;
    else if (h == "y") iy = col;
    else if (h == "z") iz = col;
    else if (h == "intensity") ii = col;
    else if (h == "group") ig = col;
    else throw InputError("point-cloud CSV: unknown column '" + h + "'");
  }
  if (ix < 0 || iy < 0) throw InputError("point-cloud CSV needs x and y columns");

  CloudFile file;
  file.cloud.dim = iz >= 0 ? 3 : 2;
  if (ig >= 0) file.labels.emplace();
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) throw InputError("point-cloud CSV row " + std::to_string(row) + ": wrong column count");
    const std::string where = "row " + std::to_string(row);
    Vec loc(file.cloud.dim);
    loc[0] = parse_real(cells[static_cast<std::size_t>(ix)], "x in " + where);
    loc[1] = parse_real(cells[static_cast<std::size_t>(iy)], "y in " + where);
    if (iz >= 0) loc[2] = parse_real(cells[static_cast<std::size_t>(iz)], "z in " + where);
    std::optional<double> intensity;
    if (ii >= 0 && !trim(cells[static_cast<std::size_t>(ii)]).empty()) {
      intensity = parse_real(cells[static_cast<std::size_t>(ii)], "intensity in " + where);
    }
    file.cloud.add(std::move(loc), intensity);
    if (ig >= 0) {
      const double g = parse_real(cells[static_cast<std::size_t>(ig)], "group in " + where);
      if (g != std::floor(g)) throw InputError("group label must be an integer in " + where);
      file.labels->push_back(static_cast<int>(g));
    }
  }
  file.cloud.validate();
  return file;
}

CloudFile read_cloud_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud, const std::vector<int>* labels) {
  out << (cloud.dim == 3 ? "x,y,z,intensity" : "x,y,intensity") << (labels ? ",group" : "") << '\n';
  for (const auto& n : cloud.nodes) {
    for (Eigen::Index k = 0; k < n.loc.size(); ++k) out << format_double(n.loc[k]) << ',';
    if (n.intensity) out << format_double(*n.intensity);
    if (labels) out << ',' << labels->at(static_cast<std::size_t>(n.id));
    out << '\n';
  }
}

void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud, const std::vector<int>* labels) {
  std::ostringstream ss;
  write_cloud_csv(ss, cloud, labels);
  write_text_file(path, ss.str());
}

RasterImage read_pgm(std::istream& in) {
  auto token = [&]() {
    std::string t;
    char c = 0;
    while (in.get(c)) {
      if (c == '#') {
        std::string rest;
        std::getline(in, rest);
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        t.push_back(c);
        break;
      }
    }
    while (in.get(c) && !std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    return t;
  };
  if (token() != "P5") throw InputError("not a binary PGM (P5) file");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    throw InputError("malformed PGM header");
  }
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) throw InputError("PGM header values out of range");
  const int bytes = maxval < 256 ? 1 : 2;
  std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw InputError("PGM pixel data is truncated");
  std::vector<double> px(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < px.size(); ++i) {
    const unsigned v = bytes == 1 ? raw[i] : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
    px[i] = std::min(1.0, static_cast<double>(v) / maxval);
  }
  return RasterImage(w, h, std::move(px));
}

void write_pgm(std::ostream& out, const RasterImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (double v : img.pixels()) out.put(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
}

RasterImage read_csv_grid(std::istream& in) {
  std::vector<double> px;
  int w = -1, h = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (w < 0) w = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != w) throw InputError("CSV image: ragged row " + std::to_string(h + 1));
    for (const auto& c : cells) {
      const double v = parse_real(c, "pixel in row " + std::to_string(h + 1));
      if (!(v >= 0.0 && v <= 1.0)) throw InputError("CSV image: pixel values must lie in [0,1]");
      px.push_back(v);
    }
    ++h;
  }
  if (h == 0) throw InputError("CSV image is empty");
  return RasterImage(w, h, std::move(px));
}

RasterImage read_image(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  in.clear();
  in.seekg(0);
  if (magic[0] == 'P' && magic[1] == '5') return read_pgm(in);
  return read_csv_grid(in);
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ostringstream ss;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) ss << (j ? "," : "") << format_double(m(i, j));
    ss << '\n';
  }
  write_text_file(path, ss.str());
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace lcuts
