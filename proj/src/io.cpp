#include "mtuple/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "mtuple/errors.hpp"

namespace mtuple::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ArgumentError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::vector<double> parse_numbers(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::vector<double> values;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw FormatError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
    }
  }
  return values;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

PointCloud read_xyz(std::istream& in, std::optional<int> dimension) {
  std::vector<double> coords;
  std::vector<double> weights;
  std::optional<std::size_t> columns;
  bool has_weights = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto values = parse_numbers(line, line_no);
    if (!columns) {
      columns = values.size();
      if (dimension) {
        if (*columns == static_cast<std::size_t>(*dimension) + 1) {
          has_weights = true;
        } else if (*columns != static_cast<std::size_t>(*dimension)) {
          throw FormatError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(*dimension) + " or " + std::to_string(*dimension + 1) +
                            " columns, found " + std::to_string(*columns));
        }
      }
    } else if (values.size() != *columns) {
      throw FormatError("line " + std::to_string(line_no) + ": inconsistent column count");
    }
    const std::size_t n = has_weights ? values.size() - 1 : values.size();
    coords.insert(coords.end(), values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
    weights.push_back(has_weights ? values.back() : 1.0);
  }
  if (!columns) throw DegenerateInputError("XYZ input contains no points");
  const std::size_t n = has_weights ? *columns - 1 : *columns;
  if (n < 2) throw FormatError("XYZ points need at least 2 coordinates");
  const auto m = static_cast<Eigen::Index>(weights.size());
  Eigen::MatrixXd pts = Eigen::Map<const Eigen::MatrixXd>(coords.data(), static_cast<Eigen::Index>(n), m);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(weights.data(), m);
  return PointCloud(std::move(pts), std::move(w));
}

PointCloud read_xyz(const std::filesystem::path& path, std::optional<int> dimension) {
  auto in = open_in(path);
  return read_xyz(in, dimension);
}

void write_xyz(std::ostream& out, const PointCloud& cloud, bool with_weights) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    for (int j = 0; j < cloud.dimension(); ++j) {
      if (j) out << ' ';
      out << cloud.points()(j, idx);
    }
    if (with_weights) out << ' ' << cloud.weights()[idx];
    out << '\n';
  }
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud, bool with_weights) {
  auto out = open_out(path);
  write_xyz(out, cloud, with_weights);
}

PointCloud read_ply(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || lower(line).rfind("ply", 0) != 0) {
    throw FormatError("missing 'ply' magic");
  }
  std::size_t vertex_count = 0;
  std::vector<std::string> vertex_props;
  std::vector<std::pair<std::string, std::size_t>> elements;  // name, count (order matters)
  bool in_vertex = false;
  bool ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string kw;
    ss >> kw;
    if (kw == "format") {
      std::string fmt;
      ss >> fmt;
      ascii = fmt == "ascii";
    } else if (kw == "element") {
      std::string name;
      std::size_t count = 0;
      ss >> name >> count;
      elements.emplace_back(name, count);
      in_vertex = name == "vertex";
      if (in_vertex) vertex_count = count;
    } else if (kw == "property") {
      if (in_vertex) {
        std::string type;
        std::string name;
        ss >> type;
        if (type == "list") throw FormatError("list properties on vertices are not supported");
        ss >> name;
        vertex_props.push_back(name);
      }
    } else if (kw == "end_header") {
      break;
    }
  }
  if (!ascii) throw FormatError("only ASCII PLY is supported");
  auto find_prop = [&](const char* name) {
    auto it = std::find(vertex_props.begin(), vertex_props.end(), name);
    if (it == vertex_props.end()) throw FormatError(std::string("PLY vertex lacks property ") + name);
    return static_cast<std::size_t>(it - vertex_props.begin());
  };
  const std::size_t ix = find_prop("x");
  const std::size_t iy = find_prop("y");
  const std::size_t iz = find_prop("z");

  // skip elements declared before the vertices
  for (const auto& [name, count] : elements) {
    if (name == "vertex") break;
    for (std::size_t i = 0; i < count; ++i) std::getline(in, line);
  }
  if (vertex_count == 0) throw DegenerateInputError("PLY file has no vertices");
  Eigen::MatrixXd pts(3, static_cast<Eigen::Index>(vertex_count));
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!std::getline(in, line)) throw FormatError("PLY file truncated in vertex list");
    auto values = parse_numbers(line, i + 1);
    if (values.size() < vertex_props.size()) throw FormatError("PLY vertex row too short");
    const auto c = static_cast<Eigen::Index>(i);
    pts(0, c) = values[ix];
    pts(1, c) = values[iy];
    pts(2, c) = values[iz];
  }
  return PointCloud(std::move(pts));
}

PointCloud read_ply(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_ply(in);
}

void write_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  if (cloud.dimension() != 3) throw ArgumentError("PLY output requires a 3D cloud");
  auto out = open_out(path);
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size()
      << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  write_xyz(out, cloud, false);
}

namespace {

// Next header token of a PNM file, skipping comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok += c;
  }
  if (tok.empty()) throw FormatError("PGM header truncated");
  return tok;
}

int pnm_int(std::istream& in) {
  const auto tok = pnm_token(in);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw FormatError("PGM header field '" + tok + "' is not an integer");
  }
}

}  // namespace

DensityImage read_pgm(std::istream& in) {
  const auto magic = pnm_token(in);
  if (magic != "P2" && magic != "P5") throw FormatError("not a PGM file (magic '" + magic + "')");
  DensityImage img;
  img.width = pnm_int(in);
  img.height = pnm_int(in);
  const int maxval = pnm_int(in);
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 65535) {
    throw FormatError("invalid PGM header values");
  }
  const std::size_t count = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);
  if (magic == "P2") {
    for (auto& px : img.pixels) {
      int v = 0;
      if (!(in >> v)) throw FormatError("PGM pixel data truncated");
      px = std::clamp(static_cast<double>(v) / maxval, 0.0, 1.0);
    }
  } else {
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(count * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw FormatError("PGM pixel data truncated");
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = bytes == 1 ? raw[i] : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
      img.pixels[i] = std::clamp(static_cast<double>(v) / maxval, 0.0, 1.0);
    }
  }
  return img;
}

DensityImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  return read_pgm(in);
}

void write_pgm(const std::filesystem::path& path, const DensityImage& image) {
  image.validate();
  auto out = open_out(path, true);
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  for (double v : image.pixels) {
    const auto b = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    out.put(static_cast<char>(b));
  }
}

PointCloud read_cloud(const std::filesystem::path& path, std::optional<int> dimension,
                      double image_threshold) {
  const auto ext = lower(path.extension().string());
  if (ext == ".ply") return read_ply(path);
  if (ext == ".pgm") return image_to_cloud(read_pgm(path), image_threshold);
  return read_xyz(path, dimension);
}

}  // namespace mtuple::io
