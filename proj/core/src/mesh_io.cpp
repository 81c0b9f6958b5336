#include "pchgeo/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pchgeo {

static_assert(std::endian::native == std::endian::little, "binary PLY support assumes a little-endian host");

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void malformed(const std::string& what, std::size_t line) {
  throw MeshError("malformed mesh file: " + what + " (line " + std::to_string(line) + ")");
}

double parse_double(std::string_view token, std::size_t line) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) malformed("bad number '" + std::string(token) + "'", line);
  return value;
}

long long parse_integer(std::string_view token, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) malformed("bad index '" + std::string(token) + "'", line);
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// ---- PLY ------------------------------------------------------------------

enum class PlyType { int8, uint8, int16, uint16, int32, uint32, float32, float64 };

PlyType parse_ply_type(std::string_view name, std::size_t line) {
  if (name == "char" || name == "int8") return PlyType::int8;
  if (name == "uchar" || name == "uint8") return PlyType::uint8;
  if (name == "short" || name == "int16") return PlyType::int16;
  if (name == "ushort" || name == "uint16") return PlyType::uint16;
  if (name == "int" || name == "int32") return PlyType::int32;
  if (name == "uint" || name == "uint32") return PlyType::uint32;
  if (name == "float" || name == "float32") return PlyType::float32;
  if (name == "double" || name == "float64") return PlyType::float64;
  malformed("unknown PLY type '" + std::string(name) + "'", line);
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::float64;
  bool is_list = false;
  PlyType count_type = PlyType::uint8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

template <typename T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw MeshError("malformed mesh file: truncated binary PLY body");
  return value;
}

double read_binary_value(std::istream& in, PlyType t) {
  switch (t) {
    case PlyType::int8: return read_raw<std::int8_t>(in);
    case PlyType::uint8: return read_raw<std::uint8_t>(in);
    case PlyType::int16: return read_raw<std::int16_t>(in);
    case PlyType::uint16: return read_raw<std::uint16_t>(in);
    case PlyType::int32: return read_raw<std::int32_t>(in);
    case PlyType::uint32: return read_raw<std::uint32_t>(in);
    case PlyType::float32: return read_raw<float>(in);
    case PlyType::float64: return read_raw<double>(in);
  }
  return 0.0;
}

class AsciiTokens {
 public:
  explicit AsciiTokens(std::istream& in) : in_(in) {}
  double next() {
    std::string token;
    if (!(in_ >> token)) throw MeshError("malformed mesh file: truncated ASCII PLY body");
    return parse_double(token, 0);
  }

 private:
  std::istream& in_;
};

Index checked_index(double raw) {
  if (raw < 0 || raw != std::floor(raw) || raw > static_cast<double>(INT32_MAX)) {
    throw MeshError("malformed mesh file: bad face index");
  }
  return static_cast<Index>(raw);
}

}  // namespace

MeshFormat parse_mesh_format(std::string_view name) {
  const auto lower = lowercase(name);
  if (lower == "obj") return MeshFormat::obj;
  if (lower == "ply") return MeshFormat::ply;
  if (lower == "auto" || lower.empty()) return MeshFormat::automatic;
  throw std::invalid_argument("unknown mesh format '" + std::string(name) + "'");
}

SurfaceMesh read_obj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<Triangle> faces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) malformed("vertex needs three coordinates", line_no);
      positions.push_back({parse_double(tokens[1], line_no), parse_double(tokens[2], line_no),
                           parse_double(tokens[3], line_no)});
    } else if (tokens[0] == "f") {
      if (tokens.size() != 4) throw MeshError("non-triangle face (line " + std::to_string(line_no) + ")");
      Triangle tri{};
      for (int c = 0; c < 3; ++c) {
        auto ref = tokens[static_cast<std::size_t>(c) + 1];
        ref = ref.substr(0, ref.find('/'));
        const long long raw = parse_integer(ref, line_no);
        long long idx = 0;
        if (raw > 0) {
          idx = raw - 1;
        } else if (raw < 0) {
          idx = static_cast<long long>(positions.size()) + raw;
        } else {
          malformed("face index 0", line_no);
        }
        if (idx < 0) malformed("relative index out of range", line_no);
        if (idx > INT32_MAX) malformed("index too large", line_no);
        // Forward references are checked once all vertices are known.
        tri[static_cast<std::size_t>(c)] = static_cast<Index>(idx);
      }
      faces.push_back(tri);
    }
    // vt, vn, o, g, s, usemtl, mtllib and friends are ignored.
  }
  return SurfaceMesh::from_triangles(std::move(positions), faces);
}

SurfaceMesh read_ply(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line() || line != "ply") malformed("missing 'ply' magic", 1);

  bool binary = false;
  std::vector<PlyElement> elements;
  bool header_done = false;
  while (next_line()) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "format") {
      if (tokens.size() < 2) malformed("bad format line", line_no);
      if (tokens[1] == "ascii") {
        binary = false;
      } else if (tokens[1] == "binary_little_endian") {
        binary = true;
      } else {
        malformed("unsupported PLY format '" + std::string(tokens[1]) + "'", line_no);
      }
    } else if (tokens[0] == "element") {
      if (tokens.size() != 3) malformed("bad element line", line_no);
      const long long count = parse_integer(tokens[2], line_no);
      if (count < 0) malformed("negative element count", line_no);
      elements.push_back({std::string(tokens[1]), static_cast<std::size_t>(count), {}});
    } else if (tokens[0] == "property") {
      if (elements.empty()) malformed("property before element", line_no);
      PlyProperty prop;
      if (tokens.size() == 5 && tokens[1] == "list") {
        prop.is_list = true;
        prop.count_type = parse_ply_type(tokens[2], line_no);
        prop.type = parse_ply_type(tokens[3], line_no);
        prop.name = std::string(tokens[4]);
      } else if (tokens.size() == 3) {
        prop.type = parse_ply_type(tokens[1], line_no);
        prop.name = std::string(tokens[2]);
      } else {
        malformed("bad property line", line_no);
      }
      elements.back().properties.push_back(std::move(prop));
    } else if (tokens[0] == "end_header") {
      header_done = true;
      break;
    }
    // comment / obj_info lines are ignored.
  }
  if (!header_done) malformed("missing end_header", line_no);

  std::vector<Vec3> positions;
  std::vector<Triangle> faces;
  AsciiTokens ascii(in);
  std::vector<double> list_values;

  for (const auto& element : elements) {
    const bool is_vertex = element.name == "vertex";
    const bool is_face = element.name == "face";
    int xi = -1;
    int yi = -1;
    int zi = -1;
    int face_list = -1;
    for (std::size_t p = 0; p < element.properties.size(); ++p) {
      const auto& name = element.properties[p].name;
      if (is_vertex && !element.properties[p].is_list) {
        if (name == "x") xi = static_cast<int>(p);
        if (name == "y") yi = static_cast<int>(p);
        if (name == "z") zi = static_cast<int>(p);
      }
      if (is_face && element.properties[p].is_list && (name == "vertex_indices" || name == "vertex_index")) {
        face_list = static_cast<int>(p);
      }
    }
    if (is_vertex && (xi < 0 || yi < 0 || zi < 0)) malformed("vertex element lacks x/y/z", line_no);
    if (is_face && face_list < 0) malformed("face element lacks vertex_indices", line_no);

    for (std::size_t i = 0; i < element.count; ++i) {
      Vec3 pos;
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        const auto& prop = element.properties[p];
        if (prop.is_list) {
          const double raw_count = binary ? read_binary_value(in, prop.count_type) : ascii.next();
          if (raw_count < 0 || raw_count != std::floor(raw_count)) malformed("bad list length", line_no);
          const auto count = static_cast<std::size_t>(raw_count);
          list_values.resize(count);
          for (auto& value : list_values) value = binary ? read_binary_value(in, prop.type) : ascii.next();
          if (is_face && static_cast<int>(p) == face_list) {
            if (count != 3) throw MeshError("non-triangle face (PLY face " + std::to_string(i) + ")");
            faces.push_back({checked_index(list_values[0]), checked_index(list_values[1]), checked_index(list_values[2])});
          }
        } else {
          const double value = binary ? read_binary_value(in, prop.type) : ascii.next();
          if (static_cast<int>(p) == xi) pos.x = value;
          if (static_cast<int>(p) == yi) pos.y = value;
          if (static_cast<int>(p) == zi) pos.z = value;
        }
      }
      if (is_vertex) positions.push_back(pos);
    }
  }
  return SurfaceMesh::from_triangles(std::move(positions), faces);
}

SurfaceMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  if (format == MeshFormat::automatic) {
    const auto ext = lowercase(path.extension().string());
    if (ext == ".obj") {
      format = MeshFormat::obj;
    } else if (ext == ".ply") {
      format = MeshFormat::ply;
    } else {
      throw std::invalid_argument("cannot infer mesh format from '" + path.string() + "'; pass a format");
    }
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path.string() + "'");
  return format == MeshFormat::obj ? read_obj(in) : read_ply(in);
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
  out << std::setprecision(17);
  for (const auto& p : mesh.positions()) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    const auto tri = mesh.face_vertices(static_cast<Index>(f));
    out << "f " << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << '\n';
  }
}

void write_ply(std::ostream& out, const SurfaceMesh& mesh, std::optional<std::span<const double>> distances,
               PlyEncoding encoding) {
  if (distances && distances->size() != mesh.vertex_count()) {
    throw std::invalid_argument("distance field size does not match vertex count");
  }
  const bool binary = encoding == PlyEncoding::binary_little_endian;
  out << "ply\n"
      << "format " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
      << "comment written by pchgeo\n"
      << "element vertex " << mesh.vertex_count() << '\n'
      << "property double x\nproperty double y\nproperty double z\n";
  if (distances) out << "property double geodesic_distance\n";
  out << "element face " << mesh.face_count() << '\n'
      << "property list uchar int vertex_indices\n"
      << "end_header\n";

  auto put = [&out](auto value) { out.write(reinterpret_cast<const char*>(&value), sizeof(value)); };
  if (!binary) out << std::setprecision(17);
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    const auto& p = mesh.positions()[v];
    if (binary) {
      put(p.x);
      put(p.y);
      put(p.z);
      if (distances) put((*distances)[v]);
    } else {
      out << p.x << ' ' << p.y << ' ' << p.z;
      if (distances) out << ' ' << (*distances)[v];
      out << '\n';
    }
  }
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    const auto tri = mesh.face_vertices(static_cast<Index>(f));
    if (binary) {
      put(std::uint8_t{3});
      for (const Index v : tri) put(static_cast<std::int32_t>(v));
    } else {
      out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    }
  }
}

void save_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write mesh file '" + path.string() + "'");
  if (lowercase(path.extension().string()) == ".ply") {
    write_ply(out, mesh);
  } else {
    write_obj(out, mesh);
  }
}

}  // namespace pchgeo
