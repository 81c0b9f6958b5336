#include "pchgeo/distance_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pchgeo {

namespace {

[[noreturn]] void bad(const std::string& what, std::size_t line) {
  throw std::runtime_error("distance file line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_distances(std::ostream& out, std::span<const double> distances) {
  char buf[64];
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    if (std::isinf(d)) {
      out << i << "\tinf\n";
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out << i << '\t' << buf << '\n';
    }
  }
}

std::vector<double> read_distances(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::size_t index = 0;
    std::string text;
    if (!(ls >> index >> text)) bad("expected index and distance", line_no);
    if (index != values.size()) bad("index out of sequence", line_no);
    if (text == "inf") {
      values.push_back(INFINITY);
      continue;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) bad("bad distance '" + text + "'", line_no);
    values.push_back(v);
  }
  return values;
}

std::vector<Index> read_sources(std::istream& in) {
  std::vector<Index> sources;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size() || v < 0 || v > INT32_MAX) {
        throw std::runtime_error("sources line " + std::to_string(line_no) + ": bad vertex index '" + token + "'");
      }
      sources.push_back(static_cast<Index>(v));
    }
  }
  return sources;
}

std::vector<double> load_distances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_distances(in);
}

std::vector<Index> load_sources(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_sources(in);
}

}  // namespace pchgeo
