#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace tableau::cli {

/// Fixed "%.12g" rendering so that reruns are byte-identical.
std::string num(double v);

/// Header block shared by every emitted file.
struct Provenance {
  std::string command;
  std::string shape;
  std::string diagram;
  unsigned long long seed = 0;
};

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const Provenance& prov, const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct Polyline {
  std::vector<std::pair<double, double>> points;
  std::string stroke = "black";
};

/// Bare SVG of polylines in data coordinates (y axis pointing up).
void write_svg(const std::filesystem::path& path, const std::vector<Polyline>& lines,
               const std::vector<std::pair<double, double>>& dots = {});

}  // namespace tableau::cli
