#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tableau/errors.hpp"

#ifndef TABLEAU_LIMITS_VERSION
#define TABLEAU_LIMITS_VERSION "dev"
#endif

namespace tableau::cli {

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const Provenance& prov,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw DomainError("cannot open " + path.string() + " for writing");
  out_ << "# tableau-limits " << TABLEAU_LIMITS_VERSION << " command=" << prov.command << " shape=" << prov.shape
       << " diagram=\"" << prov.diagram << "\" seed=" << prov.seed << '\n';
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void write_svg(const std::filesystem::path& path, const std::vector<Polyline>& lines,
               const std::vector<std::pair<double, double>>& dots) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto grow = [&](std::pair<double, double> p) {
    x0 = std::min(x0, p.first), x1 = std::max(x1, p.first);
    y0 = std::min(y0, p.second), y1 = std::max(y1, p.second);
  };
  for (const auto& l : lines) std::for_each(l.points.begin(), l.points.end(), grow);
  std::for_each(dots.begin(), dots.end(), grow);
  if (!(x1 > x0)) x0 -= 1, x1 += 1;
  if (!(y1 > y0)) y0 -= 1, y1 += 1;
  const double W = 600, pad = 20, scale = (W - 2 * pad) / std::max(x1 - x0, y1 - y0);
  const double H = (y1 - y0) * scale + 2 * pad, Wd = (x1 - x0) * scale + 2 * pad;
  auto px = [&](double x) { return num(pad + (x - x0) * scale); };
  auto py = [&](double y) { return num(H - pad - (y - y0) * scale); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path.string() + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(Wd) << "\" height=\"" << num(H) << "\">\n";
  for (const auto& l : lines) {
    if (l.points.size() < 2) continue;
    out << "<polyline fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < l.points.size(); ++i)
      out << (i ? " " : "") << px(l.points[i].first) << ',' << py(l.points[i].second);
    out << "\"/>\n";
  }
  for (const auto& d : dots) out << "<circle cx=\"" << px(d.first) << "\" cy=\"" << py(d.second) << "\" r=\"3\" fill=\"red\"/>\n";
  out << "</svg>\n";
}

}  // namespace tableau::cli
