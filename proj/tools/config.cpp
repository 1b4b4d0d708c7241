#include "config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tableau/errors.hpp"
#include "tableau/limit_surface.hpp"
#include "tableau/rational.hpp"

namespace tableau::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

InterlacingDiagram rows_shape(const std::string& spec) {
  const std::string body = spec.substr(1, spec.size() - 2);
  std::vector<int> rows;
  for (const auto& part : split(body, ',')) {
    const std::string t = trim(part);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw DomainError("shape: bad row length '" + t + "' in " + spec);
    rows.push_back(v);
  }
  return interlacing_from_partition(Partition(std::move(rows)));
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  auto positive = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("config: ") + what + " must be positive");
  };
  positive(cfg.workers >= 1, "workers");
  positive(cfg.nx >= 2 && cfg.nt >= 2, "grid sizes (>= 2)");
  positive(cfg.tol > 0, "tol");
  positive(cfg.plateau_dt > 0 && cfg.plateau_dt < 1, "plateau_dt (< 1)");
  positive(cfg.scan_lines >= 2, "scan_lines (>= 2)");
  positive(cfg.per_segment >= 2, "per_segment (>= 2)");
  positive(!cfg.n.empty(), "n list");
  for (auto n : cfg.n) positive(n >= 1, "n");
  positive(cfg.reps >= 1, "reps");
  positive(cfg.dx_max >= 0, "dx_max (>= 0)");
  positive(cfg.r > 0, "r");
  positive(cfg.points >= 2, "points (>= 2)");
  positive(cfg.rational_points >= 0, "rational_points (>= 0)");
}

ResolvedShape resolve_shape(const std::string& spec) {
  if (spec == "heart") return {InterlacingDiagram({-5, -1, 5}, {-4, 3}), spec};
  if (spec == "pipe") return {InterlacingDiagram({-200, -90, 103}, {-197, 10}), spec};
  if (spec == "square") return {InterlacingDiagram({-1, 1}, {0}), spec};
  if (spec.rfind("rect:", 0) == 0) {
    const Rational r = parse_rational(spec.substr(5));
    if (r <= 0) throw DomainError("shape: rect:r needs r > 0");
    const std::vector<Rational> a{Rational(-1), r}, b{r - 1};
    return {clear_denominators(a, b).diagram, spec};
  }
  if (spec.rfind("lshape:", 0) == 0) {
    const auto parts = split(spec.substr(7), ',');
    if (parts.size() != 3) throw DomainError("shape: expected lshape:p,q,r");
    const LShapeParams prm{parse_rational(trim(parts[0])), parse_rational(trim(parts[1])),
                           parse_rational(trim(parts[2]))};
    return {lshape_from_pqr(prm).diagram, spec};
  }
  if (spec.size() >= 2 && spec.front() == '(' && spec.back() == ')') return {rows_shape(spec), spec};
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream text;
    text << in.rdbuf();
    return {diagram_from_json(text.str()).diagram, std::filesystem::path(spec).filename().string()};
  }
  throw DomainError("shape: unknown builtin or missing file '" + spec + "'");
}

std::string resolve_out_dir(const ExperimentConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("TABLEAU_LIMITS_OUT"); env && *env) return env;
  return ".";
}

}  // namespace tableau::cli
