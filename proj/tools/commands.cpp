#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "output.hpp"
#include "tableau/critical.hpp"
#include "tableau/errors.hpp"
#include "tableau/experiments.hpp"
#include "tableau/kernels.hpp"
#include "tableau/limit_surface.hpp"
#include "tableau/sampler.hpp"

namespace tableau::cli {

namespace fs = std::filesystem;

namespace {

// Finite-kernel quadrature is only trusted on small diagrams.
constexpr std::int64_t kFiniteKernelCells = 500;

struct Context {
  ResolvedShape shape;
  fs::path dir;
  Provenance prov;
};

Context open_context(const ExperimentConfig& cfg, const std::string& command) {
  validate(cfg);
  Context c{resolve_shape(cfg.shape), resolve_out_dir(cfg), {}};
  fs::create_directories(c.dir);
  c.prov = {command, c.shape.label, describe(c.shape.diagram), cfg.seed};
  return c;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  v.front() = a;
  v.back() = b;
  return v;
}

std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace

Files cmd_surface(const ExperimentConfig& cfg, std::ostream& log) {
  auto ctx = open_context(cfg, "surface");
  const NormalizedShape shape(ctx.shape.diagram);
  const auto xs = linspace(shape.left(), shape.right(), cfg.nx);
  const auto ts = linspace(0.0, 1.0, cfg.nt);

  std::vector<std::unique_ptr<VerticalSection>> sections(xs.size());
  parallel_for(xs.size(), cfg.workers,
               [&](std::size_t i) { sections[i] = std::make_unique<VerticalSection>(shape, xs[i], cfg.tol); });

  Files files{ctx.dir / "surface_height.csv", ctx.dir / "surface_T.csv", ctx.dir / "surface_plateaus.csv",
              ctx.dir / "continuity.txt"};
  {
    CsvWriter h(files[0], ctx.prov, {"x", "t", "H"});
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (double t : ts) h.row({num(xs[i]), num(t), num(sections[i]->height(t))});
  }
  {
    CsvWriter s(files[1], ctx.prov, {"x", "y", "T_minus", "T_plus", "continuous"});
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double lo = std::abs(xs[i]), hi = profile_omega(shape, xs[i]);
      for (double y : linspace(lo, hi, cfg.nt)) {
        const auto T = surface_T(*sections[i], y);
        s.row({num(xs[i]), num(y), num(T.t_minus_val), num(T.t_plus_val), T.continuous_at_point ? "1" : "0"});
      }
    }
  }
  // plateaus can live on narrow x-ranges, so they get their own finer scan
  const auto scan = linspace(shape.left(), shape.right(), cfg.scan_lines);
  std::vector<std::vector<Plateau>> found(scan.size());
  std::vector<int> pieces(scan.size(), 0);
  parallel_for(scan.size(), cfg.workers, [&](std::size_t i) {
    const VerticalSection sec(shape, scan[i], cfg.tol);
    pieces[i] = static_cast<int>(sec.liquid_intervals().size());
    if (pieces[i] >= 2) found[i] = plateau_scan(sec, cfg.plateau_dt);
  });
  std::size_t plateaus = 0, split_lines = 0;
  {
    CsvWriter p(files[2], ctx.prov, {"x", "t_start", "t_end", "H"});
    for (std::size_t i = 0; i < scan.size(); ++i) {
      split_lines += pieces[i] >= 2;
      for (const auto& pl : found[i]) {
        p.row({num(scan[i]), num(pl.t_start), num(pl.t_end), num(pl.value)});
        ++plateaus;
      }
    }
  }
  const auto report = continuity_criterion(ctx.shape.diagram);
  std::ostringstream text;
  text << "shape " << ctx.shape.label << ' ' << ctx.prov.diagram << '\n';
  text << "continuity " << (report.satisfied ? "satisfied" : "violated") << '\n';
  for (const auto& term : report.terms)
    text << "  i0=" << term.i0 << " lhs=" << to_string(term.lhs) << " rhs=" << to_string(term.rhs)
         << " residual=" << to_string(term.residual()) << '\n';
  text << "plateau scan: " << split_lines << " of " << scan.size() << " vertical lines have a split liquid region, "
       << plateaus << " plateau(s) of H found\n";
  std::ofstream(files[3], std::ios::binary) << text.str();
  log << text.str();
  return files;
}

Files cmd_boundary(const ExperimentConfig& cfg, std::ostream& log) {
  auto ctx = open_context(cfg, "boundary");
  const NormalizedShape shape(ctx.shape.diagram);
  const auto fb = frozen_boundary(shape, default_s_grid(shape, cfg.per_segment));

  Files files{ctx.dir / "boundary.csv", ctx.dir / "boundary_cusps.csv", ctx.dir / "boundary.svg"};
  {
    CsvWriter b(files[0], ctx.prov, {"s", "x", "t", "segment", "is_cusp"});
    for (const auto& p : fb.samples) b.row({num(p.s), num(p.x), num(p.t), str(p.segment), p.is_cusp ? "1" : "0"});
  }
  std::vector<std::pair<double, double>> cusp_points;
  {
    CsvWriter c(files[1], ctx.prov, {"s", "x", "t"});
    for (double s : fb.cusps) {
      const auto [x, t] = boundary_point(shape, s);
      c.row({num(s), num(x), num(t)});
      cusp_points.emplace_back(x, t);
    }
  }
  std::vector<Polyline> lines;
  lines.push_back({{{shape.left(), 0}, {shape.right(), 0}, {shape.right(), 1}, {shape.left(), 1}, {shape.left(), 0}},
                   "grey"});
  int current = -1;
  for (const auto& p : fb.samples) {
    if (p.segment != current) {
      lines.push_back({{}, "black"});
      current = p.segment;
    }
    lines.back().points.emplace_back(p.x, p.t);
  }
  write_svg(files[2], lines, cusp_points);
  log << "frozen boundary: " << fb.samples.size() << " points, " << fb.cusps.size() << " cusp(s), " << fb.dropped
      << " dropped\n";
  return files;
}

Files cmd_sample(const ExperimentConfig& cfg, std::ostream& log) {
  auto ctx = open_context(cfg, "sample");
  Files files;
  for (auto n : cfg.n) {
    const Partition lam = dilated_partition(ctx.shape.diagram, n);
    const auto reps = static_cast<std::size_t>(cfg.reps);
    // generate a batch in parallel, write it serially
    for (std::size_t start = 0; start < reps; start += cfg.workers) {
      const std::size_t count = std::min<std::size_t>(cfg.workers, reps - start);
      std::vector<std::unique_ptr<BeadConfiguration>> batch(count);
      parallel_for(count, cfg.workers, [&](std::size_t k) {
        auto rng = make_stream(cfg.seed, start + k);
        batch[k] = std::make_unique<BeadConfiguration>(sample_beads(lam, rng));
      });
      for (std::size_t k = 0; k < count; ++k) {
        const auto path = ctx.dir / ("beads_n" + str(n) + "_r" + str(static_cast<std::int64_t>(start + k)) + ".csv");
        CsvWriter w(path, ctx.prov, {"thread", "height"});
        const auto& b = *batch[k];
        for (Coord x = b.first_thread(); x <= b.last_thread(); ++x)
          for (double h : b.thread(x)) w.row({str(x), num(h)});
        files.push_back(path);
      }
    }
    log << "n=" << n << " N=" << lam.size() << ": " << cfg.reps << " bead configuration(s)\n";
  }
  return files;
}

Files cmd_compare(const ExperimentConfig& cfg, std::ostream& log) {
  auto ctx = open_context(cfg, "compare");
  const auto grid = limit_grid(ctx.shape.diagram, cfg.nx, cfg.nt);
  Files files{ctx.dir / "compare.csv", ctx.dir / "compare_summary.csv"};
  CsvWriter all(files[0], ctx.prov, {"n", "N", "replicate", "sup_error"});
  CsvWriter summary(files[1], ctx.prov, {"n", "N", "reps", "median_sup_error"});
  for (auto n : cfg.n) {
    const auto res = compare_limit_shape(ctx.shape.diagram, grid, n, cfg.reps, cfg.seed, cfg.workers);
    const std::int64_t N = n * n * size(ctx.shape.diagram);
    for (std::size_t r = 0; r < res.errors.size(); ++r)
      all.row({str(n), str(N), str(static_cast<std::int64_t>(r)), num(res.errors[r])});
    summary.row({str(n), str(N), str(cfg.reps), num(res.median)});
    log << "n=" << n << " N=" << N << " median sup error " << num(res.median) << '\n';
  }
  return files;
}

Files cmd_kernel(const ExperimentConfig& cfg, std::ostream& log) {
  auto ctx = open_context(cfg, "kernel");
  const auto& d = ctx.shape.diagram;
  Files files;
  if (size(d) <= kFiniteKernelCells) {
    files.push_back(ctx.dir / "kernel_identity.csv");
    files.push_back(ctx.dir / "kernel_diagonal.csv");
    CsvWriter id(files[0], ctx.prov, {"x", "integral", "column_count", "residual"});
    double worst = 0;
    for (Coord x = d.a_min() + 1; x < d.a_max(); ++x) {
      const double integral = finite_kernel_diagonal_integral(d, x);
      const auto cc = column_count(d, x);
      const double res = integral - static_cast<double>(cc);
      worst = std::max(worst, std::abs(res));
      id.row({str(x), num(integral), str(cc), num(res)});
    }
    // direct contour evaluation only below the safe height of each thread
    CsvWriter diag(files[1], ctx.prov, {"x", "t", "K"});
    for (Coord x = d.a_min() + 1; x < d.a_max(); ++x)
      for (double t : linspace(0.0, finite_kernel_safe_height(d, x), cfg.nt))
        diag.row({str(x), num(t), num(finite_kernel(d, {x, t}, {x, t}))});
    log << "box-count identity: max residual " << num(worst) << '\n';
  } else {
    log << "finite kernel: skipped (" << size(d) << " cells > " << kFiniteKernelCells << ")\n";
  }

  const NormalizedShape shape(d);
  // default: middle of the widest gap between consecutive eta a_i, eta b_i
  double x_default = 0.5 * (shape.left() + shape.right());
  {
    std::vector<double> poles = shape.scaled_a();
    poles.insert(poles.end(), shape.scaled_b().begin(), shape.scaled_b().end());
    std::sort(poles.begin(), poles.end());
    double widest = 0;
    for (std::size_t i = 0; i + 1 < poles.size(); ++i)
      if (poles[i + 1] - poles[i] > widest) {
        widest = poles[i + 1] - poles[i];
        x_default = 0.5 * (poles[i] + poles[i + 1]);
      }
  }
  const double x0 = cfg.x0.value_or(x_default);
  const double t0 = cfg.t0.value_or(0.5 * (t_minus(shape, x0) + t_plus(shape, x0)));
  const auto pc = solve_critical(shape, x0, t0);
  if (!pc.liquid()) {
    if (cfg.x0 || cfg.t0) throw DomainError("kernel: (" + num(x0) + ", " + num(t0) + ") is frozen");
    log << "limit kernel: skipped, default point (" << num(x0) << ", " << num(t0) << ") is frozen\n";
    return files;
  }
  const auto loc = local_limit(shape, x0, t0);
  const BeadKernelParams prm{loc.alpha, loc.beta};
  files.push_back(ctx.dir / "kernel_limit.csv");
  CsvWriter lim(files.back(), ctx.prov, {"dx", "dt", "K_inf", "J", "conjugation_residual"});
  double worst = 0;
  for (int dx = -cfg.dx_max; dx <= cfg.dx_max; ++dx)
    for (double dt : cfg.dts) {
      const SpaceTimePoint p1{0, 0.0}, p2{dx, dt};
      const double k = limit_kernel_direct(loc, p1, p2);
      const double j = bead_kernel(prm, p1, p2);
      const double res = k * conjugation_g(loc, p2.x, p2.t) / conjugation_g(loc, p1.x, p1.t) - j;
      worst = std::max(worst, std::abs(res));
      lim.row({str(dx), num(dt), num(k), num(j), num(res)});
    }
  log << "limit kernel at (" << num(x0) << ", " << num(t0) << "): alpha=" << num(loc.alpha) << " beta="
      << num(loc.beta) << " density alpha/pi=" << num(loc.alpha / std::numbers::pi) << " conjugation residual "
      << num(worst) << '\n';
  return files;
}

Files cmd_phase(const ExperimentConfig& cfg, std::ostream& log) {
  auto ctx = open_context(cfg, "phase");
  const double r = cfg.r;
  Files files{ctx.dir / "phase_curve.csv", ctx.dir / "phase_rational.csv", ctx.dir / "phase.svg"};
  auto guarded = [](auto f) {
    try {
      return f();
    } catch (const DomainError&) {
      return std::nan("");
    }
  };
  Polyline q_line{{}, "red"}, qp{{}, "red"}, qm{{}, "red"}, lo{{}, "grey"}, hi{{}, "grey"};
  {
    CsvWriter c(files[0], ctx.prov, {"p", "Q", "Q_plus", "Q_minus", "q_min", "q_max"});
    for (int k = 0; k < cfg.points; ++k) {
      const double p = -1 + (r + 1) * (k + 1) / (cfg.points + 1);
      const double q = r == 1.0 ? guarded([&] { return phase_curve_Q(p); }) : std::nan("");
      const double plus = guarded([&] { return phase_curve_Qpm(r, p, +1); });
      const double minus = guarded([&] { return phase_curve_Qpm(r, p, -1); });
      const double q_min = std::abs(p), q_max = std::min(p + 2, 2 * r - p);
      c.row({num(p), num(q), num(plus), num(minus), num(q_min), num(q_max)});
      auto keep = [&](Polyline& l, double v) {
        if (!std::isnan(v) && v > q_min && v <= q_max) l.points.emplace_back(p, v);
      };
      keep(q_line, q);
      keep(qp, plus);
      keep(qm, minus);
      lo.points.emplace_back(p, q_min);
      hi.points.emplace_back(p, q_max);
    }
  }
  int satisfied = 0, generated = 0;
  {
    CsvWriter c(files[1], ctx.prov, {"u", "v", "p", "q", "continuity"});
    // walk (u, v) over small integers and keep points inside the r = 1 domain
    for (int s = 2; generated < cfg.rational_points && s < 1000; ++s)
      for (int u = -s + 1; u < s && generated < cfg.rational_points; ++u) {
        const int v = s - std::abs(u);
        if (u == 0) continue;
        const auto [p, q] = phase_curve_rational_point(Rational(u), Rational(v));
        const LShapeParams prm{p, q, Rational(1)};
        if (!in_lshape_domain(prm)) continue;
        const bool ok = continuity_criterion(lshape_from_pqr(prm).diagram).satisfied;
        satisfied += ok;
        ++generated;
        c.row({std::to_string(u), std::to_string(v), to_string(p), to_string(q), ok ? "satisfied" : "violated"});
      }
  }
  write_svg(files[2], {lo, hi, q_line, qp, qm});
  if (r == 1.0) log << "Q(0) = " << num(phase_curve_Q(0.0)) << '\n';
  log << "rational points on q = Q(p): " << satisfied << "/" << generated << " satisfy the continuity criterion\n";
  return files;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limit shapes and local statistics of random tableaux of dilated shapes", "tableau-limits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TABLEAU_LIMITS_VERSION);

  ExperimentConfig cfg;
  std::string config_path;
  // JSON keys mirror the long flag names with '-' replaced by '_'
  using Setter = std::function<void(const nlohmann::json&)>;
  std::map<CLI::App*, std::map<std::string, std::pair<CLI::Option*, Setter>>> registry;

  auto key_of = [](std::string flag) {
    for (auto& ch : flag)
      if (ch == '-') ch = '_';
    return flag;
  };
  auto add = [&](CLI::App* sub, const std::string& flag, auto& field, const std::string& help) {
    auto* opt = sub->add_option("--" + flag, field, help)->capture_default_str();
    registry[sub][key_of(flag)] = {opt, [&field](const nlohmann::json& j) {
                                     field = j.get<std::remove_reference_t<decltype(field)>>();
                                   }};
  };
  auto add_optional = [&](CLI::App* sub, const std::string& flag, std::optional<double>& field,
                          const std::string& help) {
    auto* opt = sub->add_option_function<double>("--" + flag, [&field](const double& v) { field = v; }, help);
    registry[sub][key_of(flag)] = {opt, [&field](const nlohmann::json& j) { field = j.get<double>(); }};
  };

  using Command = Files (*)(const ExperimentConfig&, std::ostream&);
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto make = [&](const std::string& name, const std::string& help, Command fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    add(sub, "shape", cfg.shape, "heart | pipe | square | rect:r | lshape:p,q,r | (rows) | JSON path");
    add(sub, "out", cfg.out_dir, "output directory (default $TABLEAU_LIMITS_OUT or .)");
    add(sub, "seed", cfg.seed, "base seed; replicate r uses its own stream");
    add(sub, "workers", cfg.workers, "worker threads");
    commands.emplace_back(sub, fn);
    return sub;
  };

  auto* surface = make("surface", "height grid, limiting surface T-/T+ and continuity report", cmd_surface);
  add(surface, "nx", cfg.nx, "x grid points");
  add(surface, "nt", cfg.nt, "t (and y) grid points");
  add(surface, "tol", cfg.tol, "quadrature tolerance");
  add(surface, "plateau-dt", cfg.plateau_dt, "plateau scan step");
  add(surface, "scan-lines", cfg.scan_lines, "vertical lines searched for plateaus");

  auto* boundary = make("boundary", "frozen boundary polyline, cusps and SVG", cmd_boundary);
  add(boundary, "per-segment", cfg.per_segment, "samples per parameter segment");

  auto* sample = make("sample", "Poissonized tableaux of the n-fold dilation as bead CSVs", cmd_sample);
  add(sample, "n", cfg.n, "dilation factors");
  add(sample, "reps", cfg.reps, "replicates per n");

  auto* compare = make("compare", "sup-norm error of sampled heights against the limit", cmd_compare);
  add(compare, "n", cfg.n, "dilation factors");
  add(compare, "reps", cfg.reps, "replicates per n");
  add(compare, "nx", cfg.nx, "x grid points");
  add(compare, "nt", cfg.nt, "t grid points");

  auto* kernel = make("kernel", "finite kernel identity and limit kernel grid", cmd_kernel);
  add_optional(kernel, "x0", cfg.x0, "macroscopic point x (default: middle of the widest gap between poles)");
  add_optional(kernel, "t0", cfg.t0, "macroscopic point t (default: middle of the liquid interval)");
  add(kernel, "dx-max", cfg.dx_max, "limit grid spans dx in [-dx_max, dx_max]");
  add(kernel, "dt", cfg.dts, "limit grid time offsets");
  add(kernel, "nt", cfg.nt, "diagonal t grid points");

  auto* phase = make("phase", "continuity curves of the L-shape family", cmd_phase);
  add(phase, "r", cfg.r, "L-shape width parameter");
  add(phase, "points", cfg.points, "curve samples");
  add(phase, "rational-points", cfg.rational_points, "exact points checked on q = Q(p) (r = 1)");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    for (auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw DomainError("config: cannot read " + config_path);
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          throw DomainError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw DomainError("config: expected a JSON object");
        const auto& known = registry[sub];
        for (const auto& [key, value] : j.items()) {
          const auto it = known.find(key);
          if (it == known.end()) throw DomainError("config: unknown key '" + key + "' for " + sub->get_name());
          if (it->second.first->count() != 0) continue;  // flag wins
          try {
            it->second.second(value);
          } catch (const nlohmann::json::exception& e) {
            throw DomainError("config: bad value for '" + key + "': " + e.what());
          }
        }
      }
      const auto files = fn(cfg, out);
      for (const auto& f : files) out << "wrote " << f.string() << '\n';
    }
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tableau::cli
