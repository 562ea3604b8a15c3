#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mdde/mdde.h"

namespace mdde::cli {

namespace {

using json = nlohmann::json;

class RuntimeFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UsageFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(mdde_status st) {
  if (st != MDDE_OK)
    throw RuntimeFailure(std::string(mdde_status_string(st)) + ": " + mdde_last_error());
}

struct TableDeleter {
  void operator()(mdde_table* t) const { mdde_table_free(t); }
};
struct RasterDeleter {
  void operator()(mdde_raster* r) const { mdde_raster_free(r); }
};
struct ImageDeleter {
  void operator()(mdde_image* i) const { mdde_image_free(i); }
};
using TablePtr = std::unique_ptr<mdde_table, TableDeleter>;
using RasterPtr = std::unique_ptr<mdde_raster, RasterDeleter>;
using ImagePtr = std::unique_ptr<mdde_image, ImageDeleter>;

// Accepts "re" or "re,im".
mdde_complex parse_complex(const std::string& text) {
  std::istringstream is(text);
  mdde_complex z{0.0, 0.0};
  char comma = 0;
  if (!(is >> z.re)) throw UsageFailure("cannot parse complex value '" + text + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> z.im))
      throw UsageFailure("cannot parse complex value '" + text + "'");
  }
  if (is >> comma) throw UsageFailure("trailing characters in '" + text + "'");
  return z;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw UsageFailure("cannot parse list element '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageFailure("empty list");
  return out;
}

std::string format_complex(mdde_complex z) {
  std::ostringstream os;
  os << std::setprecision(10) << z.re << (z.im < 0 ? "-" : "+") << std::abs(z.im) << "i";
  return os.str();
}

json to_json(const mdde_dde_config& c) {
  return {{"tau0", c.tau0},
          {"dt", c.dt},
          {"tau_end", c.tau_end},
          {"escape_radius", c.escape_radius},
          {"conv_tol", c.conv_tol},
          {"window", c.window},
          {"transient_frac", c.transient_frac}};
}

json to_json(const mdde_discrete_params& p) {
  return {{"max_iter", p.max_iter}, {"escape_radius", p.escape_radius}, {"conv_tol", p.conv_tol}};
}

json to_json(const mdde_grid& g) {
  return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"im_min", g.im_min},
          {"im_max", g.im_max}, {"width", g.width},   {"height", g.height}};
}

json to_json(const mdde_mode_config& m) {
  if (m.mode == MDDE_MODE_DISCRETE) return {{"mode", "discrete"}, {"discrete", to_json(m.discrete)}};
  return {{"mode", "dde"}, {"dde", to_json(m.dde)}};
}

json tallies(const std::size_t counts[4]) {
  return {{"escaped", counts[MDDE_ESCAPED]},
          {"converged", counts[MDDE_CONVERGED]},
          {"oscillating", counts[MDDE_OSCILLATING]},
          {"undecided", counts[MDDE_UNDECIDED]}};
}

// Shared integration flags; NaN means "use the mode default".
struct ModeFlags {
  std::string mode = "dde";
  double tau0 = 10.0;
  double dt = NAN;
  double tau_end = 200.0;
  double escape_radius = NAN;
  double conv_tol = NAN;
  double window = NAN;
  double transient_frac = 0.5;
  int max_iter = 1000;

  void add_to(CLI::App* app, bool with_mode) {
    if (with_mode)
      app->add_option("--mode", mode, "discrete | dde")
          ->check(CLI::IsMember({"discrete", "dde"}))
          ->capture_default_str();
    app->add_option("--tau0", tau0, "normalized delay")->capture_default_str();
    app->add_option("--dt", dt, "integration step (default tau0/200)");
    app->add_option("--tau-end", tau_end, "integration horizon")->capture_default_str();
    app->add_option("--escape-radius", escape_radius,
                    "escape radius (default 2 discrete, 10 dde)");
    app->add_option("--conv-tol", conv_tol, "convergence tolerance (default 1e-9 / 1e-6)");
    app->add_option("--window", window, "classification window (default 10*tau0)");
    app->add_option("--transient-frac", transient_frac, "transient fraction")
        ->capture_default_str();
    app->add_option("--max-iter", max_iter, "discrete iterations")->capture_default_str();
  }

  mdde_mode_config resolve() const {
    mdde_mode_config m{};
    if (mode == "discrete") {
      m.mode = MDDE_MODE_DISCRETE;
      mdde_discrete_params_defaults(&m.discrete);
      m.discrete.max_iter = max_iter;
      if (!std::isnan(escape_radius)) m.discrete.escape_radius = escape_radius;
      if (!std::isnan(conv_tol)) m.discrete.conv_tol = conv_tol;
      if (m.discrete.max_iter < 1) throw UsageFailure("--max-iter must be at least 1");
      if (!(m.discrete.escape_radius >= 2.0))
        throw UsageFailure("--escape-radius must be at least 2 in discrete mode");
      return m;
    }
    m.mode = MDDE_MODE_DDE;
    mdde_dde_config raw;
    mdde_dde_config_defaults(tau0, tau_end, &raw);
    if (!std::isnan(dt)) raw.dt = dt;
    if (!std::isnan(escape_radius)) raw.escape_radius = escape_radius;
    if (!std::isnan(conv_tol)) raw.conv_tol = conv_tol;
    if (!std::isnan(window)) raw.window = window;
    raw.transient_frac = transient_frac;
    if (mdde_dde_config_resolve(&raw, &m.dde) != MDDE_OK)
      throw UsageFailure(std::string("invalid integration settings: ") + mdde_last_error());
    return m;
  }
};

struct Context {
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void finish(const std::string& subcommand, json config,
              const std::vector<std::string>& artifacts, const std::string& manifest_path) {
    write_manifest(make_manifest(args, subcommand, std::move(config), artifacts, elapsed()),
                   manifest_path);
    for (const auto& a : artifacts) out << "wrote " << a << "\n";
    out << "wrote " << manifest_path << "\n";
  }
};

// ---------------------------------------------------------------- render

struct RenderFlags {
  ModeFlags mode;
  mdde_grid grid{-2.0, 0.75, -1.25, 1.25, 600, 600};
  int workers = 0;
  bool overlay = false;
  std::string out;
};

int run_render(Context& ctx, const RenderFlags& f) {
  const mdde_mode_config mode = f.mode.resolve();
  RasterPtr raster;
  {
    mdde_raster* r = nullptr;
    check(mdde_render(&f.grid, &mode, f.workers, &r));
    raster.reset(r);
  }
  std::size_t counts[4];
  check(mdde_count_classes(raster.get(), 0, 0, f.grid.width, f.grid.height, counts));

  mdde_palette palette;
  mdde_palette_defaults(&palette);
  ImagePtr image;
  {
    mdde_image* img = nullptr;
    check(mdde_colorize(raster.get(), &palette, &img));
    image.reset(img);
  }
  if (f.overlay) {
    TablePtr curve;
    mdde_table* t = nullptr;
    if (mode.mode == MDDE_MODE_DISCRETE) {
      check(mdde_boundary_curve(MDDE_CURVE_CARDIOID, 2048, 0.0, &t));
    } else {
      check(mdde_boundary_curve(MDDE_CURVE_HOPF, 2048, mode.dde.tau0, &t));
    }
    curve.reset(t);
    const std::size_t re_col = mdde_table_cols(t) == 3 ? 1 : 2;
    std::vector<mdde_complex> pts;
    for (std::size_t k = 0; k < mdde_table_rows(t); ++k)
      pts.push_back({mdde_table_get(t, k, re_col), mdde_table_get(t, k, re_col + 1)});
    if (!pts.empty()) pts.push_back(pts.front());
    check(mdde_overlay_curve(image.get(), &f.grid, pts.data(), pts.size(), {255, 0, 0}));
  }

  const std::string ppm = f.out + ".ppm";
  const std::string csv = f.out + ".csv";
  check(mdde_write_ppm(image.get(), ppm.c_str()));
  {
    mdde_table* t = nullptr;
    check(mdde_raster_table(raster.get(), &f.grid, &t));
    TablePtr table(t);
    check(mdde_write_csv(table.get(), csv.c_str()));
  }

  json config = to_json(mode);
  config["grid"] = to_json(f.grid);
  config["overlay"] = f.overlay;
  config["palette"] = {{"escape_max", palette.escape_max},
                       {"converged", {palette.converged.r, palette.converged.g, palette.converged.b}},
                       {"oscillating",
                        {palette.oscillating.r, palette.oscillating.g, palette.oscillating.b}},
                       {"undecided", {palette.undecided.r, palette.undecided.g, palette.undecided.b}},
                       {"escaped_ramp", "sqrt"}};
  config["tallies"] = tallies(counts);
  ctx.out << "escaped=" << counts[0] << " converged=" << counts[1]
          << " oscillating=" << counts[2] << " undecided=" << counts[3] << "\n";
  ctx.finish("render", std::move(config), {ppm, csv}, f.out + ".manifest.json");
  return kExitOk;
}

// -------------------------------------------------------------- boundary

struct BoundaryFlags {
  std::string curve;
  double tau0 = 10.0;
  int samples = 256;
  std::string out;
};

int run_boundary(Context& ctx, const BoundaryFlags& f) {
  mdde_curve_kind kind = MDDE_CURVE_CARDIOID;
  if (f.curve == "period2") kind = MDDE_CURVE_PERIOD2;
  if (f.curve == "period3") kind = MDDE_CURVE_PERIOD3;
  if (f.curve == "hopf") kind = MDDE_CURVE_HOPF;

  mdde_table* t = nullptr;
  const mdde_status st = mdde_boundary_curve(kind, f.samples, f.tau0, &t);
  TablePtr table(t);
  const std::string message = mdde_last_error();
  if (!table) check(st);
  check(mdde_write_csv(table.get(), f.out.c_str()));

  json config = {{"curve", f.curve}, {"samples", f.samples}, {"rows", mdde_table_rows(t)}};
  if (kind == MDDE_CURVE_HOPF) config["tau0"] = f.tau0;
  config["status"] = mdde_status_string(st);
  ctx.finish("boundary", std::move(config), {f.out}, f.out + ".manifest.json");
  if (st != MDDE_OK) {
    ctx.err << "error: " << mdde_status_string(st) << ": " << message
            << " (partial curve written)\n";
    return kExitRuntime;
  }
  return kExitOk;
}

// ------------------------------------------------------------- stability

struct StabilityFlags {
  std::optional<double> zr, zi, cr, ci;
  double tau0 = 10.0;
};

void report_point(std::ostream& out, const char* label, mdde_complex z_s, double tau0) {
  mdde_verdict v;
  check(mdde_is_stable(z_s, tau0, &v));
  const double modulus = std::hypot(z_s.re, z_s.im);
  int nyq = 0;
  const double omega_max = std::max(50.0, 8.0 * modulus);
  mdde_status st = MDDE_ERR_INCONCLUSIVE_WINDING;
  for (int n = 400000; n <= 6400000 && st == MDDE_ERR_INCONCLUSIVE_WINDING; n *= 4)
    st = mdde_nyquist_oracle(z_s, tau0, omega_max, n, &nyq);
  out << std::setprecision(10) << label << " = " << format_complex(z_s)
      << "  |z_s| = " << modulus << "  phi = " << v.phi_used + 0.0 << "  omega = " << v.omega_used
      << "  threshold = " << v.binding_threshold << "  "
      << (v.stable ? "stable" : "unstable") << "  (nyquist: "
      << (st == MDDE_OK ? (nyq ? "stable" : "unstable") : "inconclusive") << ")\n";
}

int run_stability(Context& ctx, const StabilityFlags& f) {
  const bool by_z = f.zr.has_value();
  const bool by_c = f.cr.has_value();
  if (by_z == by_c) throw UsageFailure("stability needs either --zr [--zi] or --cr [--ci]");
  if (by_z) {
    report_point(ctx.out, "z_s", {*f.zr, f.zi.value_or(0.0)}, f.tau0);
    return kExitOk;
  }
  const mdde_complex c{*f.cr, f.ci.value_or(0.0)};
  mdde_complex roots[2];
  check(mdde_stationary_points(c, roots));
  ctx.out << "c = " << format_complex(c) << "  tau0 = " << f.tau0 << "\n";
  report_point(ctx.out, "z_s[0]", roots[0], f.tau0);
  report_point(ctx.out, "z_s[1]", roots[1], f.tau0);
  return kExitOk;
}

// ------------------------------------------------------------ feigenbaum

struct FeigenbaumFlags {
  ModeFlags mode;
  std::string c0 = "0,0";
  std::string dir = "1,0";
  double s_min = -2.0;
  double s_max = 0.25;
  int n = 401;
  double branch_tol = 1e-4;
  int workers = 0;
  std::string out;
};

int run_feigenbaum(Context& ctx, const FeigenbaumFlags& f) {
  const mdde_mode_config mode = f.mode.resolve();
  const mdde_complex c0 = parse_complex(f.c0);
  const mdde_complex dir = parse_complex(f.dir);
  std::vector<int> branches(static_cast<std::size_t>(std::max(f.n, 0)));
  mdde_table* t = nullptr;
  check(mdde_feigenbaum_scan(c0, dir, f.s_min, f.s_max, f.n, &mode, f.workers, f.branch_tol,
                             branches.data(), &t));
  TablePtr table(t);
  check(mdde_write_csv(table.get(), f.out.c_str()));

  json config = to_json(mode);
  config["line"] = {{"c0", {c0.re, c0.im}}, {"dir", {dir.re, dir.im}},
                    {"s_min", f.s_min}, {"s_max", f.s_max}, {"n_params", f.n}};
  config["branch_tol"] = f.branch_tol;
  config["branches"] = branches;
  config["rows"] = mdde_table_rows(t);
  ctx.finish("feigenbaum", std::move(config), {f.out}, f.out + ".manifest.json");
  return kExitOk;
}

// ------------------------------------------------------------ timeseries

struct TimeSeriesFlags {
  ModeFlags mode;
  double cr = 0.0;
  double ci = 0.0;
  int stride = 1;
  std::string out;
};

int run_timeseries(Context& ctx, const TimeSeriesFlags& f) {
  const mdde_mode_config mode = f.mode.resolve();
  const mdde_complex c{f.cr, f.ci};
  mdde_table* t = nullptr;
  check(mdde_time_series(c, &mode, f.stride, &t));
  TablePtr table(t);
  check(mdde_write_csv(table.get(), f.out.c_str()));

  json config = to_json(mode);
  config["c"] = {c.re, c.im};
  config["stride"] = f.stride;
  config["samples"] = mdde_table_rows(t);

  mdde_outcome outcome;
  if (mode.mode == MDDE_MODE_DISCRETE) {
    check(mdde_iterate_orbit(c, &mode.discrete, &outcome));
  } else {
    check(mdde_integrate_dde(c, &mode.dde, f.stride, nullptr, &outcome));
  }
  static const char* const kKinds[] = {"Escaped", "Converged", "Oscillating", "Undecided"};
  config["outcome"] = kKinds[outcome.kind];
  ctx.out << "outcome: " << kKinds[outcome.kind] << "\n";

  const double horizon = mode.mode == MDDE_MODE_DDE ? mode.dde.tau_end : mode.discrete.max_iter;
  mdde_period period;
  if (mdde_measure_period(t, 0.5 * horizon, &period) == MDDE_OK) {
    config["period"] = {{"T", period.period}, {"spread", period.spread},
                        {"n_peaks", period.n_peaks}, {"transient_cut", 0.5 * horizon}};
    ctx.out << std::setprecision(10) << "period: " << period.period << " (spread "
            << period.spread << ", " << period.n_peaks << " peaks)\n";
  } else {
    config["period"] = nullptr;
  }
  ctx.finish("timeseries", std::move(config), {f.out}, f.out + ".manifest.json");
  return kExitOk;
}

// ----------------------------------------------------------------- decay

struct DecayFlags {
  std::string tau_ends;
  mdde_grid grid{-1.4, -0.9, -0.25, 0.25, 120, 120};
  double tau0 = 10.0;
  double dt = 0.05;
  int workers = 0;
  std::string out;
};

int run_decay(Context& ctx, const DecayFlags& f) {
  const std::vector<double> ends = parse_list(f.tau_ends);
  std::vector<std::vector<double>> rows;
  json per_horizon = json::array();
  mdde_dde_config resolved{};
  for (const double tau_end : ends) {
    mdde_dde_config raw;
    mdde_dde_config_defaults(f.tau0, tau_end, &raw);
    raw.dt = f.dt;
    if (mdde_dde_config_resolve(&raw, &resolved) != MDDE_OK)
      throw UsageFailure(std::string("invalid integration settings: ") + mdde_last_error());
    mdde_mode_config mode{};
    mode.mode = MDDE_MODE_DDE;
    mode.dde = resolved;
    mdde_raster* r = nullptr;
    check(mdde_render(&f.grid, &mode, f.workers, &r));
    RasterPtr raster(r);
    std::size_t counts[4];
    check(mdde_count_classes(raster.get(), 0, 0, f.grid.width, f.grid.height, counts));
    const std::size_t kept = counts[1] + counts[2] + counts[3];
    ctx.out << "tau_end=" << tau_end << " non_escaped=" << kept << " escaped=" << counts[0]
            << " converged=" << counts[1] << " oscillating=" << counts[2]
            << " undecided=" << counts[3] << "\n";
    rows.push_back({tau_end, static_cast<double>(counts[0]), static_cast<double>(counts[1]),
                    static_cast<double>(counts[2]), static_cast<double>(counts[3]),
                    static_cast<double>(kept)});
    json entry = {{"tau_end", tau_end}, {"tallies", tallies(counts)}, {"non_escaped", kept}};
    per_horizon.push_back(entry);
  }

  bool monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k) monotone = monotone && rows[k][5] <= rows[k - 1][5];
  ctx.out << "non-escaped counts non-increasing: " << (monotone ? "yes" : "no") << "\n";

  if (!f.out.empty()) {
    const std::string path = f.out + ".csv";
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw RuntimeFailure("cannot open '" + path + "' for writing");
    std::fputs("tau_end,escaped,converged,oscillating,undecided,non_escaped\n", fp);
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k)
        std::fprintf(fp, k ? ",%.17g" : "%.17g", row[k]);
      std::fputc('\n', fp);
    }
    if (std::fclose(fp) != 0) throw RuntimeFailure("failed writing '" + path + "'");

    json config = {{"grid", to_json(f.grid)},
                   {"dde", to_json(resolved)},
                   {"tau_ends", ends},
                   {"horizons", per_horizon},
                   {"non_increasing", monotone}};
    config["dde"].erase("tau_end");
    ctx.finish("decay", std::move(config), {path}, f.out + ".manifest.json");
  }
  return kExitOk;
}

void add_grid(CLI::App* app, mdde_grid& g) {
  app->add_option("--re-min", g.re_min)->capture_default_str();
  app->add_option("--re-max", g.re_max)->capture_default_str();
  app->add_option("--im-min", g.im_min)->capture_default_str();
  app->add_option("--im-max", g.im_max)->capture_default_str();
  app->add_option("--width", g.width)->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--height", g.height)->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw RuntimeFailure("cannot read '" + path + "' for checksumming");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> md(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!md || EVP_DigestInit_ex(md.get(), EVP_sha256(), nullptr) != 1)
    throw RuntimeFailure("sha256 unavailable");
  char buf[1 << 16];
  while (is.read(buf, sizeof buf) || is.gcount() > 0) {
    EVP_DigestUpdate(md.get(), buf, static_cast<std::size_t>(is.gcount()));
    if (is.eof()) break;
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(md.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int k = 0; k < len; ++k)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  return hex.str();
}

void write_manifest(const nlohmann::json& manifest, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw RuntimeFailure("cannot open '" + path + "' for writing");
  os << manifest.dump(2) << '\n';
  os.close();
  if (!os) throw RuntimeFailure("failed writing '" + path + "'");
}

nlohmann::json make_manifest(const std::vector<std::string>& args,
                             const std::string& subcommand, nlohmann::json config,
                             const std::vector<std::string>& artifacts,
                             double wall_clock_seconds) {
  json files = json::array();
  for (const auto& a : artifacts) {
    std::ifstream is(a, std::ios::binary | std::ios::ate);
    files.push_back({{"path", a},
                     {"sha256", sha256_file(a)},
                     {"bytes", is ? static_cast<long long>(is.tellg()) : -1}});
  }
  return {{"tool", "mdde"},
          {"version", mdde_version()},
          {"command_line", args},
          {"subcommand", subcommand},
          {"config", std::move(config)},
          {"artifacts", files},
          {"wall_clock_seconds", wall_clock_seconds}};
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx{std::vector<std::string>(argv, argv + argc), out, err};

  CLI::App app{"Mandelbrot recurrence and delay-equation laboratory", "mdde"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mdde_version());

  RenderFlags render;
  auto* render_cmd = app.add_subcommand("render", "classify a parameter grid and write PPM/CSV");
  render.mode.add_to(render_cmd, true);
  render_cmd->get_option("--mode")->required();
  add_grid(render_cmd, render.grid);
  render_cmd->add_option("--workers", render.workers, "worker threads (0 = default)");
  render_cmd->add_flag("--overlay", render.overlay, "draw the analytic main boundary");
  render_cmd->add_option("--out", render.out, "output prefix")->required();

  BoundaryFlags boundary;
  auto* boundary_cmd = app.add_subcommand("boundary", "export an analytic boundary curve");
  boundary_cmd->add_option("--curve", boundary.curve, "cardioid | period2 | period3 | hopf")
      ->required()
      ->check(CLI::IsMember({"cardioid", "period2", "period3", "hopf"}));
  boundary_cmd->add_option("--tau0", boundary.tau0, "delay for the Hopf curve")
      ->capture_default_str();
  boundary_cmd->add_option("--samples", boundary.samples)->capture_default_str();
  boundary_cmd->add_option("--out", boundary.out, "CSV path")->required();

  StabilityFlags stability;
  auto* stability_cmd = app.add_subcommand("stability", "linear stability of stationary points");
  auto* zr = stability_cmd->add_option("--zr", stability.zr, "stationary point, real part");
  auto* zi = stability_cmd->add_option("--zi", stability.zi, "stationary point, imaginary part");
  auto* cr = stability_cmd->add_option("--cr", stability.cr, "parameter, real part");
  auto* ci = stability_cmd->add_option("--ci", stability.ci, "parameter, imaginary part");
  zr->excludes(cr)->excludes(ci);
  zi->excludes(cr)->excludes(ci);
  zi->needs(zr);
  ci->needs(cr);
  stability_cmd->add_option("--tau0", stability.tau0)->capture_default_str();

  FeigenbaumFlags feigenbaum;
  feigenbaum.mode.mode = "discrete";
  feigenbaum.mode.max_iter = 20000;
  feigenbaum.mode.tau_end = 4000.0;
  auto* feigenbaum_cmd = app.add_subcommand("feigenbaum", "post-transient scan along a line");
  feigenbaum.mode.add_to(feigenbaum_cmd, true);
  feigenbaum_cmd->add_option("--c0", feigenbaum.c0, "line origin 're,im'")->capture_default_str();
  feigenbaum_cmd->add_option("--dir", feigenbaum.dir, "line direction 're,im'")
      ->capture_default_str();
  feigenbaum_cmd->add_option("--s-min", feigenbaum.s_min)->capture_default_str();
  feigenbaum_cmd->add_option("--s-max", feigenbaum.s_max)->capture_default_str();
  feigenbaum_cmd->add_option("--n", feigenbaum.n, "parameter count")->capture_default_str();
  feigenbaum_cmd->add_option("--branch-tol", feigenbaum.branch_tol)->capture_default_str();
  feigenbaum_cmd->add_option("--workers", feigenbaum.workers);
  feigenbaum_cmd->add_option("--out", feigenbaum.out, "CSV path")->required();

  TimeSeriesFlags series;
  series.mode.tau_end = 600.0;
  auto* series_cmd = app.add_subcommand("timeseries", "simulate one parameter and dump z(tau)");
  series.mode.add_to(series_cmd, true);
  series_cmd->add_option("--cr", series.cr)->required();
  series_cmd->add_option("--ci", series.ci)->capture_default_str();
  series_cmd->add_option("--stride", series.stride)->capture_default_str();
  series_cmd->add_option("--out", series.out, "CSV path")->required();

  DecayFlags decay;
  auto* decay_cmd = app.add_subcommand("decay", "non-escaped pixel counts versus horizon");
  decay_cmd->add_option("--tau-ends", decay.tau_ends, "comma-separated horizons")->required();
  add_grid(decay_cmd, decay.grid);
  decay_cmd->add_option("--tau0", decay.tau0)->capture_default_str();
  decay_cmd->add_option("--dt", decay.dt)->capture_default_str();
  decay_cmd->add_option("--workers", decay.workers);
  decay_cmd->add_option("--out", decay.out, "output prefix (optional)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << mdde_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (*render_cmd) return run_render(ctx, render);
    if (*boundary_cmd) return run_boundary(ctx, boundary);
    if (*stability_cmd) return run_stability(ctx, stability);
    if (*feigenbaum_cmd) return run_feigenbaum(ctx, feigenbaum);
    if (*series_cmd) return run_timeseries(ctx, series);
    if (*decay_cmd) return run_decay(ctx, decay);
  } catch (const UsageFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace mdde::cli
