#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace filadyn::cli {

namespace {

void check(fd_status s) {
  if (s != FD_OK) throw ApiError(s, fd_last_error());
}

std::string mode_string(unsigned bits) {
  char buf[64];
  fd_mode_string(bits, buf, sizeof buf);
  return buf;
}

// Runs fn(i) for i in [0, n) on `threads` workers; the lowest-index failure wins.
template <class Fn>
void parallel_rows(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> failed_at(workers, n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) {
          try {
            fn(i);
          } catch (...) {
            errors[w] = std::current_exception();
            failed_at[w] = i;
            return;
          }
        }
      });
    }
  }
  const auto first = std::min_element(failed_at.begin(), failed_at.end());
  if (*first < n) std::rethrow_exception(errors[static_cast<std::size_t>(first - failed_at.begin())]);
}

std::vector<std::pair<std::string, std::string>> echo(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, entry] : cfg.entries()) {
    if (key == "output.path" || key == "run.threads") continue;
    out.emplace_back(key, entry.value);
  }
  return out;
}

Report start_report(const RunContext& ctx, std::string command) {
  Report r;
  r.command = std::move(command);
  r.config_echo = echo(ctx.config);
  r.seed = ctx.seed;
  return r;
}

void require_nonempty(const RunContext& ctx, const char* command) {
  if (ctx.config.empty()) {
    throw ConfigError(0, std::string("usage: filadyn ") + command +
                             " --config <file>; the configuration is empty");
  }
}

// ------------------------------------------------------------- operator model

enum class ModelKind { Matrix, LaminarEq20 };
enum class Locus { None, Degenerate, Golden };

struct OperatorSetup {
  ModelKind kind = ModelKind::Matrix;
  fd_scheme scheme = FD_SCHEME_EQ18;
  bool equipartition = true;
  bool helicity_alpha = false;
  Locus locus = Locus::None;
  double v_n = 0.0;
  double v_n_meansq = 0.0;
  double eta = 0.0;
};

// Axis order is the column order and the lexicographic row order.
enum Axis { kKappa0, kTau0, kVs, kAlpha, kLambda, kBeta, kAxisCount };
constexpr std::array<const char*, kAxisCount> kAxisName = {"kappa0", "tau0",   "v_s",
                                                           "alpha",  "lambda", "beta"};
using Point = std::array<double, kAxisCount>;

const std::vector<std::string> kRowColumns = {
    "kappa0",         "tau0",          "v_s",           "alpha",          "lambda",
    "beta",           "scheme",        "re_gamma_plus", "im_gamma_plus",  "re_gamma_minus",
    "im_gamma_minus", "discriminant",  "classification"};

OperatorSetup operator_setup(const Config& cfg) {
  OperatorSetup s;
  const std::string model = cfg.text("operator.model").value_or("matrix");
  if (model == "matrix") {
    s.kind = ModelKind::Matrix;
  } else if (model == "laminar_eq20") {
    s.kind = ModelKind::LaminarEq20;
  } else {
    cfg.reject("operator.model", "expected matrix or laminar_eq20, got '" + model + "'");
  }
  if (auto text = cfg.text("operator.scheme")) {
    if (fd_scheme_parse(text->c_str(), &s.scheme) != FD_OK) {
      cfg.reject("operator.scheme", "expected eq13_14, eq18, eq24 or exact, got '" + *text + "'");
    }
  }
  s.equipartition = cfg.flag("geometry.equipartition").value_or(true);
  s.helicity_alpha = cfg.text("plasma.alpha") == std::optional<std::string>("helicity");
  s.v_n = cfg.number_or("flow.v_n", 0.0);
  s.v_n_meansq = cfg.number_or("flow.v_n_meansq", 0.0);
  s.eta = cfg.number_or("plasma.eta", 0.0);
  return s;
}

struct Evaluated {
  Point point{};
  fd_spectrum spectrum{};
};

Evaluated evaluate(const OperatorSetup& setup, Point p) {
  if (setup.helicity_alpha) check(fd_alpha_helicity(p[kKappa0], setup.v_n_meansq, &p[kAlpha]));
  if (setup.locus == Locus::Degenerate) p[kAlpha] = -2.0 * p[kKappa0] / p[kLambda];
  if (setup.locus == Locus::Golden) p[kAlpha] = -p[kKappa0] / p[kLambda];

  Evaluated e;
  e.point = p;
  if (setup.kind == ModelKind::LaminarEq20) {
    check(fd_laminar_spectrum(p[kAlpha] * p[kLambda], p[kKappa0], &e.spectrum));
    return e;
  }
  fd_model* raw = nullptr;
  check(fd_model_create(&raw));
  const std::unique_ptr<fd_model, void (*)(fd_model*)> model(raw, fd_model_destroy);
  check(fd_model_set_geometry(model.get(), p[kKappa0], p[kTau0], setup.equipartition ? 1 : 0));
  check(fd_model_set_flow(model.get(), p[kVs], setup.v_n, setup.v_n_meansq));
  check(fd_model_set_plasma(model.get(), p[kAlpha], p[kBeta], p[kLambda], setup.eta));
  check(fd_model_set_scheme(model.get(), setup.scheme));
  check(fd_model_spectrum(model.get(), &e.spectrum));
  return e;
}

std::vector<Cell> spectrum_row(const OperatorSetup& setup, const Evaluated& e) {
  std::vector<Cell> row;
  row.reserve(kRowColumns.size());
  for (double v : e.point) row.emplace_back(v);
  row.emplace_back(std::string(setup.kind == ModelKind::LaminarEq20 ? "eq20"
                                                                   : fd_scheme_string(setup.scheme)));
  const fd_spectrum& s = e.spectrum;
  row.emplace_back(s.gamma_plus.re);
  row.emplace_back(s.gamma_plus.im);
  row.emplace_back(s.gamma_minus.re);
  row.emplace_back(s.gamma_minus.im);
  row.emplace_back(s.discriminant);
  row.emplace_back(mode_string(s.classification));
  return row;
}

// Fixed values of every axis from the single-point keys.
Point base_point(const Config& cfg, const OperatorSetup& setup, bool kappa_from_sweep) {
  Point p{};
  if (kappa_from_sweep) {
    p[kKappa0] = cfg.number_or("geometry.kappa0", 0.0);
  } else {
    p[kKappa0] = cfg.require_number("geometry.kappa0", "the operator");
  }
  if (setup.equipartition) {
    if (cfg.has("geometry.tau0")) {
      cfg.reject("geometry.tau0", "set geometry.equipartition = false to give tau0 separately");
    }
    p[kTau0] = p[kKappa0];
  } else {
    p[kTau0] = cfg.number_or("geometry.tau0", 0.0);
  }
  p[kVs] = cfg.number_or("flow.v_s", 0.0);
  p[kAlpha] = setup.helicity_alpha ? 0.0 : cfg.number_or("plasma.alpha", 0.0);
  p[kLambda] = cfg.number_or("plasma.lambda", 1.0);
  p[kBeta] = cfg.number_or("plasma.beta", 0.0);
  return p;
}

// ----------------------------------------------------------------- branches

struct Branch {
  std::string name;
  fd_spectrum spectrum;
};

double root_distance(const fd_spectrum& a, const fd_spectrum& b) {
  const double dp = std::hypot(a.gamma_plus.re - b.gamma_plus.re, a.gamma_plus.im - b.gamma_plus.im);
  const double dm =
      std::hypot(a.gamma_minus.re - b.gamma_minus.re, a.gamma_minus.im - b.gamma_minus.im);
  return std::max(dp, dm);
}

std::vector<Branch> closed_form_branches(const OperatorSetup& setup, const Point& p) {
  std::vector<Branch> out;
  const double k = p[kKappa0];
  const double al = p[kAlpha] * p[kLambda];
  if (p[kBeta] != 0.0) return out;

  fd_spectrum s;
  check(fd_laminar_spectrum(al, k, &s));
  out.push_back({"laminar_eq20", s});

  if (std::fabs(al + 2.0 * k) <= 1e-12 * std::max(1.0, k)) {
    double branch_al = 0.0;
    double gamma = 0.0;
    check(fd_degenerate_branch(k, &branch_al, &gamma));
    check(fd_quadratic_roots(1.0, -2.0 * gamma, gamma * gamma, &s));
    out.push_back({"degenerate_double_root", s});
  }

  double stretching = 0.0;
  double squeezing = 0.0;
  if (fd_closed_form_laminar(al, k, &stretching, &squeezing) == FD_OK) {
    check(fd_quadratic_roots(1.0, -(stretching + squeezing), stretching * squeezing, &s));
    s.gamma_plus = {stretching, 0.0};
    s.gamma_minus = {squeezing, 0.0};
    out.push_back({"golden_closed_form", s});
  }

  if (p[kAlpha] == 0.0 && p[kVs] == -1.0 && setup.kind == ModelKind::Matrix) {
    check(fd_quadratic_roots(1.0, 0.0, k * k, &s));
    out.push_back({"oscillatory_limit", s});
  }
  return out;
}

// --------------------------------------------------------------- tube grids

struct TubeGrid {
  std::array<Grid, 4> axes;  // r, s, theta0, tau0
  std::uint64_t size() const {
    return axes[0].count * axes[1].count * axes[2].count * axes[3].count;
  }
  fd_tube_point at(std::uint64_t i) const {
    std::array<double, 4> v{};
    for (int a = 3; a >= 0; --a) {
      const Grid& g = axes[static_cast<std::size_t>(a)];
      v[static_cast<std::size_t>(a)] = g.at(i % g.count);
      i /= g.count;
    }
    return {v[0], v[1], v[2], v[3]};
  }
};

TubeGrid tube_grid(const Config& cfg, std::uint64_t cap) {
  TubeGrid g;
  const auto r = cfg.grid("tube.r");
  if (!r) throw ConfigError(0, "tube grids need 'tube.r'");
  g.axes[0] = *r;
  g.axes[1] = cfg.grid("tube.s").value_or(Grid{});
  g.axes[2] = cfg.grid("tube.theta0").value_or(Grid{});
  g.axes[3] = cfg.grid("tube.tau0").value_or(Grid{});
  long double product = 1.0L;
  for (const Grid& a : g.axes) product *= static_cast<long double>(a.count);
  if (product > static_cast<long double>(cap)) {
    throw ConfigError(0, "tube grid has more points than sweep.row_cap");
  }
  return g;
}

fd_abc abc_params(const Config& cfg) {
  return {cfg.require_number("abc.A", "abc"), cfg.require_number("abc.B", "abc"),
          cfg.require_number("abc.C", "abc")};
}

std::vector<fd_vec3> abc_points(const RunContext& ctx) {
  std::vector<fd_vec3> out;
  if (auto text = ctx.config.text("abc.points")) {
    std::stringstream list(*text);
    std::string item;
    while (std::getline(list, item, ';')) {
      std::stringstream coords(item);
      std::string c;
      std::vector<double> v;
      while (std::getline(coords, c, ',')) {
        try {
          v.push_back(parse_number(c));
        } catch (const ConfigError& e) {
          ctx.config.reject("abc.points", e.what());
        }
      }
      if (v.size() != 3) ctx.config.reject("abc.points", "each point needs three coordinates x,y,z");
      out.push_back({v[0], v[1], v[2]});
    }
  }
  if (auto n = ctx.config.count("abc.random_points")) {
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> u(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    for (std::uint64_t i = 0; i < *n; ++i) {
      const double x = u(rng), y = u(rng), z = u(rng);
      out.push_back({x, y, z});
    }
  }
  if (out.empty()) throw ConfigError(0, "abc eval needs 'abc.points' or 'abc.random_points'");
  return out;
}

Report abc_eval(const RunContext& ctx) {
  const fd_abc p = abc_params(ctx.config);
  Report r = start_report(ctx, "abc eval");
  Table t{"rows",
          {"x", "y", "z", "paper_x", "paper_y", "paper_z", "standard_x", "standard_y", "standard_z",
           "imag_residual", "reflection_residual"},
          {}};
  for (const fd_vec3& x : abc_points(ctx)) {
    fd_vec3 paper{};
    fd_vec3 standard{};
    fd_vec3 reflected{};
    double imag = 0.0;
    check(fd_abc_velocity_paper(&p, x, &paper, &imag));
    check(fd_abc_velocity_standard(&p, x, &standard));
    check(fd_abc_velocity_standard(&p, {-x.x, -x.y, -x.z}, &reflected));
    const double residual = std::max({std::fabs(paper.x - 2.0 * reflected.x),
                                      std::fabs(paper.y - 2.0 * reflected.y),
                                      std::fabs(paper.z - 2.0 * reflected.z)});
    t.rows.push_back({x.x, x.y, x.z, paper.x, paper.y, paper.z, standard.x, standard.y, standard.z,
                      imag, residual});
  }
  r.tables.push_back(std::move(t));
  return r;
}

fd_radial_bracket bracket(const Config& cfg) {
  const std::string b = cfg.text("tube.bracket").value_or("as_printed");
  if (b == "as_printed") return FD_BRACKET_AS_PRINTED;
  if (b == "symmetric") return FD_BRACKET_SYMMETRIC;
  cfg.reject("tube.bracket", "expected as_printed or symmetric, got '" + b + "'");
}

std::uint64_t row_cap(const Config& cfg) { return cfg.count("sweep.row_cap").value_or(kDefaultRowCap); }

Report abc_tube(const RunContext& ctx) {
  const fd_abc p = abc_params(ctx.config);
  const fd_radial_bracket br = bracket(ctx.config);
  const TubeGrid grid = tube_grid(ctx.config, row_cap(ctx.config));

  const auto n = static_cast<std::size_t>(grid.size());
  std::vector<std::optional<std::vector<Cell>>> rows(n);
  parallel_rows(n, ctx.threads, [&](std::size_t i) {
    const fd_tube_point tp = grid.at(i);
    fd_tube_flow f{};
    const fd_status st = fd_tube_velocity(&p, &tp, br, &f);
    if (st == FD_ERR_DOMAIN) return;  // masked
    check(st);
    rows[i] = std::vector<Cell>{tp.r, tp.s, tp.theta0, tp.tau0, tp.theta0 - tp.tau0 * tp.s,
                                f.v_s, f.v_r, f.v_r_imag};
  });

  Report r = start_report(ctx, "abc tube");
  Table t{"rows", {"r", "s", "theta0", "tau0", "theta", "v_s", "v_r", "v_r_imag"}, {}};
  std::int64_t masked = 0;
  for (auto& row : rows) {
    if (row) {
      t.rows.push_back(std::move(*row));
    } else {
      ++masked;
    }
  }
  r.tables.push_back(std::move(t));
  r.footer.emplace_back("masked_singular_points", masked);
  return r;
}

Report abc_stagnation(const RunContext& ctx) {
  const fd_abc p = abc_params(ctx.config);
  fd_stagnation s{};
  check(fd_stagnation_classify(&p, &s));
  Report r = start_report(ctx, "abc stagnation");
  const bool strong = s == FD_STRONG_STAGNATION;
  r.tables.push_back(Table{"rows",
                           {"A", "B", "C", "classification", "note"},
                           {{p.A, p.B, p.C,
                             std::string(strong ? "STRONG_STAGNATION" : "NO_STAGNATION_CONSTRAINT"),
                             std::string(strong ? "no dynamo action" : "")}}});
  return r;
}

Report abc_growth(const RunContext& ctx) {
  const Config& cfg = ctx.config;
  const double b_theta = cfg.require_number("tube.B_theta", "abc growth");
  const double b_s = cfg.number_or("tube.B_s", 0.0);
  const double eta = cfg.number_or("tube.eta", 0.0);
  const TubeGrid grid = tube_grid(cfg, row_cap(cfg));

  Report r = start_report(ctx, "abc growth");
  Table t{"rows",
          {"r", "s", "theta0", "tau0", "B_theta", "eta", "classification", "gamma",
           "B_s_constrained", "constraint_residual"},
          {}};
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    const fd_tube_point tp = grid.at(i);
    fd_tube_growth g{};
    check(fd_tube_growth_rate(b_s, b_theta, &tp, eta, &g));
    const char* cls = g.classification == FD_TUBE_MARGINAL       ? "MARGINAL"
                      : g.classification == FD_TUBE_TRIVIAL_FIELD ? "TRIVIAL_FIELD"
                                                                  : "SLOW_CANDIDATE";
    t.rows.push_back({tp.r, tp.s, tp.theta0, tp.tau0, b_theta, eta, std::string(cls),
                      g.has_gamma ? Cell(g.gamma) : Cell(),
                      g.has_constraint ? Cell(g.b_s_constrained) : Cell(),
                      g.has_constraint ? Cell(g.constraint_residual) : Cell()});
  }
  r.tables.push_back(std::move(t));
  return r;
}

double frame_max_diff(const fd_frame& a, const fd_frame& b) {
  const fd_vec3* va[3] = {&a.t, &a.n, &a.b};
  const fd_vec3* vb[3] = {&b.t, &b.n, &b.b};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst = std::max({worst, std::fabs(va[i]->x - vb[i]->x), std::fabs(va[i]->y - vb[i]->y),
                      std::fabs(va[i]->z - vb[i]->z)});
  }
  return worst;
}

double orthonormality_defect(const fd_frame& f) {
  const fd_vec3 v[3] = {f.t, f.n, f.b};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double d = v[i].x * v[j].x + v[i].y * v[j].y + v[i].z * v[j].z;
      worst = std::max(worst, std::fabs(d - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace

ApiError::ApiError(fd_status status, const std::string& message)
    : std::runtime_error(std::string(fd_status_string(status)) + ": " + message), status_(status) {}

RunContext make_context(Config config) {
  RunContext ctx;
  const std::string format = config.text("output.format").value_or("csv");
  if (format == "csv") {
    ctx.format = Format::Csv;
  } else if (format == "json") {
    ctx.format = Format::Json;
  } else {
    config.reject("output.format", "expected csv or json, got '" + format + "'");
  }
  ctx.seed = config.count("run.seed").value_or(kDefaultSeed);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t threads = config.count("run.threads").value_or(hw);
  ctx.threads = threads == 0 ? hw : static_cast<unsigned>(std::min<std::uint64_t>(threads, 1024));
  ctx.config = std::move(config);
  return ctx;
}

Report cmd_spectrum(const RunContext& ctx) {
  require_nonempty(ctx, "spectrum");
  const OperatorSetup setup = operator_setup(ctx.config);
  if (setup.kind == ModelKind::LaminarEq20 && ctx.config.number_or("plasma.beta", 0.0) != 0.0) {
    ctx.config.reject("plasma.beta", "the laminar quadratic has no diffusion term; set beta = 0");
  }
  const Evaluated e = evaluate(setup, base_point(ctx.config, setup, false));

  Report r = start_report(ctx, "spectrum");
  r.tables.push_back(Table{"rows", kRowColumns, {spectrum_row(setup, e)}});

  Table branches{"branches",
                 {"branch", "re_gamma_plus", "im_gamma_plus", "re_gamma_minus", "im_gamma_minus",
                  "classification", "difference"},
                 {}};
  for (const Branch& b : closed_form_branches(setup, e.point)) {
    const fd_spectrum& s = b.spectrum;
    branches.rows.push_back({b.name, s.gamma_plus.re, s.gamma_plus.im, s.gamma_minus.re,
                             s.gamma_minus.im, mode_string(s.classification),
                             root_distance(s, e.spectrum)});
  }
  r.tables.push_back(std::move(branches));
  return r;
}

Report cmd_sweep(const RunContext& ctx) {
  require_nonempty(ctx, "sweep");
  const Config& cfg = ctx.config;
  OperatorSetup setup = operator_setup(cfg);

  const std::string locus = cfg.text("sweep.locus").value_or("none");
  if (locus == "degenerate") {
    setup.locus = Locus::Degenerate;
  } else if (locus == "golden") {
    setup.locus = Locus::Golden;
  } else if (locus != "none") {
    cfg.reject("sweep.locus", "expected none, degenerate or golden, got '" + locus + "'");
  }
  if (setup.locus != Locus::None && (cfg.has("sweep.alpha") || cfg.has("plasma.alpha"))) {
    cfg.reject(cfg.has("sweep.alpha") ? "sweep.alpha" : "plasma.alpha",
               "alpha is fixed by sweep.locus");
  }
  if (setup.helicity_alpha && cfg.has("sweep.alpha")) {
    cfg.reject("sweep.alpha", "alpha follows from plasma.alpha = helicity");
  }
  if (setup.equipartition && cfg.has("sweep.tau0")) {
    cfg.reject("sweep.tau0", "set geometry.equipartition = false to sweep tau0");
  }

  std::array<Grid, kAxisCount> axes{};
  bool any_axis = false;
  const Point base = base_point(cfg, setup, cfg.has("sweep.kappa0"));
  for (std::size_t a = 0; a < kAxisCount; ++a) {
    const std::string key = std::string("sweep.") + kAxisName[a];
    if (auto g = cfg.grid(key)) {
      axes[a] = *g;
      any_axis = true;
    } else {
      axes[a] = Grid{base[a], base[a], 1};
    }
  }
  if (!any_axis) throw ConfigError(0, "sweep needs at least one sweep.<axis> grid");
  if (setup.kind == ModelKind::LaminarEq20 && (axes[kBeta].min != 0.0 || axes[kBeta].max != 0.0)) {
    cfg.reject(cfg.has("sweep.beta") ? "sweep.beta" : "plasma.beta",
               "the laminar quadratic has no diffusion term; keep beta = 0");
  }
  if (setup.locus != Locus::None && (axes[kLambda].min <= 0.0 && axes[kLambda].max >= 0.0)) {
    throw ConfigError(0, "sweep.locus divides by lambda; keep lambda away from 0");
  }

  long double product = 1.0L;
  for (const Grid& g : axes) product *= static_cast<long double>(g.count);
  const std::uint64_t cap = row_cap(cfg);
  if (product > static_cast<long double>(cap)) {
    std::ostringstream msg;
    msg << "grid has " << static_cast<double>(product) << " rows, above sweep.row_cap = " << cap;
    throw ConfigError(0, msg.str());
  }
  const auto n = static_cast<std::size_t>(product);

  std::vector<std::vector<Cell>> rows(n);
  parallel_rows(n, ctx.threads, [&](std::size_t i) {
    Point p{};
    std::size_t rest = i;
    for (int a = kAxisCount - 1; a >= 0; --a) {
      const Grid& g = axes[static_cast<std::size_t>(a)];
      p[static_cast<std::size_t>(a)] = g.at(rest % g.count);
      rest /= g.count;
    }
    if (setup.equipartition) p[kTau0] = p[kKappa0];
    rows[i] = spectrum_row(setup, evaluate(setup, p));
  });

  Report r = start_report(ctx, "sweep");
  r.tables.push_back(Table{"rows", kRowColumns, std::move(rows)});
  return r;
}

Report cmd_verify(const RunContext& ctx, bool& all_passed) {
  const Config& cfg = ctx.config;
  fd_verify_options o = fd_verify_default_options();
  o.seed = ctx.seed;
  o.dt = cfg.number_or("verify.dt", o.dt);
  o.t_end = cfg.number_or("verify.t_end", o.t_end);
  o.order_dt = cfg.number_or("verify.order_dt", o.order_dt);
  if (auto draws = cfg.count("verify.draws")) {
    if (*draws > 1'000'000) cfg.reject("verify.draws", "at most 1000000 draws");
    o.draws = static_cast<int>(*draws);
  }
  const std::string fault = cfg.text("verify.fault").value_or("none");
  if (fault == "scheme_mismatch") {
    o.inject_scheme_mismatch = 1;
  } else if (fault != "none") {
    cfg.reject("verify.fault", "expected none or scheme_mismatch, got '" + fault + "'");
  }
  o.threads = ctx.threads;

  fd_verify_report* raw = nullptr;
  check(fd_verify_run(&o, &raw));
  const std::unique_ptr<fd_verify_report, void (*)(fd_verify_report*)> rep(raw,
                                                                            fd_verify_report_destroy);
  Report r = start_report(ctx, "verify");
  Table t{"rows", {"suite", "passed", "worst", "threshold", "detail"}, {}};
  all_passed = true;
  for (std::size_t i = 0; i < fd_verify_report_size(rep.get()); ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    double worst = 0.0;
    double threshold = 0.0;
    check(fd_verify_report_suite(rep.get(), i, &name, &passed, &worst, &threshold, &detail));
    all_passed = all_passed && passed != 0;
    t.rows.push_back({std::string(name), passed != 0, worst, threshold, std::string(detail)});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report cmd_abc(const RunContext& ctx, const std::string& sub) {
  require_nonempty(ctx, ("abc " + sub).c_str());
  if (sub == "eval") return abc_eval(ctx);
  if (sub == "tube") return abc_tube(ctx);
  if (sub == "stagnation") return abc_stagnation(ctx);
  if (sub == "growth") return abc_growth(ctx);
  throw ConfigError(0, "unknown abc subcommand '" + sub + "'");
}

Report cmd_frenet_check(const RunContext& ctx, bool& all_passed) {
  constexpr double kFdTolerance = 1e-6;
  const Config& cfg = ctx.config;
  const std::uint64_t helices = cfg.count("frenet.helices").value_or(100);
  const double h = cfg.number_or("frenet.step", 1e-5);
  if (!(h > 0.0)) cfg.reject("frenet.step", "step must be positive");

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> size(0.1, 10.0);
  std::uniform_real_distribution<double> arclength(-20.0, 20.0);

  Report r = start_report(ctx, "frenet-check");
  Table t{"rows",
          {"a", "b_pitch", "s", "kappa", "tau", "fd_error", "orthonormality_defect",
           "laplacian_n_residual", "passed"},
          {}};
  all_passed = true;
  for (std::uint64_t i = 0; i < helices; ++i) {
    const double a = size(rng);
    const double b = size(rng);
    const double s = arclength(rng);
    fd_vec3 point{};
    fd_frame frame{}, ahead{}, behind{};
    double kappa = 0.0, tau = 0.0;
    check(fd_helix_frame(a, b, s, &point, &frame, &kappa, &tau));
    double k_unused = 0.0, t_unused = 0.0;
    check(fd_helix_frame(a, b, s + h, &point, &ahead, &k_unused, &t_unused));
    check(fd_helix_frame(a, b, s - h, &point, &behind, &k_unused, &t_unused));
    fd_frame analytic{};
    check(fd_frenet_derivative(&frame, kappa, tau, &analytic));
    auto diff = [h](const fd_vec3& p, const fd_vec3& m) {
      return fd_vec3{(p.x - m.x) / (2 * h), (p.y - m.y) / (2 * h), (p.z - m.z) / (2 * h)};
    };
    const fd_frame numeric{diff(ahead.t, behind.t), diff(ahead.n, behind.n), diff(ahead.b, behind.b)};
    const double fd_error = frame_max_diff(analytic, numeric);

    fd_laplacian_report lap{};
    check(fd_frame_laplacian(kappa, tau, &lap));
    const double n_residual = lap.residual[1][1];
    const bool ok = fd_error < kFdTolerance &&
                    std::fabs(n_residual - tau * tau) <= 1e-12 * std::max(1.0, tau * tau);
    all_passed = all_passed && ok;
    t.rows.push_back({a, b, s, kappa, tau, fd_error, orthonormality_defect(frame), n_residual, ok});
  }
  r.tables.push_back(std::move(t));
  return r;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (const auto* api = dynamic_cast<const ApiError*>(&e)) {
    switch (api->status()) {
      case FD_ERR_INVALID_ARGUMENT:
      case FD_ERR_VALIDITY_CONDITION:
        return kExitConfig;
      default:
        return kExitDomain;
    }
  }
  return kExitDomain;
}

}  // namespace filadyn::cli
