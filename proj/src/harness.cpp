#include "lemni/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "lemni/analytic.hpp"
#include "lemni/components.hpp"
#include "lemni/errors.hpp"
#include "lemni/heavytail.hpp"
#include "lemni/kacrice.hpp"
#include "lemni/raster.hpp"

namespace lemni {

namespace {

constexpr std::int64_t kSummaryBlock = 256;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string k) {
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (!in || !(in >> std::ws).eof())
    throw ConfigError("invalid value '" + text + "' for '" + key + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("invalid boolean '" + text + "' for '" + key + "'");
}

std::vector<std::int64_t> parse_list(const std::string& key, const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number<std::int64_t>(key, item));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::ostream& open_or(std::ofstream& file, const std::string& path, std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Raster: return "raster";
    case Command::Constants: return "constants";
    case Command::Area: return "area";
    case Command::Heavytail: return "heavytail";
    case Command::Kacrice: return "kacrice";
    case Command::Scaling: return "scaling";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Simulate, Command::Raster, Command::Constants, Command::Area,
                    Command::Heavytail, Command::Kacrice, Command::Scaling})
    if (name == to_string(c)) return c;
  if (name == "area-predict") return Command::Area;
  throw ConfigError("unknown command '" + name + "'");
}

std::map<std::string, std::string> parse_config_text(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || trim(t.substr(0, eq)).empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    kv[normalize_key(trim(t.substr(0, eq)))] = trim(t.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_config_text(in);
}

void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [raw_key, v] : kv) {
    const std::string k = normalize_key(raw_key);
    if (k == "command") cfg.command = parse_command(v);
    else if (k == "n") cfg.n = parse_number<std::int64_t>(k, v);
    else if (k == "trials") cfg.trials = parse_number<std::int64_t>(k, v);
    else if (k == "seed" || k == "master_seed") {
      try {
        cfg.master_seed = parse_seed(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    else if (k == "kappa") cfg.kappa = parse_number<double>(k, v);
    else if (k == "threads") cfg.threads = parse_number<int>(k, v);
    else if (k == "res" || k == "resolution") cfg.resolution = parse_number<int>(k, v);
    else if (k == "bound") cfg.bound = parse_number<double>(k, v);
    else if (k == "mode") cfg.mode = v;
    else if (k == "eps") cfg.eps = parse_number<double>(k, v);
    else if (k == "grid") cfg.grid = parse_number<int>(k, v);
    else if (k == "r") cfg.r = parse_number<double>(k, v);
    else if (k == "a") cfg.a = parse_number<double>(k, v);
    else if (k == "b") cfg.b = parse_number<double>(k, v);
    else if (k == "q1") cfg.q1 = parse_bool(k, v);
    else if (k == "c_n") cfg.c_n = parse_number<double>(k, v);
    else if (k == "area_samples") cfg.area_samples = parse_number<std::int64_t>(k, v);
    else if (k == "boundary_points") cfg.boundary_points = parse_number<int>(k, v);
    else if (k == "n_list") cfg.n_list = parse_list(k, v);
    else if (k == "no_timing") cfg.no_timing = parse_bool(k, v);
    else if (k == "dump_crit") cfg.dump_crit = parse_bool(k, v);
    else if (k == "out" || k == "out_path") cfg.out_path = v;
    else throw ConfigError("unknown setting '" + raw_key + "'");
  }
}

void validate(const ExperimentConfig& cfg) {
  require(cfg.n >= 1, "n must be >= 1");
  require(cfg.trials >= 1, "trials must be >= 1");
  require(cfg.kappa > 0.0, "kappa must be > 0");
  require(cfg.threads >= 0, "threads must be >= 0");
  require(cfg.area_samples >= 0, "area_samples must be >= 0");
  require(cfg.boundary_points == 0 || cfg.boundary_points >= 256,
          "boundary_points must be 0 (auto) or >= 256");
  switch (cfg.command) {
    case Command::Raster:
      require(cfg.resolution >= 64, "res must be >= 64");
      require(cfg.bound > 1.0, "bound must be > 1");
      break;
    case Command::Area:
      require(cfg.n >= 2, "area needs n >= 2");
      require(cfg.c_n >= 0.0, "c_n must be >= 0");
      break;
    case Command::Heavytail:
      require(cfg.r > 0.0 && cfg.r < 1.0, "r must lie in (0, 1)");
      require(cfg.a <= cfg.b, "need a <= b");
      break;
    case Command::Kacrice:
      require(cfg.mode == "epsint" || cfg.mode == "on-event" || cfg.mode == "t0",
              "mode must be epsint, on-event or t0");
      require(cfg.eps > 0.0, "eps must be > 0");
      require(cfg.grid >= 256, "grid must be >= 256");
      require(cfg.mode == "epsint" || cfg.n >= 3, "on-event and t0 need n >= 3");
      require(cfg.mode != "t0" || cfg.trials >= 32, "t0 needs trials >= 32");
      break;
    case Command::Scaling:
      require(cfg.n_list.size() >= 2, "scaling needs at least two values in n_list");
      for (auto v : cfg.n_list) require(v >= 1, "n_list entries must be >= 1");
      break;
    default:
      break;
  }
}

ExperimentConfig default_config(Command command) {
  ExperimentConfig cfg;
  cfg.command = command;
  switch (command) {
    case Command::Heavytail:
      cfg.n = 200;
      cfg.trials = 100000;
      break;
    case Command::Kacrice:
      cfg.n = 6;
      cfg.kappa = 1.0;
      cfg.trials = 100000;
      break;
    case Command::Scaling:
      cfg.trials = 2000;
      break;
    default:
      break;
  }
  return cfg;
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::int64_t trial_index, CriticalSet* crit_out) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.n = cfg.n;
  const RngStream base = derive_substream(cfg.master_seed, static_cast<std::uint64_t>(trial_index));
  RngStream roots_rng = lane_of(base, Lane::Roots);
  RngStream solver_rng = lane_of(base, Lane::Solver);
  RngStream area_rng = lane_of(base, Lane::Area);
  try {
    const RootedPolynomial poly = RootedPolynomial::sample(static_cast<std::size_t>(cfg.n), roots_rng);
    CriticalSet crit = find_critical_points(poly, solver_rng);
    rec.status = crit.status;
    rec.restarts = crit.restarts;
    rec.max_residual = crit.max_residual();
    if (!crit.converged) {
      rec.failed = true;
    } else {
      const ComponentReport rep = count_components(poly, crit, cfg.kappa);
      rec.components = rep.components;
      rec.components_annulus = rep.components_annulus;
      rec.n_crit_outside = rep.n_crit_outside;
      rec.n_ambiguous = rep.n_ambiguous;
      if (cfg.area_samples > 0) rec.area_outside_est = area_outside_mc(poly, cfg.area_samples, area_rng);
      // A non-positive radius means the disc is empty and trivially inside.
      const int bp = cfg.boundary_points > 0 ? cfg.boundary_points
                                             : default_boundary_points(poly.degree());
      rec.inradius_ok = annulus_inner_radius(poly.degree(), cfg.kappa) <= 0.0 ||
                        inradius_holds(poly, cfg.kappa, bp);
    }
    if (crit_out) *crit_out = std::move(crit);
  } catch (const std::exception&) {
    rec.failed = true;
    rec.status = SolverStatus::NonConvergence;
  }
  if (!cfg.no_timing)
    rec.wall_micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return rec;
}

std::string format_trial_row(const TrialRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%lld,%lld,%d,%d,%d,%.10g,%.3e,%d,%lld",
                static_cast<long long>(r.trial_index), static_cast<long long>(r.n), r.components,
                r.components_annulus, r.n_crit_outside, r.area_outside_est, r.max_residual,
                r.inradius_ok ? 1 : 0, static_cast<long long>(r.wall_micros));
  return buf;
}

double SimulateResult::failure_fraction() const {
  return records.empty() ? 0.0
                         : static_cast<double>(failures) / static_cast<double>(records.size());
}

SimulateResult run_simulate(const ExperimentConfig& cfg) {
  SimulateResult res;
  res.records.resize(static_cast<std::size_t>(cfg.trials));
  std::vector<CriticalSet> crits(cfg.dump_crit ? res.records.size() : 0);
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      const auto i = static_cast<std::size_t>(t);
      res.records[i] = run_trial(cfg, t, cfg.dump_crit ? &crits[i] : nullptr);
    }
  };
  const int threads = static_cast<int>(std::min<std::int64_t>(effective_threads(cfg.threads), cfg.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const double sqrt_n = std::sqrt(static_cast<double>(cfg.n));
  for (std::int64_t b0 = 0; b0 < cfg.trials; b0 += kSummaryBlock) {
    SummaryAccumulator comp, ann, area, inr;
    const std::int64_t b1 = std::min(cfg.trials, b0 + kSummaryBlock);
    for (std::int64_t t = b0; t < b1; ++t) {
      const TrialRecord& r = res.records[static_cast<std::size_t>(t)];
      if (r.failed) {
        ++res.failures;
        continue;
      }
      comp.add(r.components);
      ann.add(r.components_annulus);
      area.add(sqrt_n * r.area_outside_est);
      inr.add(r.inradius_ok ? 1.0 : 0.0);
    }
    res.components.merge(comp);
    res.components_annulus.merge(ann);
    res.area_sqrt_n.merge(area);
    res.inradius.merge(inr);
  }
  if (cfg.dump_crit && !cfg.out_path.empty()) {
    std::ofstream dump(cfg.out_path + ".crit.csv");
    if (!dump) throw std::runtime_error("cannot open '" + cfg.out_path + ".crit.csv'");
    dump << "trial,re,im,residual\n" << std::setprecision(17);
    for (std::size_t t = 0; t < crits.size(); ++t)
      for (std::size_t j = 0; j < crits[t].points.size(); ++j)
        dump << t << ',' << crits[t].points[j].real() << ',' << crits[t].points[j].imag() << ','
             << crits[t].residuals[j] << '\n';
  }
  return res;
}

void write_trial_csv(std::ostream& out, const SimulateResult& res) {
  out << kTrialCsvHeader << '\n';
  for (const auto& r : res.records) out << format_trial_row(r) << '\n';
}

void write_failures(std::ostream& out, const SimulateResult& res) {
  out << "trial,status,restarts,max_residual\n";
  for (const auto& r : res.records)
    if (r.failed)
      out << r.trial_index << ',' << to_string(r.status) << ',' << r.restarts << ','
          << fmt(r.max_residual, 3) << '\n';
}

void write_summary(std::ostream& out, const ExperimentConfig& cfg, const SimulateResult& res) {
  const double sqrt_n = std::sqrt(static_cast<double>(cfg.n));
  const auto& c = res.components;
  out << "n                    " << cfg.n << '\n'
      << "trials               " << res.records.size() << '\n'
      << "failures             " << res.failures << '\n'
      << "mean components      " << fmt(c.mean()) << " +- " << fmt(c.standard_error(), 4) << '\n'
      << "mean / sqrt(n)       " << fmt(c.mean() / sqrt_n) << " +- "
      << fmt(c.standard_error() / sqrt_n, 4) << '\n'
      << "limit constant       " << fmt(limit_constant()) << '\n'
      << "mean annulus count   " << fmt(res.components_annulus.mean()) << '\n'
      << "inradius frequency   " << fmt(res.inradius.mean()) << '\n';
  if (cfg.area_samples > 0)
    out << "sqrt(n) mean area    " << fmt(res.area_sqrt_n.mean()) << " +- "
        << fmt(res.area_sqrt_n.standard_error(), 4) << '\n';
}

std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg) {
  std::vector<ScalingRow> rows;
  for (std::int64_t n : cfg.n_list) {
    ExperimentConfig c = cfg;
    c.n = n;
    c.area_samples = 0;
    c.dump_crit = false;
    const SimulateResult res = run_simulate(c);
    ScalingRow row;
    row.n = n;
    row.mean = res.components.estimate();
    const double s = std::sqrt(static_cast<double>(n));
    row.per_sqrt_n = {row.mean.value / s, row.mean.se / s};
    row.failures = res.failures;
    row.in_bracket = n < 100 || (row.per_sqrt_n.value >= 0.2 && row.per_sqrt_n.value <= 1.0);
    rows.push_back(row);
  }
  return rows;
}

void write_scaling(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "n,mean_components,se,mean_over_sqrt_n,se_over_sqrt_n,distance_to_limit,failures,in_bracket\n";
  for (const auto& r : rows)
    out << r.n << ',' << fmt(r.mean.value) << ',' << fmt(r.mean.se, 4) << ','
        << fmt(r.per_sqrt_n.value) << ',' << fmt(r.per_sqrt_n.se, 4) << ','
        << fmt(std::abs(r.per_sqrt_n.value - limit_constant()), 4) << ',' << r.failures << ','
        << (r.in_bracket ? 1 : 0) << '\n';
}

int command_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const SimulateResult res = run_simulate(cfg);
  if (cfg.out_path.empty()) {
    write_trial_csv(out, res);
    std::ostringstream s;
    write_summary(s, cfg, res);
    std::istringstream lines(s.str());
    for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
  } else {
    std::ofstream csv(cfg.out_path);
    if (!csv) throw std::runtime_error("cannot open '" + cfg.out_path + "' for writing");
    write_trial_csv(csv, res);
    std::ofstream fail(cfg.out_path + ".failures");
    if (!fail) throw std::runtime_error("cannot open '" + cfg.out_path + ".failures' for writing");
    write_failures(fail, res);
    write_summary(out, cfg, res);
  }
  if (res.failure_threshold_exceeded()) {
    out << "error: " << res.failures << " of " << res.records.size()
        << " trials failed (threshold 0.1%)\n";
    return 3;
  }
  return 0;
}

int command_scaling(const ExperimentConfig& cfg, std::ostream& out) {
  const auto rows = run_scaling(cfg);
  std::ofstream file;
  write_scaling(open_or(file, cfg.out_path, out), rows);
  std::int64_t failures = 0;
  for (const auto& r : rows) failures += r.failures;
  const double frac = static_cast<double>(failures) /
                      static_cast<double>(cfg.trials * static_cast<std::int64_t>(rows.size()));
  if (frac > 1e-3) {
    out << "error: failure fraction " << fmt(frac, 3) << " exceeds 0.1%\n";
    return 3;
  }
  return 0;
}

int command_raster(const ExperimentConfig& cfg, std::ostream& out) {
  const RngStream base = derive_substream(cfg.master_seed, 0);
  RngStream roots_rng = lane_of(base, Lane::Roots);
  RngStream solver_rng = lane_of(base, Lane::Solver);
  const RootedPolynomial poly = RootedPolynomial::sample(static_cast<std::size_t>(cfg.n), roots_rng);
  const CriticalSet crit = find_critical_points(poly, solver_rng);
  RasterGrid grid = rasterize(poly, cfg.resolution, cfg.bound, kDefaultRasterMemoryCap,
                              effective_threads(cfg.threads));
  const int pixel_components = flood_count(grid);
  const std::string path = cfg.out_path.empty() ? "lemniscate.ppm" : cfg.out_path;
  write_ppm(grid, poly, cfg.kappa, path);
  out << "n                    " << cfg.n << '\n';
  if (crit.converged) {
    const ComponentReport rep = count_components(poly, crit, cfg.kappa);
    out << "components           " << rep.components << '\n'
        << "ambiguous values     " << rep.n_ambiguous << '\n';
  } else {
    out << "components           (solver did not converge)\n";
  }
  out << "raster components    " << pixel_components << '\n'
      << "raster ambiguous     " << (raster_ambiguous(grid, poly) ? "yes" : "no") << '\n'
      << "inside pixels        " << grid.inside_count() << '\n'
      << "image                " << path << '\n';
  return crit.converged ? 0 : 3;
}

int command_constants(std::ostream& out) {
  const double var = var_log_one_minus_x();
  out << "zeta(2)                       " << fmt(kZeta2) << '\n'
      << "var_log_one_minus_x           " << fmt(var) << '\n'
      << "var_closed_form               " << fmt((kZeta2 - 1.0) / 2.0) << '\n'
      << "limit_constant                " << fmt(limit_constant()) << '\n'
      << "sqrt(2 var / pi)              " << fmt(std::sqrt(2.0 * var / std::numbers::pi)) << '\n'
      << "area_limit_constant           " << fmt(area_limit_constant()) << '\n'
      << "dilog(1/2)                    " << fmt(dilog(0.5)) << '\n';
  return 0;
}

int command_area(const ExperimentConfig& cfg, std::ostream& out) {
  const double area = edgeworth_area(static_cast<std::size_t>(cfg.n), cfg.kappa, cfg.c_n, cfg.q1);
  const double s = std::sqrt(static_cast<double>(cfg.n));
  out << "n,kappa,c_n,q1,area,sqrt_n_area,limit\n"
      << cfg.n << ',' << fmt(cfg.kappa) << ',' << fmt(cfg.c_n) << ',' << (cfg.q1 ? 1 : 0) << ','
      << fmt(area) << ',' << fmt(s * area) << ',' << fmt(area_limit_constant()) << '\n';
  return 0;
}

int command_heavytail(const ExperimentConfig& cfg, std::ostream& out) {
  RngStream rng = derive_substream(cfg.master_seed, 0);
  const Estimate est = walk_interval_prob_mc(cfg.r, cfg.n, cfg.a, cfg.b, cfg.trials, rng);
  double pred = std::nan("");
  try {
    pred = single_jump_prediction(cfg.r, cfg.n, cfg.a, cfg.b);
  } catch (const std::domain_error&) {
  }
  std::ofstream file;
  std::ostream& o = open_or(file, cfg.out_path, out);
  o << "r,n,a,b,trials,estimate,se,prediction,ratio\n"
    << fmt(cfg.r) << ',' << cfg.n << ',' << fmt(cfg.a) << ',' << fmt(cfg.b) << ',' << cfg.trials
    << ',' << fmt(est.value) << ',' << fmt(est.se, 4) << ',' << fmt(pred) << ','
    << fmt(est.value / pred, 6) << '\n';
  return 0;
}

int command_kacrice(const ExperimentConfig& cfg, std::ostream& out) {
  std::ofstream file;
  std::ostream& o = open_or(file, cfg.out_path, out);
  RngStream rng = derive_substream(cfg.master_seed, 0);
  if (cfg.mode == "epsint") {
    const RootedPolynomial poly = RootedPolynomial::sample(static_cast<std::size_t>(cfg.n), rng);
    EpsCountOptions opt;
    opt.threads = effective_threads(cfg.threads);
    const double v = epsilon_count(poly, Rect{}, cfg.eps, cfg.grid, opt);
    o << "n,eps,grid,estimate,critical_points\n"
      << cfg.n << ',' << fmt(cfg.eps) << ',' << cfg.grid << ',' << fmt(v) << ',' << cfg.n - 1 << '\n';
  } else if (cfg.mode == "on-event") {
    const OnEstimates e = estimate_p_on_and_mn(static_cast<std::size_t>(cfg.n), cfg.kappa, cfg.trials, rng);
    const double combined = std::hypot(e.p_on.se, e.m_n.se);
    o << "n,kappa,trials,p_on,p_on_se,m_n,m_n_se,annulus_fraction,combined_se,z\n"
      << cfg.n << ',' << fmt(cfg.kappa) << ',' << cfg.trials << ',' << fmt(e.p_on.value) << ','
      << fmt(e.p_on.se, 4) << ',' << fmt(e.m_n.value) << ',' << fmt(e.m_n.se, 4) << ','
      << fmt(e.annulus_fraction.value) << ',' << fmt(combined, 4) << ','
      << fmt((e.p_on.value - e.m_n.value) / combined, 4) << '\n';
  } else {
    const T0Estimate e = estimate_t0(static_cast<std::size_t>(cfg.n), cfg.kappa, cfg.trials, rng);
    o << "n,kappa,trials,t0_mean,t0_mean_se,t0_median_of_means,t0_mom_se,max_integrand\n"
      << cfg.n << ',' << fmt(cfg.kappa) << ',' << cfg.trials << ',' << fmt(e.mean.value) << ','
      << fmt(e.mean.se, 4) << ',' << fmt(e.median_of_means.value) << ','
      << fmt(e.median_of_means.se, 4) << ',' << fmt(e.max_value) << '\n';
  }
  return 0;
}

}  // namespace lemni
