// SPDX-License-Identifier: Apache-2.0

#include "rtri/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rtri/estimation.hpp"
#include "rtri/optimize.hpp"
#include "rtri/rate.hpp"
#include "rtri/version.hpp"

namespace rtri {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// CSV file with a `# manifest:` comment line, a header row, and
/// 12-significant-digit values. Cells may also be plain strings.
class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& manifest_name,
            const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open CSV for writing: " + path.string());
    out_ << "# manifest: " << manifest_name << "\n";
    write_row(header);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
  }

  void write_values(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_value(v));
    write_row(cells);
  }

 private:
  std::ofstream out_;
};

json config_to_json(const LinkConfig& c) {
  return json{{"n_tx", c.n_tx},
              {"n_rx", c.n_rx},
              {"coherence", c.coherence},
              {"delta", c.delta},
              {"snr", c.snr}};
}

void write_manifest(const fs::path& path, const ExperimentSpec& spec) {
  json manifest{{"kind", experiment_kind_name(spec.kind)},
                {"config", config_to_json(spec.config)},
                {"snr_grid_db", spec.snr_grid_db},
                {"delta_list", spec.delta_list},
                {"trials", spec.trials},
                {"seed", spec.seed},
                {"output_path", spec.output_path},
                {"library_version", kVersion}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest for writing: " + path.string());
  out << manifest.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Minimal SVG line plot: one polyline per delta series over the SNR grid.

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_svg_plot(const fs::path& path, const std::string& title, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  constexpr int kWidth = 640, kHeight = 480, kMargin = 56;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        first = false;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const auto px = [&](double x) {
    return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - (y - y_min) / (y_max - y_min) * (kHeight - 2 * kMargin);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open SVG for writing: " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";
  // axes
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">SNR [dB]</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-size=\"12\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << y_label << "</text>\n";
  for (double frac : {0.0, 0.5, 1.0}) {
    const double xv = x_min + frac * (x_max - x_min);
    const double yv = y_min + frac * (y_max - y_min);
    out << "<text x=\"" << px(xv) << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << format_value(xv) << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_value(yv) << "</text>\n";
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kColors[si % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 16 * si + 10
        << "\" font-size=\"11\" fill=\"" << color << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature for the validation battery's PDF checks.

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48);
}

// ---------------------------------------------------------------------------
// Experiment runners. Each fills rows for its CSV schema and optionally a
// plot series per delta.

struct SweepOutput {
  std::vector<std::vector<double>> rows;
  std::vector<PlotSeries> series;
};

std::string delta_label(double delta) {
  std::ostringstream label;
  label << "delta = " << delta;
  return label.str();
}

SweepOutput run_mse_sweep(const ExperimentSpec& spec) {
  SweepOutput out;
  const RandomSource root(spec.seed, 0);
  std::uint64_t cell = 0;
  for (double delta : spec.delta_list) {
    LinkConfig cfg = spec.config;
    cfg.delta = delta;
    PlotSeries series{delta_label(delta), {}, {}};
    for (double snr_db : spec.snr_grid_db) {
      const double rho_p = db_to_linear(snr_db);
      const double closed = normalized_mse(training_gain(rho_p, cfg.n_tx, cfg.n_tx, delta));
      const RandomSource cell_rng = root.substream(cell++);
      const MonteCarloStats mc =
          empirical_mse(cfg, cfg.n_tx, rho_p, spec.trials, cell_rng, spec.workers);
      out.rows.push_back({snr_db, delta, closed, mc.mean, mc.std_err});
      series.x.push_back(snr_db);
      series.y.push_back(mc.mean);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

SweepOutput run_tp_search(const ExperimentSpec& spec, PowerMode mode) {
  SweepOutput out;
  for (double delta : spec.delta_list) {
    PlotSeries series{delta_label(delta), {}, {}};
    for (double snr_db : spec.snr_grid_db) {
      LinkConfig cfg = spec.config;
      cfg.delta = delta;
      cfg.snr = db_to_linear(snr_db);
      const TrainingDesign design = optimize_training_length(cfg, mode);
      out.rows.push_back({snr_db, delta, static_cast<double>(design.t_p), design.alpha,
                          design.rate.bits_per_use});
      series.x.push_back(snr_db);
      series.y.push_back(design.t_p);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

SweepOutput run_rate_sweep(const ExperimentSpec& spec) {
  SweepOutput out;
  for (double delta : spec.delta_list) {
    PlotSeries series{delta_label(delta), {}, {}};
    for (double snr_db : spec.snr_grid_db) {
      LinkConfig cfg = spec.config;
      cfg.delta = delta;
      cfg.snr = db_to_linear(snr_db);
      const TrainingDesign design = optimize_training_length(cfg, PowerMode::joint_power);
      out.rows.push_back({snr_db, delta, design.rate.bits_per_use});
      series.x.push_back(snr_db);
      series.y.push_back(design.rate.bits_per_use);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

SweepOutput run_rate_gain(const ExperimentSpec& spec) {
  SweepOutput out;
  for (double delta : spec.delta_list) {
    PlotSeries series{delta_label(delta), {}, {}};
    for (double snr_db : spec.snr_grid_db) {
      LinkConfig cfg = spec.config;
      cfg.delta = delta;
      const double gain = relative_rate_gain(cfg, db_to_linear(snr_db));
      out.rows.push_back({snr_db, delta, gain});
      series.x.push_back(snr_db);
      series.y.push_back(gain);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation battery.

struct PropertyRow {
  std::string property;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

PropertyRow check(const std::string& property, double measured, double bound) {
  return PropertyRow{property, measured, bound, measured <= bound};
}

std::vector<PropertyRow> run_validate(const ExperimentSpec& spec) {
  std::vector<PropertyRow> rows;
  const RandomSource root(spec.seed, 0);
  const int trials = spec.trials;

  // Closed-form MSE against the Monte-Carlo oracle.
  {
    double max_z = 0.0;
    std::uint64_t cell = 0;
    for (double rho_db : {-10.0, 0.0, 10.0}) {
      for (double delta : {0.0, 0.08, 0.175}) {
        for (int t_p : {4, 8}) {
          LinkConfig cfg{4, 4, 100, delta, 1.0};
          const double rho_p = db_to_linear(rho_db);
          const double closed = normalized_mse(training_gain(rho_p, t_p, cfg.n_tx, delta));
          const MonteCarloStats mc = empirical_mse(cfg, t_p, rho_p, trials,
                                                   root.substream(1000 + cell++), spec.workers);
          max_z = std::max(max_z, std::abs(mc.mean - closed) / mc.std_err);
        }
      }
    }
    rows.push_back(check("mse_closed_vs_mc_max_abs_z", max_z, 3.0));
  }

  // High-power MSE floor.
  {
    double max_rel = 0.0;
    std::uint64_t cell = 0;
    for (double delta : {0.08, 0.175}) {
      LinkConfig cfg{4, 4, 100, delta, 1.0};
      const double floor = mse_floor(4, 4, delta);
      const MonteCarloStats mc =
          empirical_mse(cfg, 4, 1e4, trials, root.substream(2000 + cell++), spec.workers);
      max_rel = std::max(max_rel, std::abs(mc.mean - floor) / floor);
    }
    rows.push_back(check("mse_floor_max_rel_err", max_rel, 0.05));
  }

  // Closed-form rate against the Monte-Carlo oracle; the allowed gap is
  // max(1% of the closed form, 3 standard errors).
  {
    double worst = 0.0;
    std::uint64_t cell = 0;
    for (auto [n_tx, n_rx] : {std::pair{1, 1}, {2, 2}, {4, 4}, {2, 4}, {4, 2}}) {
      for (double rho_eff : {0.1, 1.0, 10.0, 100.0}) {
        const EffectiveSnr snr_eff{rho_eff};
        const RateResult cf = closed_form_rate(snr_eff, n_tx, n_rx, 96, 100);
        const RateResult mc = mc_rate(snr_eff, n_tx, n_rx, 96, 100, trials,
                                      root.substream(3000 + cell++), spec.workers);
        const double allowed = std::max(0.01 * cf.bits_per_use, 3.0 * mc.std_err);
        worst = std::max(worst, std::abs(cf.bits_per_use - mc.bits_per_use) / allowed);
      }
    }
    rows.push_back(check("rate_closed_vs_mc_max_gap_ratio", worst, 1.0));
  }

  // Wishart eigenvalue density: unit mass and first moment p.
  {
    double worst_norm = 0.0;
    double worst_moment = 0.0;
    for (int p = 1; p <= 5; ++p) {
      for (int q = 1; q <= p; ++q) {
        const double lambda_max = 60.0 + 10.0 * (p + q);
        const auto pdf = [&](double l) { return wishart_unordered_eig_pdf(l, p, q); };
        const auto moment = [&](double l) { return l * wishart_unordered_eig_pdf(l, p, q); };
        worst_norm = std::max(worst_norm, std::abs(integrate(pdf, 0.0, lambda_max, 1e-10) - 1.0));
        worst_moment = std::max(
            worst_moment, std::abs(integrate(moment, 0.0, lambda_max, 1e-10) - p) / p);
      }
    }
    rows.push_back(check("wishart_pdf_norm_max_abs_err", worst_norm, 1e-6));
    rows.push_back(check("wishart_pdf_first_moment_max_rel_err", worst_moment, 1e-5));
  }

  // Effective-SNR route equivalence: closed form vs the variance-ratio route.
  {
    RandomSource rng = root.substream(4000);
    double max_rel = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double rho_p = db_to_linear(-20.0 + 60.0 * rng.uniform());
      const double rho_d = db_to_linear(-20.0 + 60.0 * rng.uniform());
      const int n_tx = 1 + static_cast<int>(rng.uniform() * 4);
      const int t_p = n_tx + static_cast<int>(rng.uniform() * 16);
      const double delta = 0.2 * rng.uniform();
      const double g = training_gain(rho_p, t_p, n_tx, delta);
      const double est_var = g / (1.0 + g);
      const double noise_var = (1.0 / (1.0 + g) + delta * delta) * rho_d + 1.0;
      const double ratio_route = rho_d * est_var / noise_var;
      const double closed = effective_snr(rho_p, rho_d, t_p, n_tx, delta).value;
      max_rel = std::max(max_rel, std::abs(closed - ratio_route) / ratio_route);
    }
    rows.push_back(check("effective_snr_route_max_rel_gap", max_rel, 1e-12));
  }

  // Closed-form power split beats a dense grid (up to 1e-12 relative slack),
  // and approaches 1/2 at low SNR.
  {
    RandomSource rng = root.substream(5000);
    double worst_shortfall = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double rho = db_to_linear(-20.0 + 60.0 * rng.uniform());
      const int coherence = 20 + static_cast<int>(rng.uniform() * 180);
      const int n_tx = 1 + static_cast<int>(rng.uniform() * 4);
      const int t_p = n_tx + static_cast<int>(rng.uniform() * (coherence - n_tx - 1));
      const double delta = 0.2 * rng.uniform();
      LinkConfig cfg{n_tx, n_tx, coherence, delta, rho};
      const auto snr_at = [&](double alpha) {
        const ResourceSplit split = split_resources(cfg, t_p, alpha);
        return effective_snr(split.rho_p, split.rho_d, t_p, n_tx, delta).value;
      };
      const double at_opt = snr_at(optimal_alpha(rho, coherence, t_p, n_tx, delta));
      double best_grid = 0.0;
      for (int k = 1; k <= 9999; ++k) {
        best_grid = std::max(best_grid, snr_at(k / 10000.0));
      }
      worst_shortfall = std::max(worst_shortfall, (best_grid - at_opt) / at_opt);
    }
    rows.push_back(check("alpha_optimality_max_rel_shortfall", worst_shortfall, 1e-12));
    rows.push_back(
        check("alpha_low_snr_limit_abs_err", std::abs(optimal_alpha(1e-8, 100, 4, 4, 0.175) - 0.5),
              1e-3));
  }

  // Energy conservation of every candidate split in a T_p search.
  {
    double max_rel = 0.0;
    LinkConfig cfg{4, 4, 100, 0.175, db_to_linear(10.0)};
    for (int t_p = cfg.n_tx; t_p <= cfg.coherence - 1; ++t_p) {
      const double alpha = optimal_alpha(cfg.snr, cfg.coherence, t_p, cfg.n_tx, cfg.delta);
      const ResourceSplit split = split_resources(cfg, t_p, alpha);
      const double total = cfg.snr * cfg.coherence;
      max_rel = std::max(
          max_rel, std::abs(split.rho_p * split.t_p + split.rho_d * split.t_d - total) / total);
    }
    rows.push_back(check("energy_conservation_max_rel_err", max_rel, 1e-9));
  }

  // Worker-count independence of the Monte-Carlo reductions.
  {
    LinkConfig cfg{4, 4, 100, 0.175, 1.0};
    const MonteCarloStats a = empirical_mse(cfg, 4, 10.0, 2000, root.substream(6000), 1);
    const MonteCarloStats b = empirical_mse(cfg, 4, 10.0, 2000, root.substream(6000), 4);
    const RateResult ra = mc_rate(EffectiveSnr{1.0}, 4, 4, 96, 100, 2000, root.substream(6001), 1);
    const RateResult rb = mc_rate(EffectiveSnr{1.0}, 4, 4, 96, 100, 2000, root.substream(6001), 4);
    const double diff = std::max(std::abs(a.mean - b.mean),
                                 std::abs(ra.bits_per_use - rb.bits_per_use));
    rows.push_back(check("worker_count_independence_max_abs_diff", diff, 0.0));
  }

  return rows;
}

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::mse_sweep: return "mse_sweep";
    case ExperimentKind::optimal_tp: return "optimal_tp";
    case ExperimentKind::rate_sweep: return "rate_sweep";
    case ExperimentKind::rate_gain: return "rate_gain";
    case ExperimentKind::equal_power_tp: return "equal_power_tp";
    case ExperimentKind::validate: return "validate";
  }
  throw std::invalid_argument("experiment_kind_name: unknown kind");
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
  static const std::map<std::string, ExperimentKind> kinds = {
      {"mse_sweep", ExperimentKind::mse_sweep},
      {"optimal_tp", ExperimentKind::optimal_tp},
      {"rate_sweep", ExperimentKind::rate_sweep},
      {"rate_gain", ExperimentKind::rate_gain},
      {"equal_power_tp", ExperimentKind::equal_power_tp},
      {"validate", ExperimentKind::validate}};
  const auto it = kinds.find(name);
  if (it == kinds.end()) throw std::invalid_argument("unknown experiment kind: " + name);
  return it->second;
}

void ExperimentSpec::validate_spec() const {
  std::ostringstream msg;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    msg << e.what() << " ";
  }
  if (snr_grid_db.empty()) msg << "snr_grid_db must be non-empty; ";
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
      msg << "snr_grid_db must be strictly increasing; ";
      break;
    }
  }
  if (delta_list.empty()) msg << "delta_list must be non-empty; ";
  for (double d : delta_list) {
    if (!(d >= 0.0)) {
      msg << "delta_list values must be >= 0; ";
      break;
    }
  }
  if (trials < 1) msg << "trials must be >= 1 (got " << trials << "); ";
  if (output_path.empty()) msg << "output_path must be non-empty; ";
  if (workers < 0) msg << "workers must be >= 0 (got " << workers << "); ";
  const std::string text = msg.str();
  if (!text.empty()) throw std::invalid_argument("ExperimentSpec: " + text);
}

double db_to_linear(double db) {
  return std::pow(10.0, db / 10.0);
}

std::vector<double> parse_snr_range(const std::string& text) {
  double start = 0, step = 0, stop = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> start >> sep1 >> step >> sep2 >> stop) || sep1 != ':' || sep2 != ':' ||
      !(step > 0.0)) {
    throw std::invalid_argument("expected start:step:stop with step > 0, got '" + text + "'");
  }
  std::vector<double> grid;
  for (double v = start; v <= stop + 0.5 * step; v += step) grid.push_back(v);
  return grid;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse config file " + path + ": " + e.what());
  }
  ExperimentSpec spec;
  if (j.contains("kind")) spec.kind = experiment_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("config")) {
    const json& c = j.at("config");
    if (c.contains("n_tx")) spec.config.n_tx = c.at("n_tx").get<int>();
    if (c.contains("n_rx")) spec.config.n_rx = c.at("n_rx").get<int>();
    if (c.contains("coherence")) spec.config.coherence = c.at("coherence").get<int>();
    if (c.contains("delta")) spec.config.delta = c.at("delta").get<double>();
    if (c.contains("snr")) spec.config.snr = c.at("snr").get<double>();
  }
  if (j.contains("snr_grid_db")) spec.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
  if (j.contains("delta_list")) spec.delta_list = j.at("delta_list").get<std::vector<double>>();
  if (j.contains("trials")) spec.trials = j.at("trials").get<int>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output_path")) spec.output_path = j.at("output_path").get<std::string>();
  if (j.contains("plot")) spec.plot = j.at("plot").get<bool>();
  if (j.contains("workers")) spec.workers = j.at("workers").get<int>();
  return spec;
}

int run(const ExperimentSpec& spec) {
  spec.validate_spec();

  const fs::path out_dir(spec.output_path);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                             ec.message());
  }

  const std::string base = experiment_kind_name(spec.kind);
  const std::string manifest_name = base + ".manifest.json";
  write_manifest(out_dir / manifest_name, spec);

  if (spec.kind == ExperimentKind::validate) {
    const std::vector<PropertyRow> rows = run_validate(spec);
    CsvWriter csv(out_dir / (base + ".csv"), manifest_name,
                  {"property", "status", "measured", "bound"});
    int failures = 0;
    for (const auto& row : rows) {
      csv.write_row({row.property, row.pass ? "pass" : "fail", format_value(row.measured),
                     format_value(row.bound)});
      if (!row.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
  }

  SweepOutput out;
  std::vector<std::string> header;
  std::string y_label;
  switch (spec.kind) {
    case ExperimentKind::mse_sweep:
      out = run_mse_sweep(spec);
      header = {"snr_db", "delta", "mse_closed_form", "mse_empirical", "std_err"};
      y_label = "normalized MSE";
      break;
    case ExperimentKind::optimal_tp:
      out = run_tp_search(spec, PowerMode::joint_power);
      header = {"snr_db", "delta", "t_p_opt", "alpha", "rate_bits"};
      y_label = "optimal T_p";
      break;
    case ExperimentKind::equal_power_tp:
      out = run_tp_search(spec, PowerMode::equal_power);
      header = {"snr_db", "delta", "t_p_opt", "alpha", "rate_bits"};
      y_label = "optimal T_p";
      break;
    case ExperimentKind::rate_sweep:
      out = run_rate_sweep(spec);
      header = {"snr_db", "delta", "rate_bits"};
      y_label = "rate [bits/channel use]";
      break;
    case ExperimentKind::rate_gain:
      out = run_rate_gain(spec);
      header = {"snr_db", "delta", "gain_percent"};
      y_label = "relative rate gain [%]";
      break;
    case ExperimentKind::validate:
      break;
  }

  CsvWriter csv(out_dir / (base + ".csv"), manifest_name, header);
  for (const auto& row : out.rows) csv.write_values(row);
  if (spec.plot) write_svg_plot(out_dir / (base + ".svg"), base, y_label, out.series);
  return 0;
}

}  // namespace rtri
