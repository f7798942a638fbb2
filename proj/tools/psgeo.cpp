// psgeo command-line front end: simulate, fit, predict, eval, variogram.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "psgeo/psgeo.hpp"

namespace fs = std::filesystem;
using namespace psgeo;

namespace {

fs::path sibling(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  const std::string stem = p.extension() == ".csv" ? p.stem().string() : p.filename().string();
  return out.replace_filename(stem + suffix);
}

fs::path manifest_path(const fs::path& out) { return sibling(out, "_manifest.txt"); }

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> levels = io::parse_number_list(text);
  if (levels.empty()) throw ConfigError("--levels needs at least one value");
  for (double l : levels)
    if (!(l > 0.0 && l < 1.0)) throw ConfigError("--levels values must lie in (0,1)");
  return levels;
}

PredictionGrid make_grid(const std::string& spec, const Region& region) {
  static const std::regex dims(R"((\d+)[xX](\d+))");
  std::smatch m;
  if (std::regex_match(spec, m, dims)) return PredictionGrid::regular(region, std::stoi(m[1]), std::stoi(m[2]));
  return io::read_grid(spec);
}

Region region_from_optional_config(const std::string& config_path) {
  if (config_path.empty()) return Region::unit_square();
  return io::region_from_config(io::read_config(config_path));
}

void record_samples(io::Manifest& man, const std::string& prefix, const PosteriorSamples& s) {
  man.set(prefix + "draws", std::to_string(s.size()));
  man.set(prefix + "accept.sigma2", s.sigma2.rate());
  man.set(prefix + "accept.phi", s.phi.rate());
  if (s.model == ModelKind::eps) {
    man.set(prefix + "accept.beta", s.beta.rate());
    man.set(prefix + "k.mean", s.k_mean);
    man.set(prefix + "k.min", std::to_string(s.k_min));
    man.set(prefix + "k.max", std::to_string(s.k_max));
  }
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string mode = "ps";
  std::string params;
  std::string out;
  std::uint64_t seed = 1;
  double intensity = kDefaultNpsIntensity;
  std::string field_grid;
};

int cmd_simulate(const SimulateArgs& a, const std::string& cmd) {
  io::Manifest man(manifest_path(a.out), cmd);
  man.set("seed", std::to_string(a.seed));
  try {
    if (a.mode != "ps" && a.mode != "nps") throw ConfigError("--mode must be ps or nps");
    TrueParams p;
    Region region = Region::unit_square();
    if (!a.params.empty()) {
      const io::ConfigMap cfg = io::read_config(a.params);
      p = io::true_params_from_config(cfg);
      region = io::region_from_config(cfg);
    }
    if (a.mode == "nps") p.beta = 0.0;
    Locations extra(0, 2);
    if (!a.field_grid.empty()) extra = make_grid(a.field_grid, region).locations;
    Rng rng(derive_seed(a.seed, "simulate"));
    const SimulatedData sim =
        a.mode == "ps" ? simulate_ps(p, region, rng, extra) : simulate_nps(p, a.intensity * area(region), region, rng, extra);
    io::write_dataset(a.out, sim.data);

    std::ofstream truth(sibling(a.out, "_truth.txt"), std::ios::trunc);
    if (!truth) throw std::runtime_error("cannot write truth sidecar");
    truth << "mode = " << a.mode << '\n';
    if (a.mode == "ps") truth << "lambda_star = " << io::format_double(p.lambda_star) << '\n';
    else truth << "intensity = " << io::format_double(a.intensity) << '\n';
    truth << "mu = " << io::format_double(p.mu) << '\n'
          << "tau2 = " << io::format_double(p.tau2) << '\n'
          << "sigma2 = " << io::format_double(p.sigma2) << '\n'
          << "phi = " << io::format_double(p.phi) << '\n';
    if (a.mode == "ps") truth << "beta = " << io::format_double(p.beta) << '\n';
    truth << "n = " << sim.data.size() << '\n' << "k = " << sim.all_points.rows() << '\n';

    if (extra.rows() > 0) {
      auto out = io::open_output(sibling(a.out, "_field.csv"));
      io::write_row(out, {"x1", "x2", "S", "y"});
      for (Eigen::Index i = 0; i < extra.rows(); ++i)
        io::write_row(out, {io::format_double(extra(i, 0)), io::format_double(extra(i, 1)),
                            io::format_double(sim.s_extra(i)), io::format_double(sim.y_extra(i))});
    }
    man.set("n", std::to_string(sim.data.size()));
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string model = "eps";
  std::string data;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t chains = 1;
  std::optional<double> lambda_upper;
  std::optional<double> fix_phi;
  std::optional<double> fix_beta;
  std::optional<std::size_t> n_iter;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> thin;
};

int cmd_fit(const FitArgs& a, const std::string& cmd) {
  io::Manifest man(manifest_path(a.out), cmd);
  try {
    if (a.model != "eps" && a.model != "nps") throw ConfigError("--model must be eps or nps");
    const ModelKind model = a.model == "eps" ? ModelKind::eps : ModelKind::nps;
    if (model == ModelKind::nps) {
      if (a.lambda_upper) throw ConfigError("--lambda-upper applies only to --model eps");
      if (a.fix_beta) throw ConfigError("--fix-beta applies only to --model eps");
    }
    io::ConfigMap cfg;
    if (!a.config.empty()) cfg = io::read_config(a.config);
    io::check_keys(cfg, io::fit_config_keys());
    if (model == ModelKind::nps && (cfg.count("prior.lambda_star.upper") || cfg.count("mcmc.fix_beta")))
      throw ConfigError("lambda* truncation and fixed beta apply only to --model eps");
    Priors priors = io::priors_from_config(cfg);
    McmcConfig config = io::mcmc_from_config(cfg);
    const Region region = io::region_from_config(cfg);
    if (a.lambda_upper) priors.lambda_star_upper = *a.lambda_upper;
    if (a.fix_phi) config.fix_phi = *a.fix_phi;
    if (a.fix_beta) config.fix_beta = *a.fix_beta;
    if (a.n_iter) config.n_iter = *a.n_iter;
    if (a.burn_in) config.burn_in = *a.burn_in;
    if (a.thin) config.thin = *a.thin;
    if (a.seed) config.seed = *a.seed;
    priors.validate();
    config.validate();
    if (a.chains == 0) throw ConfigError("--chains must be at least 1");

    man.set("model", to_string(model));
    man.set("seed", std::to_string(config.seed));
    man.set("chains", std::to_string(a.chains));
    man.add_config(io::config_to_text(priors, config, region));
    man.flush();

    const GeoDataset data = io::read_dataset(a.data);
    data.validate();
    if (model == ModelKind::eps && !region.contains_all(data.locations))
      throw ConfigError("data location outside the configured region");

    if (a.chains == 1) {
      const PosteriorSamples s = run_chain(model, data, region, priors, config);
      io::write_draws(a.out, s);
      record_samples(man, "", s);
    } else {
      std::vector<PosteriorSamples> results(a.chains);
      std::vector<std::exception_ptr> errors(a.chains);
      std::vector<std::thread> workers;
      for (std::size_t c = 0; c < a.chains; ++c) {
        workers.emplace_back([&, c] {
          try {
            McmcConfig cc = config;
            cc.seed = derive_seed(config.seed, "chain", c);
            results[c] = run_chain(model, data, region, priors, cc);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        });
      }
      for (auto& w : workers) w.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
      PosteriorSamples merged;
      merged.model = model;
      for (std::size_t c = 0; c < a.chains; ++c) {
        io::write_draws(sibling(a.out, "_chain" + std::to_string(c + 1) + ".csv"), results[c]);
        record_samples(man, "chain" + std::to_string(c + 1) + ".", results[c]);
        merged.draws.insert(merged.draws.end(), results[c].draws.begin(), results[c].draws.end());
      }
      io::write_draws(a.out, merged);
      man.set("draws", std::to_string(merged.size()));
    }
    man.finish(true);
    return 0;
  } catch (const SamplerError& e) {
    man.set("failed_iteration", std::to_string(e.iteration()));
    std::string snap = e.snapshot();
    std::replace(snap.begin(), snap.end(), '\n', ' ');
    man.set("failed_state", snap);
    man.finish(false, e.what());
    throw;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  std::string draws;
  std::string data;
  std::string grid = "30x30";
  std::string levels = "0.95";
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  bool joint = false;
  bool data_only = false;
};

int cmd_predict(const PredictArgs& a, const std::string& cmd) {
  io::Manifest man(manifest_path(a.out), cmd);
  man.set("seed", std::to_string(a.seed));
  try {
    const Region region = region_from_optional_config(a.config);
    const PosteriorSamples samples = io::read_draws(a.draws);
    const GeoDataset data = io::read_dataset(a.data);
    if (samples.draws.empty()) throw ConfigError("draws file holds no draws");
    if (samples.draws.front().eta.size() != data.n_coef())
      throw ConfigError("draws and dataset disagree on the number of coefficients");
    const PredictionGrid grid = make_grid(a.grid, region);
    PredictOptions opts;
    opts.levels = parse_levels(a.levels);
    opts.joint = a.joint;
    opts.condition_on_discarded = !a.data_only;
    const PredictiveDraws pd = predict_draws(samples, data, grid, region, a.seed, opts);
    io::write_prediction(a.out, grid.locations, summarize(pd.response, opts.levels));
    if (samples.model == ModelKind::eps)
      io::write_prediction(sibling(a.out, "_intensity.csv"), grid.locations, summarize(pd.intensity, opts.levels));
    man.set("model", to_string(samples.model));
    man.set("grid_points", std::to_string(grid.size()));
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string pred;
  std::string truth;
  bool crossval = false;
  std::string data;
  std::string config;
  std::string model = "eps";
  std::size_t folds = 0;
  double scale = 1.0;
  std::string levels = "0.9,0.95,0.99";
  std::string out;
  std::optional<std::uint64_t> seed;
};

void write_report(const fs::path& path, const MetricReport& r, bool with_ppd) {
  auto out = io::open_output(path);
  out << "n_p = " << r.n_p << '\n' << "mape = " << io::format_double(r.mape) << '\n';
  for (const auto& [level, c] : r.crci) out << "crci." << io::level_tag(level) << " = " << io::format_double(c) << '\n';
  if (with_ppd) out << "ppd = " << io::format_double(r.ppd) << '\n';
}

int cmd_eval(const EvalArgs& a, const std::string& cmd) {
  io::Manifest man(manifest_path(a.out), cmd);
  try {
    MetricReport report;
    if (a.crossval) {
      if (!a.pred.empty() || !a.truth.empty()) throw ConfigError("--crossval cannot be combined with --pred/--truth");
      if (a.data.empty()) throw ConfigError("--crossval needs --data");
      io::ConfigMap cfg;
      if (!a.config.empty()) cfg = io::read_config(a.config);
      io::check_keys(cfg, io::fit_config_keys());
      const Priors priors = io::priors_from_config(cfg);
      McmcConfig config = io::mcmc_from_config(cfg);
      if (a.seed) config.seed = *a.seed;
      const Region region = io::region_from_config(cfg);
      const GeoDataset data = io::read_dataset(a.data);
      CrossValidationOptions opts;
      if (a.model != "eps" && a.model != "nps") throw ConfigError("--model must be eps or nps");
      opts.model = a.model == "eps" ? ModelKind::eps : ModelKind::nps;
      opts.folds = a.folds;
      opts.iteration_scale = a.scale;
      opts.levels = parse_levels(a.levels);
      man.set("seed", std::to_string(config.seed));
      report = cross_validate(data, region, priors, config, opts).report;
      write_report(a.out, report, true);
    } else {
      if (a.pred.empty() || a.truth.empty()) throw ConfigError("eval needs --pred and --truth, or --crossval");
      const io::LocatedTable pred = io::read_located(a.pred, {"mean"});
      const io::LocatedTable truth = io::read_located(a.truth, {"y", "mean"});
      if (pred.locations.rows() != truth.locations.rows())
        throw ConfigError("prediction and truth files have different numbers of locations");
      std::map<std::pair<double, double>, Eigen::Index> index;
      for (Eigen::Index i = 0; i < truth.locations.rows(); ++i)
        index[{truth.locations(i, 0), truth.locations(i, 1)}] = i;
      Eigen::VectorXd aligned(pred.value.size());
      for (Eigen::Index i = 0; i < pred.locations.rows(); ++i) {
        const auto it = index.find({pred.locations(i, 0), pred.locations(i, 1)});
        if (it == index.end())
          throw ConfigError("prediction location (" + io::format_double(pred.locations(i, 0)) + ", " +
                            io::format_double(pred.locations(i, 1)) + ") not present in the truth file");
        aligned(i) = truth.value(it->second);
      }
      report.n_p = static_cast<std::size_t>(aligned.size());
      report.mape = mape(pred.value, aligned);
      const std::vector<double> wanted = parse_levels(a.levels);
      for (double l : wanted) {
        auto it = pred.intervals.find(l);
        if (it != pred.intervals.end()) {
          report.crci[l] = crci(it->second.lower, it->second.upper, aligned);
        } else if (pred.intervals.empty()) {
          // A point-valued file (e.g. truth vs itself) has degenerate intervals at the mean.
          report.crci[l] = crci(pred.value, pred.value, aligned);
        }
      }
      write_report(a.out, report, false);
    }
    man.set("mape", report.mape);
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------

struct VariogramArgs {
  std::string data;
  std::string config;
  std::size_t bins = 15;
  std::size_t permutations = 99;
  std::string out;
  std::uint64_t seed = 1;
};

int cmd_variogram(const VariogramArgs& a, const std::string& cmd) {
  io::Manifest man(manifest_path(a.out), cmd);
  man.set("seed", std::to_string(a.seed));
  try {
    const Region region = region_from_optional_config(a.config);
    const GeoDataset data = io::read_dataset(a.data);
    Rng rng(derive_seed(a.seed, "variogram"));
    const VariogramEnvelope env = variogram_envelope(data, region, a.bins, a.permutations, rng);
    auto out = io::open_output(a.out);
    io::write_row(out, {"h", "gamma", "lower", "upper", "pairs"});
    for (Eigen::Index b = 0; b < env.gamma.size(); ++b)
      io::write_row(out, {io::format_double(env.centers(b)), io::format_double(env.gamma(b)),
                          io::format_double(env.lower(b)), io::format_double(env.upper(b)),
                          std::to_string(env.pair_counts[static_cast<std::size_t>(b)])});
    man.set("points_outside", std::to_string(env.points_outside()));
    man.set("dropped_bins", std::to_string(env.dropped_bins.size()));
    man.finish(true);
    return 0;
  } catch (const std::exception& e) {
    man.finish(false, e.what());
    throw;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian geostatistics under preferential sampling"};
  app.set_version_flag("--version", std::string("psgeo ") + PSGEO_VERSION);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Generate a synthetic dataset");
  c_sim->add_option("--mode", sim.mode, "ps or nps")->check(CLI::IsMember({"ps", "nps"}));
  c_sim->add_option("--params", sim.params, "Parameter file (key = value)")->check(CLI::ExistingFile);
  c_sim->add_option("--out", sim.out, "Dataset CSV")->required();
  c_sim->add_option("--seed", sim.seed, "Master seed");
  c_sim->add_option("--intensity", sim.intensity, "NPS sampling intensity per unit area");
  c_sim->add_option("--field-grid", sim.field_grid, "Also write S and y on a grid (NxM or file)");

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "Run the MCMC sampler");
  c_fit->add_option("--model", fit.model, "eps or nps")->check(CLI::IsMember({"eps", "nps"}));
  c_fit->add_option("--data", fit.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  c_fit->add_option("--config", fit.config, "Config file (key = value)")->check(CLI::ExistingFile);
  c_fit->add_option("--out", fit.out, "Draws CSV")->required();
  c_fit->add_option("--seed", fit.seed, "Master seed (overrides mcmc.seed)");
  c_fit->add_option("--chains", fit.chains, "Independent chains run concurrently");
  c_fit->add_option("--lambda-upper", fit.lambda_upper, "Upper truncation of lambda* (eps only)");
  c_fit->add_option("--fix-phi", fit.fix_phi, "Hold phi fixed");
  c_fit->add_option("--fix-beta", fit.fix_beta, "Hold beta fixed (eps only)");
  c_fit->add_option("--n-iter", fit.n_iter, "Iterations");
  c_fit->add_option("--burn-in", fit.burn_in, "Burn-in iterations");
  c_fit->add_option("--thin", fit.thin, "Thinning lag");

  PredictArgs pred;
  auto* c_pred = app.add_subcommand("predict", "Posterior predictive summaries on a grid");
  c_pred->add_option("--draws", pred.draws, "Draws CSV from fit")->required()->check(CLI::ExistingFile);
  c_pred->add_option("--data", pred.data, "Dataset CSV used for the fit")->required()->check(CLI::ExistingFile);
  c_pred->add_option("--grid", pred.grid, "NxM cell-center grid or a CSV with x1,x2[,d1..]");
  c_pred->add_option("--levels", pred.levels, "Comma-separated interval levels");
  c_pred->add_option("--config", pred.config, "Config file providing region.* keys")->check(CLI::ExistingFile);
  c_pred->add_option("--out", pred.out, "Prediction CSV")->required();
  c_pred->add_option("--seed", pred.seed, "Master seed");
  c_pred->add_flag("--joint", pred.joint, "Draw the grid field jointly");
  c_pred->add_flag("--data-only", pred.data_only, "Krige from S at data locations only");

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Prediction metrics or cross-validation");
  c_eval->add_option("--pred", ev.pred, "Prediction CSV")->check(CLI::ExistingFile);
  c_eval->add_option("--truth", ev.truth, "Truth CSV (x1,x2,y)")->check(CLI::ExistingFile);
  c_eval->add_flag("--crossval", ev.crossval, "Cross-validate instead");
  c_eval->add_option("--data", ev.data, "Dataset CSV for cross-validation")->check(CLI::ExistingFile);
  c_eval->add_option("--config", ev.config, "Config file")->check(CLI::ExistingFile);
  c_eval->add_option("--model", ev.model, "eps or nps")->check(CLI::IsMember({"eps", "nps"}));
  c_eval->add_option("--folds", ev.folds, "Fold count, 0 for leave-one-out");
  c_eval->add_option("--scale", ev.scale, "Iteration scale for each refit");
  c_eval->add_option("--levels", ev.levels, "Comma-separated interval levels");
  c_eval->add_option("--out", ev.out, "Report file")->required();
  c_eval->add_option("--seed", ev.seed, "Master seed (overrides mcmc.seed)");

  VariogramArgs vg;
  auto* c_vg = app.add_subcommand("variogram", "Empirical semivariogram with permutation envelope");
  c_vg->add_option("--data", vg.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  c_vg->add_option("--config", vg.config, "Config file providing region.* keys")->check(CLI::ExistingFile);
  c_vg->add_option("--bins", vg.bins, "Distance bins");
  c_vg->add_option("--permutations", vg.permutations, "Permutations (>= 99)");
  c_vg->add_option("--out", vg.out, "Output CSV")->required();
  c_vg->add_option("--seed", vg.seed, "Master seed");

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = command_line(argc, argv);
  try {
    if (*c_sim) return cmd_simulate(sim, cmd);
    if (*c_fit) return cmd_fit(fit, cmd);
    if (*c_pred) return cmd_predict(pred, cmd);
    if (*c_eval) return cmd_eval(ev, cmd);
    if (*c_vg) return cmd_variogram(vg, cmd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
