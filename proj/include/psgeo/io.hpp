#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "psgeo/dataset.hpp"
#include "psgeo/errors.hpp"
#include "psgeo/inference.hpp"
#include "psgeo/prediction.hpp"
#include "psgeo/region.hpp"
#include "psgeo/simulation.hpp"

#ifndef PSGEO_VERSION
#define PSGEO_VERSION "0.1.0"
#endif

namespace psgeo::io {

// ---------------------------------------------------------------------------
// Numbers and CSV

/// Shortest round-trippable text with at most 17 significant digits.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

inline double parse_double_or_throw(std::string_view text, std::size_t line, std::string_view what) {
  double v = 0.0;
  if (!parse_double(text, v))
    throw ParseError("cannot parse '" + std::string(text) + "' as a number (" + std::string(what) + ")", line);
  return v;
}

/// Split one CSV record (RFC-4180 quoting, no embedded newlines).
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no = 0) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      if (!field.empty()) throw ParseError("stray quote inside unquoted field", line_no);
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\r' && i + 1 == line.size()) {
      break;
    } else {
      if (was_quoted) throw ParseError("text after closing quote", line_no);
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  out.push_back(std::move(field));
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based source line of each row.
  std::vector<std::size_t> lines;

  int column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }

  int require_column(std::string_view name) const {
    const int c = column(name);
    if (c < 0) throw ParseError("missing column '" + std::string(name) + "'", 1);
    return c;
  }

  double number(std::size_t row, int col) const {
    return parse_double_or_throw(rows[row][static_cast<std::size_t>(col)], lines[row], header[static_cast<std::size_t>(col)]);
  }
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line, line_no);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    t.rows.push_back(std::move(fields));
    t.lines.push_back(line_no);
  }
  if (!have_header) throw ParseError("empty file: no header", line_no == 0 ? 1 : line_no);
  return t;
}

inline CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

// ---------------------------------------------------------------------------
// Datasets: header x1,x2,y[,d1..dp]; the intercept column is implicit.

inline GeoDataset dataset_from_table(const CsvTable& t) {
  if (t.header.size() < 3 || t.header[0] != "x1" || t.header[1] != "x2" || t.header[2] != "y")
    throw ParseError("dataset header must start with x1,x2,y", 1);
  const std::size_t p = t.header.size() - 3;
  for (std::size_t j = 0; j < p; ++j) {
    if (t.header[3 + j] != "d" + std::to_string(j + 1))
      throw ParseError("covariate columns must be named d1..dp in order", 1);
  }
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  GeoDataset d;
  d.locations.resize(n, 2);
  d.y.resize(n);
  d.covariates = Eigen::MatrixXd::Ones(n, static_cast<Eigen::Index>(p + 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    d.locations(i, 0) = t.number(r, 0);
    d.locations(i, 1) = t.number(r, 1);
    d.y(i) = t.number(r, 2);
    for (std::size_t j = 0; j < p; ++j) d.covariates(i, static_cast<Eigen::Index>(j + 1)) = t.number(r, static_cast<int>(3 + j));
  }
  return d;
}

inline GeoDataset read_dataset(std::istream& in) { return dataset_from_table(read_csv(in)); }

inline GeoDataset read_dataset(const std::filesystem::path& path) {
  return dataset_from_table(read_csv_file(path));
}

inline void write_dataset(std::ostream& out, const GeoDataset& d) {
  std::vector<std::string> header{"x1", "x2", "y"};
  for (Eigen::Index j = 1; j < d.n_coef(); ++j) header.push_back("d" + std::to_string(j));
  write_row(out, header);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    std::vector<std::string> row{format_double(d.locations(i, 0)), format_double(d.locations(i, 1)),
                                 format_double(d.y(i))};
    for (Eigen::Index j = 1; j < d.n_coef(); ++j) row.push_back(format_double(d.covariates(i, j)));
    write_row(out, row);
  }
}

inline void write_dataset(const std::filesystem::path& path, const GeoDataset& d) {
  auto out = open_output(path);
  write_dataset(out, d);
}

/// Prediction grid file: x1,x2[,d1..dp].
inline PredictionGrid read_grid(const std::filesystem::path& path) {
  const CsvTable t = read_csv_file(path);
  if (t.header.size() < 2 || t.header[0] != "x1" || t.header[1] != "x2")
    throw ParseError("grid header must start with x1,x2", 1);
  const std::size_t p = t.header.size() - 2;
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  PredictionGrid g;
  g.locations.resize(n, 2);
  g.covariates = Eigen::MatrixXd::Ones(n, static_cast<Eigen::Index>(p + 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    g.locations(i, 0) = t.number(r, 0);
    g.locations(i, 1) = t.number(r, 1);
    for (std::size_t j = 0; j < p; ++j) g.covariates(i, static_cast<Eigen::Index>(j + 1)) = t.number(r, static_cast<int>(2 + j));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Flat key = value configuration with dotted sections.

using ConfigMap = std::map<std::string, std::string>;

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline ConfigMap parse_config(std::istream& in) {
  ConfigMap m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no);
    if (!m.emplace(key, value).second) throw ParseError("duplicate key '" + key + "'", line_no);
  }
  return m;
}

inline ConfigMap read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_config(in);
}

inline double config_number(const ConfigMap& m, const std::string& key, double fallback) {
  const auto it = m.find(key);
  if (it == m.end()) return fallback;
  double v = 0.0;
  if (!parse_double(it->second, v)) throw ConfigError("config key '" + key + "' is not a number: " + it->second);
  return v;
}

inline std::size_t config_count(const ConfigMap& m, const std::string& key, std::size_t fallback) {
  const double v = config_number(m, key, static_cast<double>(fallback));
  if (v < 0.0 || v != std::floor(v)) throw ConfigError("config key '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline bool config_bool(const ConfigMap& m, const std::string& key, bool fallback) {
  const auto it = m.find(key);
  if (it == m.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("config key '" + key + "' must be true or false");
}

inline std::optional<double> config_optional(const ConfigMap& m, const std::string& key) {
  if (!m.count(key)) return std::nullopt;
  return config_number(m, key, 0.0);
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_double(item, v)) throw ConfigError("cannot parse number list: " + text);
    out.push_back(v);
  }
  return out;
}

/// Rejects keys outside `allowed` (exact names) to catch typos.
inline void check_keys(const ConfigMap& m, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : m) {
    if (!allowed.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }
}

inline const std::set<std::string>& fit_config_keys() {
  static const std::set<std::string> keys{
      "prior.lambda_star.shape", "prior.lambda_star.rate", "prior.lambda_star.upper", "prior.eta.mean",
      "prior.eta.variance",      "prior.tau2.shape",       "prior.tau2.scale",        "prior.sigma2.shape",
      "prior.sigma2.scale",      "prior.phi.shape",        "prior.phi.rate",          "prior.beta.mean",
      "prior.beta.variance",     "mcmc.n_iter",            "mcmc.burn_in",            "mcmc.thin",
      "mcmc.seed",               "mcmc.proposal.sigma2",   "mcmc.proposal.phi",       "mcmc.proposal.beta",
      "mcmc.fix_phi",            "mcmc.fix_beta",          "mcmc.adapt",              "mcmc.adapt_target",
      "mcmc.store_discarded",    "region.x1.min",          "region.x1.max",           "region.x2.min",
      "region.x2.max"};
  return keys;
}

inline Priors priors_from_config(const ConfigMap& m) {
  Priors p;
  p.lambda_star.shape = config_number(m, "prior.lambda_star.shape", p.lambda_star.shape);
  p.lambda_star.rate = config_number(m, "prior.lambda_star.rate", p.lambda_star.rate);
  p.lambda_star_upper = config_optional(m, "prior.lambda_star.upper");
  if (auto it = m.find("prior.eta.mean"); it != m.end()) p.eta_mean = parse_number_list(it->second);
  p.eta_variance = config_number(m, "prior.eta.variance", p.eta_variance);
  p.tau2.shape = config_number(m, "prior.tau2.shape", p.tau2.shape);
  p.tau2.scale = config_number(m, "prior.tau2.scale", p.tau2.scale);
  p.sigma2.shape = config_number(m, "prior.sigma2.shape", p.sigma2.shape);
  p.sigma2.scale = config_number(m, "prior.sigma2.scale", p.sigma2.scale);
  p.phi.shape = config_number(m, "prior.phi.shape", p.phi.shape);
  p.phi.rate = config_number(m, "prior.phi.rate", p.phi.rate);
  p.beta.mean = config_number(m, "prior.beta.mean", p.beta.mean);
  p.beta.variance = config_number(m, "prior.beta.variance", p.beta.variance);
  p.validate();
  return p;
}

inline McmcConfig mcmc_from_config(const ConfigMap& m) {
  McmcConfig c;
  c.n_iter = config_count(m, "mcmc.n_iter", c.n_iter);
  c.burn_in = config_count(m, "mcmc.burn_in", c.burn_in);
  c.thin = config_count(m, "mcmc.thin", c.thin);
  c.seed = config_count(m, "mcmc.seed", c.seed);
  c.proposal_sigma2 = config_number(m, "mcmc.proposal.sigma2", c.proposal_sigma2);
  c.proposal_phi = config_number(m, "mcmc.proposal.phi", c.proposal_phi);
  c.proposal_beta = config_number(m, "mcmc.proposal.beta", c.proposal_beta);
  c.fix_phi = config_optional(m, "mcmc.fix_phi");
  c.fix_beta = config_optional(m, "mcmc.fix_beta");
  c.adapt = config_bool(m, "mcmc.adapt", c.adapt);
  c.adapt_target = config_number(m, "mcmc.adapt_target", c.adapt_target);
  c.store_discarded = config_bool(m, "mcmc.store_discarded", c.store_discarded);
  c.validate();
  return c;
}

inline Region region_from_config(const ConfigMap& m) {
  return Region({config_number(m, "region.x1.min", 0.0), config_number(m, "region.x2.min", 0.0)},
                {config_number(m, "region.x1.max", 1.0), config_number(m, "region.x2.max", 1.0)});
}

/// Canonical text for a fitting configuration; parse_config of it reproduces the same objects.
inline std::string config_to_text(const Priors& p, const McmcConfig& c, const Region& r) {
  std::ostringstream os;
  auto kv = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto num = [&](const std::string& k, double v) { kv(k, format_double(v)); };
  num("prior.lambda_star.shape", p.lambda_star.shape);
  num("prior.lambda_star.rate", p.lambda_star.rate);
  if (p.lambda_star_upper) num("prior.lambda_star.upper", *p.lambda_star_upper);
  std::string means;
  for (std::size_t i = 0; i < p.eta_mean.size(); ++i) means += (i ? "," : "") + format_double(p.eta_mean[i]);
  kv("prior.eta.mean", means);
  num("prior.eta.variance", p.eta_variance);
  num("prior.tau2.shape", p.tau2.shape);
  num("prior.tau2.scale", p.tau2.scale);
  num("prior.sigma2.shape", p.sigma2.shape);
  num("prior.sigma2.scale", p.sigma2.scale);
  num("prior.phi.shape", p.phi.shape);
  num("prior.phi.rate", p.phi.rate);
  num("prior.beta.mean", p.beta.mean);
  num("prior.beta.variance", p.beta.variance);
  kv("mcmc.n_iter", std::to_string(c.n_iter));
  kv("mcmc.burn_in", std::to_string(c.burn_in));
  kv("mcmc.thin", std::to_string(c.thin));
  kv("mcmc.seed", std::to_string(c.seed));
  num("mcmc.proposal.sigma2", c.proposal_sigma2);
  num("mcmc.proposal.phi", c.proposal_phi);
  num("mcmc.proposal.beta", c.proposal_beta);
  if (c.fix_phi) num("mcmc.fix_phi", *c.fix_phi);
  if (c.fix_beta) num("mcmc.fix_beta", *c.fix_beta);
  kv("mcmc.adapt", c.adapt ? "true" : "false");
  num("mcmc.adapt_target", c.adapt_target);
  kv("mcmc.store_discarded", c.store_discarded ? "true" : "false");
  num("region.x1.min", r.lower()[0]);
  num("region.x1.max", r.upper()[0]);
  num("region.x2.min", r.lower()[1]);
  num("region.x2.max", r.upper()[1]);
  return os.str();
}

/// Simulation parameter file: lambda_star, mu, tau2, sigma2, phi, beta, intensity (nps), region.*.
inline TrueParams true_params_from_config(const ConfigMap& m) {
  static const std::set<std::string> keys{"lambda_star",   "mu",            "tau2",          "sigma2",
                                          "phi",           "beta",          "intensity",     "region.x1.min",
                                          "region.x1.max", "region.x2.min", "region.x2.max"};
  check_keys(m, keys);
  TrueParams p;
  p.lambda_star = config_number(m, "lambda_star", p.lambda_star);
  p.mu = config_number(m, "mu", p.mu);
  p.tau2 = config_number(m, "tau2", p.tau2);
  p.sigma2 = config_number(m, "sigma2", p.sigma2);
  p.phi = config_number(m, "phi", p.phi);
  p.beta = config_number(m, "beta", p.beta);
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Posterior draws: main parameter file plus a long-format latent sidecar.

inline std::filesystem::path latent_path(const std::filesystem::path& draws) {
  std::filesystem::path p = draws;
  const std::string stem = p.extension() == ".csv" ? p.stem().string() : p.filename().string();
  return p.replace_filename(stem + "_latent.csv");
}

inline std::vector<std::string> draws_header(ModelKind model, Eigen::Index n_coef) {
  std::vector<std::string> h{"draw", "iteration"};
  if (model == ModelKind::eps) h.push_back("lambda_star");
  for (Eigen::Index j = 0; j < n_coef; ++j) h.push_back("eta" + std::to_string(j));
  h.insert(h.end(), {"tau2", "sigma2", "phi"});
  if (model == ModelKind::eps) h.insert(h.end(), {"beta", "k"});
  return h;
}

inline void write_draws(const std::filesystem::path& path, const PosteriorSamples& s) {
  const Eigen::Index n_coef = s.draws.empty() ? 1 : s.draws.front().eta.size();
  {
    auto out = open_output(path);
    write_row(out, draws_header(s.model, n_coef));
    for (std::size_t i = 0; i < s.draws.size(); ++i) {
      const Draw& d = s.draws[i];
      std::vector<std::string> row{std::to_string(i), std::to_string(d.iteration)};
      if (s.model == ModelKind::eps) row.push_back(format_double(d.lambda_star));
      for (Eigen::Index j = 0; j < d.eta.size(); ++j) row.push_back(format_double(d.eta(j)));
      row.insert(row.end(), {format_double(d.tau2), format_double(d.sigma2), format_double(d.phi)});
      if (s.model == ModelKind::eps) row.insert(row.end(), {format_double(d.beta), std::to_string(d.k)});
      write_row(out, row);
    }
  }
  auto out = open_output(latent_path(path));
  write_row(out, {"draw", "type", "index", "x1", "x2", "S"});
  for (std::size_t i = 0; i < s.draws.size(); ++i) {
    const Draw& d = s.draws[i];
    const std::string di = std::to_string(i);
    for (Eigen::Index j = 0; j < d.s_data.size(); ++j)
      write_row(out, {di, "data", std::to_string(j), "", "", format_double(d.s_data(j))});
    for (Eigen::Index j = 0; j < d.discarded.rows(); ++j)
      write_row(out, {di, "discarded", std::to_string(j), format_double(d.discarded(j, 0)),
                      format_double(d.discarded(j, 1)), format_double(d.s_discarded(j))});
  }
}

inline PosteriorSamples read_draws(const std::filesystem::path& path) {
  const CsvTable t = read_csv_file(path);
  PosteriorSamples s;
  s.model = t.column("beta") >= 0 ? ModelKind::eps : ModelKind::nps;
  std::vector<int> eta_cols;
  for (int j = 0;; ++j) {
    const int c = t.column("eta" + std::to_string(j));
    if (c < 0) break;
    eta_cols.push_back(c);
  }
  if (eta_cols.empty()) throw ParseError("draws file has no eta columns", 1);
  const int c_it = t.require_column("iteration");
  const int c_t2 = t.require_column("tau2");
  const int c_s2 = t.require_column("sigma2");
  const int c_phi = t.require_column("phi");
  const int c_lam = s.model == ModelKind::eps ? t.require_column("lambda_star") : -1;
  const int c_beta = s.model == ModelKind::eps ? t.require_column("beta") : -1;
  const int c_k = s.model == ModelKind::eps ? t.require_column("k") : -1;
  s.draws.resize(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    Draw& d = s.draws[i];
    d.iteration = static_cast<std::size_t>(t.number(i, c_it));
    d.eta.resize(static_cast<Eigen::Index>(eta_cols.size()));
    for (std::size_t j = 0; j < eta_cols.size(); ++j) d.eta(static_cast<Eigen::Index>(j)) = t.number(i, eta_cols[j]);
    d.tau2 = t.number(i, c_t2);
    d.sigma2 = t.number(i, c_s2);
    d.phi = t.number(i, c_phi);
    if (s.model == ModelKind::eps) {
      d.lambda_star = t.number(i, c_lam);
      d.beta = t.number(i, c_beta);
      d.k = static_cast<std::size_t>(t.number(i, c_k));
    }
  }

  const CsvTable lt = read_csv_file(latent_path(path));
  const int c_draw = lt.require_column("draw");
  const int c_type = lt.require_column("type");
  const int c_x1 = lt.require_column("x1");
  const int c_x2 = lt.require_column("x2");
  const int c_s = lt.require_column("S");
  std::vector<std::vector<double>> sd(s.draws.size());
  std::vector<std::vector<std::array<double, 3>>> disc(s.draws.size());
  for (std::size_t r = 0; r < lt.rows.size(); ++r) {
    const double dv = lt.number(r, c_draw);
    if (dv < 0 || dv >= static_cast<double>(s.draws.size()))
      throw ParseError("latent row refers to unknown draw", lt.lines[r]);
    const auto di = static_cast<std::size_t>(dv);
    const std::string& type = lt.rows[r][static_cast<std::size_t>(c_type)];
    if (type == "data") {
      sd[di].push_back(lt.number(r, c_s));
    } else if (type == "discarded") {
      disc[di].push_back({lt.number(r, c_x1), lt.number(r, c_x2), lt.number(r, c_s)});
    } else {
      throw ParseError("unknown latent type '" + type + "'", lt.lines[r]);
    }
  }
  for (std::size_t i = 0; i < s.draws.size(); ++i) {
    Draw& d = s.draws[i];
    d.s_data = Eigen::Map<const Eigen::VectorXd>(sd[i].data(), static_cast<Eigen::Index>(sd[i].size()));
    const auto m = static_cast<Eigen::Index>(disc[i].size());
    d.discarded.resize(m, 2);
    d.s_discarded.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& e = disc[i][static_cast<std::size_t>(j)];
      d.discarded(j, 0) = e[0];
      d.discarded(j, 1) = e[1];
      d.s_discarded(j) = e[2];
    }
    if (s.model == ModelKind::nps) d.k = static_cast<std::size_t>(d.s_data.size());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Prediction tables

/// Shortest text that parses back to `level`, e.g. 0.95.
inline std::string level_tag(double level) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), level);
  return std::string(buf, res.ptr);
}

/// One row per location: x1,x2,mean,median,sd,lo_<level>,hi_<level>...
inline void write_prediction(const std::filesystem::path& path, const Locations& locs, const PredictiveField& f) {
  for (const auto& [level, b] : f.intervals) {
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      if (!(b.lower(j) <= f.median(j) && f.median(j) <= b.upper(j)))
        throw std::logic_error("prediction summary violates lo <= median <= hi");
    }
  }
  auto out = open_output(path);
  std::vector<std::string> header{"x1", "x2", "mean", "median", "sd"};
  for (const auto& [level, b] : f.intervals) {
    header.push_back("lo_" + level_tag(level));
    header.push_back("hi_" + level_tag(level));
  }
  write_row(out, header);
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    std::vector<std::string> row{format_double(locs(j, 0)), format_double(locs(j, 1)), format_double(f.mean(j)),
                                 format_double(f.median(j)), format_double(std::sqrt(f.variance(j)))};
    for (const auto& [level, b] : f.intervals) {
      row.push_back(format_double(b.lower(j)));
      row.push_back(format_double(b.upper(j)));
    }
    write_row(out, row);
  }
}

/// Truth/prediction table keyed by location, as read back for evaluation.
struct LocatedTable {
  Locations locations = Locations(0, 2);
  Eigen::VectorXd value;
  std::map<double, IntervalBounds> intervals;
};

/// Reads x1,x2 plus `value_column` (or the first of the fallbacks present) and any lo_/hi_ pairs.
inline LocatedTable read_located(const std::filesystem::path& path, const std::vector<std::string>& value_columns) {
  const CsvTable t = read_csv_file(path);
  const int c1 = t.require_column("x1");
  const int c2 = t.require_column("x2");
  int cv = -1;
  for (const auto& name : value_columns) {
    cv = t.column(name);
    if (cv >= 0) break;
  }
  if (cv < 0) throw ParseError("no value column among the expected names in " + path.string(), 1);
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  LocatedTable out;
  out.locations.resize(n, 2);
  out.value.resize(n);
  std::map<double, std::pair<int, int>> cols;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string& h = t.header[c];
    if (h.rfind("lo_", 0) != 0) continue;
    double level = 0.0;
    if (!parse_double(h.substr(3), level)) continue;
    const int hi = t.column("hi_" + h.substr(3));
    if (hi < 0) throw ParseError("column " + h + " has no matching hi_ column", 1);
    cols[level] = {static_cast<int>(c), hi};
  }
  for (const auto& [level, c] : cols) out.intervals[level] = IntervalBounds{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    out.locations(i, 0) = t.number(r, c1);
    out.locations(i, 1) = t.number(r, c2);
    out.value(i) = t.number(r, cv);
    for (const auto& [level, c] : cols) {
      out.intervals[level].lower(i) = t.number(r, c.first);
      out.intervals[level].upper(i) = t.number(r, c.second);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run manifest: flat key = value text, rewritten on every update so a crashed
// run leaves `status = running` behind.

class Manifest {
 public:
  Manifest(std::filesystem::path path, std::string command)
      : path_(std::move(path)), start_(std::chrono::steady_clock::now()) {
    set("command", std::move(command));
    set("version", PSGEO_VERSION);
    set("status", "running");
    flush();
  }

  void set(const std::string& key, std::string value) {
    for (auto& kv : entries_) {
      if (kv.first == key) {
        kv.second = std::move(value);
        return;
      }
    }
    entries_.emplace_back(key, std::move(value));
  }
  void set(const std::string& key, double value) { set(key, format_double(value)); }

  void add_config(const std::string& text) {
    std::istringstream in(text);
    for (const auto& [k, v] : parse_config(in)) set("config." + k, v);
  }

  void finish(bool ok, const std::string& message = {}) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    set("duration_seconds", secs);
    set("status", ok ? "ok" : "failed");
    if (!message.empty()) set("message", message);
    flush();
  }

  void flush() const {
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest " + path_.string());
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
  }

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace psgeo::io
