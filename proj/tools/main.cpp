// hctlab command-line front end: Higher Criticism thresholding, ideal
// threshold functionals, phase-diagram scans, finite-p boundaries, and the
// rare/weak Monte Carlo simulator. Grid and trace outputs are CSV, scalar
// summaries are JSON, and every run writes a sidecar manifest with
// parameters and output checksums.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hctlab/hc.hpp"
#include "hctlab/ideal.hpp"
#include "hctlab/io.hpp"
#include "hctlab/params.hpp"
#include "hctlab/phase.hpp"
#include "hctlab/rwsim.hpp"
#include "hctlab/threshold.hpp"
#include "hctlab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct PendingOutput {
  fs::path path;
  std::string content;
};

// Writes all outputs atomically, then one manifest sidecar next to the
// primary output listing every file with its checksum. Contents are staged
// as temporaries first so a failure mid-run leaves no partial file behind.
void commit_outputs(const std::string& command, const json& parameters,
                    std::uint64_t seed, const std::vector<PendingOutput>& outs) {
  std::vector<fs::path> staged;
  try {
    for (const auto& out : outs) {
      const fs::path tmp = out.path.string() + ".staged";
      hctlab::write_file_atomic(tmp, out.content);
      staged.push_back(tmp);
    }
  } catch (...) {
    for (const auto& tmp : staged) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
    }
    throw;
  }
  for (std::size_t i = 0; i < outs.size(); ++i)
    fs::rename(staged[i], outs[i].path);
  json manifest;
  manifest["command"] = command;
  manifest["version"] = hctlab::version;
  manifest["seed"] = seed;
  manifest["parameters"] = parameters;
  json files = json::array();
  for (const auto& out : outs)
    files.push_back({{"path", out.path.filename().string()},
                     {"fnv1a64", hctlab::file_checksum(out.path)}});
  manifest["outputs"] = files;
  const fs::path side = outs.front().path.string() + ".manifest.json";
  hctlab::write_file_atomic(side, manifest.dump(2) + "\n");
}

json manifest_stub(const std::string& command, const json& parameters,
                   std::uint64_t seed) {
  return json{{"command", command},
              {"version", hctlab::version},
              {"seed", seed},
              {"parameters", parameters}};
}

std::vector<double> read_z_file(const fs::path& path,
                                const std::string& column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<double> z;
  if (column.empty()) {
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        std::size_t used = 0;
        const double value = std::stod(line, &used);
        if (line.find_first_not_of(" \t\r", used) != std::string::npos)
          throw std::runtime_error("trailing characters");
        z.push_back(value);
      } catch (const std::exception&) {
        throw std::runtime_error("unparseable value at line " +
                                 std::to_string(line_no));
      }
    }
    return z;
  }

  const hctlab::CsvTable table = hctlab::parse_csv(text);
  std::size_t col = table.header.size();
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] == column) col = c;
  if (col == table.header.size()) {
    try {
      col = static_cast<std::size_t>(std::stoul(column));
    } catch (const std::exception&) {
      throw std::runtime_error("column '" + column + "' not found");
    }
    if (col >= table.header.size())
      throw std::runtime_error("column index out of range");
  }
  for (const auto& row : table.rows) z.push_back(std::stod(row[col]));
  return z;
}

struct ParamFlags {
  std::int64_t p = 0;
  std::int64_t n = 0;
  double epsilon = -1.0;
  double tau = -1.0;
  double beta = -1.0;
  double r = -1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--p", p, "feature count")->required();
    cmd->add_option("--n", n, "training-set size");
    cmd->add_option("--epsilon", epsilon, "useful-feature fraction in (0,1)");
    cmd->add_option("--tau", tau, "useful-feature z-score strength");
    cmd->add_option("--beta", beta, "rarity exponent in (0,1)");
    cmd->add_option("--r", r, "strength exponent in (0,1)");
  }

  // Accepts either (epsilon, tau) directly or (beta, r) with the asymptotic
  // conversion; echoes both parameterizations.
  hctlab::RwParams resolve(json& echo) const {
    hctlab::RwParams params;
    params.p = p;
    if (epsilon > 0.0 && tau > 0.0) {
      params.epsilon = epsilon;
      params.tau = tau;
      params.n = n > 0 ? n : 0;
      if (params.n <= 0)
        throw std::runtime_error("--n is required with --epsilon/--tau");
    } else if (beta > 0.0 && r > 0.0) {
      hctlab::ArwParams arw{beta, r, p};
      arw.validate();
      params.epsilon = arw.epsilon();
      params.tau = arw.tau();
      params.n = n > 0 ? n : arw.n();
      echo["beta"] = beta;
      echo["r"] = r;
    } else {
      throw std::runtime_error(
          "provide either --epsilon and --tau or --beta and --r");
    }
    params.validate();
    echo["p"] = params.p;
    echo["n"] = params.n;
    echo["epsilon"] = params.epsilon;
    echo["tau"] = params.tau;
    return params;
  }
};

hctlab::ThresholdKind parse_kind(const std::string& name) {
  const auto kind = hctlab::threshold_kind_from_string(name);
  if (!kind) throw std::runtime_error("unknown --kind '" + name + "'");
  return *kind;
}

int cmd_hct(const std::string& input, const std::string& column, double alpha0,
            const std::string& out, const std::string& trace) {
  const std::vector<double> z = read_z_file(input, column);
  if (z.size() < 2) throw std::runtime_error("need at least two z-scores");
  const hctlab::HcScanResult result = hctlab::hct_empirical(z, alpha0);

  json parameters{{"input", input},
                  {"column", column},
                  {"alpha0", alpha0},
                  {"n", z.size()}};
  json summary;
  summary["threshold"] = result.threshold;
  summary["argmax_index"] = result.argmax_index;
  summary["objective_max"] = result.objective_max;
  summary["n"] = z.size();
  summary["alpha0"] = alpha0;
  summary["manifest"] = manifest_stub("hct", parameters, 0);

  std::vector<PendingOutput> outs;
  outs.push_back({out, summary.dump(2) + "\n"});
  if (!trace.empty()) {
    hctlab::CsvTable table;
    table.header = {"i", "i_over_p", "p_value", "hc_value"};
    const double n_values = static_cast<double>(z.size());
    for (const auto& entry : result.trace)
      table.rows.push_back(
          {std::to_string(entry.index),
           hctlab::format_double(static_cast<double>(entry.index) / n_values),
           hctlab::format_double(entry.p_value),
           hctlab::format_double(entry.hc_value)});
    outs.push_back({trace, table.to_string()});
  }
  commit_outputs("hct", parameters, 0, outs);
  return 0;
}

int cmd_ideal(const ParamFlags& flags, const std::string& kind_name,
              const std::string& out) {
  json parameters;
  const hctlab::RwParams params = flags.resolve(parameters);
  const hctlab::ThresholdKind kind = parse_kind(kind_name);
  parameters["kind"] = kind_name;
  const hctlab::IdealSummary summary = hctlab::ideal_threshold(params, kind);

  json doc;
  doc["threshold"] = summary.threshold;
  doc["sep"] = summary.sep;
  doc["err"] = summary.err;
  doc["fdr"] = summary.fdr;
  doc["lfdr"] = summary.lfdr;
  doc["tpr"] = summary.tpr;
  doc["fpr"] = summary.fpr;
  doc["idr"] = summary.idr;
  doc["manifest"] = manifest_stub("ideal", parameters, 0);
  commit_outputs("ideal", parameters, 0, {{out, doc.dump(2) + "\n"}});
  return 0;
}

int cmd_phase(double grid_step, const std::string& out) {
  if (!(grid_step > 0.0 && grid_step < 1.0))
    throw std::runtime_error("--grid-step must lie in (0,1)");
  hctlab::CsvTable table;
  table.header = {"beta",      "r",         "region",
                  "q_star",    "fdr_limit", "lfdr_limit",
                  "sep_exponent_ideal", "sep_exponent_fdrt",
                  "sep_exponent_bonf"};
  for (std::int64_t i = 1; i * grid_step < 1.0 - 1e-12; ++i) {
    const double beta = static_cast<double>(i) * grid_step;
    for (std::int64_t j = 1; j * grid_step < 1.0 - 1e-12; ++j) {
      const double r = static_cast<double>(j) * grid_step;
      const hctlab::PhasePoint pt = hctlab::classify(beta, r);
      table.rows.push_back({hctlab::format_double(beta),
                            hctlab::format_double(r), to_string(pt.region),
                            hctlab::format_double(pt.q_star),
                            hctlab::format_double(pt.fdr_limit),
                            hctlab::format_double(pt.lfdr_limit),
                            hctlab::format_double(pt.sep_exponent_ideal),
                            hctlab::format_double(pt.sep_exponent_fdrt),
                            hctlab::format_double(pt.sep_exponent_bonf)});
    }
  }
  json parameters{{"grid_step", grid_step}};
  commit_outputs("phase", parameters, 0, {{out, table.to_string()}});
  return 0;
}

int cmd_exponents(double beta, double grid_step, const std::string& out) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::runtime_error("--beta must lie in (0,1)");
  if (!(grid_step > 0.0 && grid_step < beta))
    throw std::runtime_error("--grid-step must lie in (0, beta)");
  hctlab::CsvTable table;
  table.header = {"beta", "r", "sep_exponent_ideal", "sep_exponent_fdrt",
                  "sep_exponent_bonf"};
  for (std::int64_t i = 1; i * grid_step <= beta + 1e-12; ++i) {
    const double r = std::min(static_cast<double>(i) * grid_step, beta);
    const hctlab::PhasePoint pt = hctlab::classify(beta, r);
    table.rows.push_back({hctlab::format_double(beta), hctlab::format_double(r),
                          hctlab::format_double(pt.sep_exponent_ideal),
                          hctlab::format_double(pt.sep_exponent_fdrt),
                          hctlab::format_double(pt.sep_exponent_bonf)});
  }
  json parameters{{"beta", beta}, {"grid_step", grid_step}};
  commit_outputs("exponents", parameters, 0, {{out, table.to_string()}});
  return 0;
}

int cmd_boundary(const std::vector<std::int64_t>& p_list,
                 const std::vector<double>& levels, double grid_step,
                 const std::string& out) {
  if (!(grid_step > 0.0 && grid_step < 1.0))
    throw std::runtime_error("--grid-step must lie in (0,1)");
  std::vector<double> beta_grid;
  for (std::int64_t i = 1; i * grid_step < 1.0 - 1e-12; ++i)
    beta_grid.push_back(static_cast<double>(i) * grid_step);

  hctlab::CsvTable table;
  table.header = {"p", "level", "beta", "r", "attained"};
  for (std::int64_t p : p_list) {
    const auto rows = hctlab::finite_p_boundary(p, levels, beta_grid);
    for (const auto& row : rows)
      table.rows.push_back({std::to_string(p), hctlab::format_double(row.level),
                            hctlab::format_double(row.beta),
                            hctlab::format_double(row.r),
                            row.attained ? "1" : "0"});
  }
  json parameters{{"p", p_list}, {"levels", levels}, {"grid_step", grid_step}};
  commit_outputs("boundary", parameters, 0, {{out, table.to_string()}});
  return 0;
}

int cmd_simulate(const ParamFlags& flags, const std::string& kind_name,
                 const std::string& selector_spec, double alpha0, double alpha,
                 double fixed_t, std::int64_t replicates, std::int64_t test_size,
                 std::uint64_t seed, const std::string& mode_name,
                 const std::string& out, const std::string& json_out) {
  json parameters;
  hctlab::SimConfig config;
  config.params = flags.resolve(parameters);
  config.kind = parse_kind(kind_name);

  const auto selector = hctlab::selector_from_string(selector_spec);
  if (!selector)
    throw std::runtime_error("unknown --selector '" + selector_spec + "'");
  config.selector = *selector;
  if (config.selector.kind == hctlab::SelectorKind::Hct && alpha0 > 0.0)
    config.selector.value = alpha0;
  if (config.selector.kind == hctlab::SelectorKind::Fdrt && alpha > 0.0)
    config.selector.value = alpha;
  if (config.selector.kind == hctlab::SelectorKind::FixedThreshold &&
      fixed_t >= 0.0)
    config.selector.value = fixed_t;

  config.replicates = replicates;
  config.test_size = test_size;
  config.seed = seed;
  const auto mode = hctlab::zscore_mode_from_string(mode_name);
  if (!mode) throw std::runtime_error("unknown --zscore-mode '" + mode_name + "'");
  config.zscore_mode = *mode;

  parameters["kind"] = kind_name;
  parameters["selector"] = selector_spec;
  parameters["selector_value"] = config.selector.value;
  parameters["replicates"] = replicates;
  parameters["test_size"] = test_size;
  parameters["zscore_mode"] = mode_name;

  const hctlab::SimOutcome outcome = hctlab::run(config);

  hctlab::CsvTable table;
  table.header = {"replicate",       "flagged",
                  "threshold_used",  "n_selected",
                  "n_true_selected", "realized_fdr",
                  "realized_mdr",    "test_error",
                  "exact_error"};
  for (std::size_t i = 0; i < outcome.records.size(); ++i) {
    const auto& rec = outcome.records[i];
    table.rows.push_back({std::to_string(i), rec.flagged ? "1" : "0",
                          hctlab::format_double(rec.threshold_used),
                          std::to_string(rec.n_selected),
                          std::to_string(rec.n_true_selected),
                          hctlab::format_double(rec.realized_fdr),
                          hctlab::format_double(rec.realized_mdr),
                          hctlab::format_double(rec.test_error),
                          hctlab::format_double(rec.exact_error)});
  }

  std::vector<PendingOutput> outs;
  outs.push_back({out, table.to_string()});
  if (!json_out.empty()) {
    auto agg = [](const hctlab::Aggregate& a) {
      return json{{"mean", a.mean}, {"std_error", a.std_error}};
    };
    json doc;
    doc["replicates"] = replicates;
    doc["flagged"] = outcome.flagged_count;
    doc["threshold"] = agg(outcome.threshold);
    doc["realized_fdr"] = agg(outcome.fdr);
    doc["realized_mdr"] = agg(outcome.mdr);
    doc["test_error"] = agg(outcome.test_error);
    doc["exact_error"] = agg(outcome.exact_error);
    doc["manifest"] = manifest_stub("simulate", parameters, seed);
    outs.push_back({json_out, doc.dump(2) + "\n"});
  }
  commit_outputs("simulate", parameters, seed, outs);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher Criticism threshold feature-selection toolkit"};
  app.require_subcommand(1);

  // hct
  auto* hct = app.add_subcommand(
      "hct", "empirical HC threshold of a z-score file (JSON + CSV trace)");
  std::string hct_input, hct_column, hct_out, hct_trace;
  double hct_alpha0 = 0.10;
  hct->add_option("--input", hct_input, "z-score file, one value per line")
      ->required();
  hct->add_option("--column", hct_column,
                  "CSV column (name or index); omit for plain text");
  hct->add_option("--alpha0", hct_alpha0, "scan fraction in (0,1]");
  hct->add_option("--out", hct_out, "JSON summary path")->required();
  hct->add_option("--trace", hct_trace, "optional CSV objective trace path");

  // ideal
  auto* ideal = app.add_subcommand(
      "ideal", "ideal-threshold summary (threshold, sep, err, fdr, lfdr)");
  ParamFlags ideal_params;
  ideal_params.add_to(ideal);
  std::string ideal_kind = "clip", ideal_out;
  ideal->add_option("--kind", ideal_kind, "clip|hard|soft");
  ideal->add_option("--out", ideal_out, "JSON summary path")->required();

  // phase
  auto* phase = app.add_subcommand(
      "phase", "phase-diagram grid: region, q*, FDR/Lfdr limits, exponents");
  double phase_step = 0.01;
  std::string phase_out;
  phase->add_option("--grid-step", phase_step, "beta/r grid step");
  phase->add_option("--out", phase_out, "CSV path")->required();

  // exponents
  auto* exponents = app.add_subcommand(
      "exponents", "separation exponents vs r for one beta (CSV)");
  double exp_beta = 0.5, exp_step = 1e-3;
  std::string exp_out;
  exponents->add_option("--beta", exp_beta, "rarity exponent in (0,1)")
      ->required();
  exponents->add_option("--grid-step", exp_step, "r grid step");
  exponents->add_option("--out", exp_out, "CSV path")->required();

  // boundary
  auto* boundary = app.add_subcommand(
      "boundary", "finite-p classification boundaries at fixed error levels");
  std::vector<std::int64_t> boundary_p;
  std::vector<double> boundary_levels{0.10, 0.40};
  double boundary_step = 0.05;
  std::string boundary_out;
  boundary->add_option("--p", boundary_p, "feature counts (repeatable)")
      ->required();
  boundary->add_option("--levels", boundary_levels,
                       "proxy error levels in (0, 0.5)");
  boundary->add_option("--grid-step", boundary_step, "beta grid step");
  boundary->add_option("--out", boundary_out, "CSV path")->required();

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "rare/weak Monte Carlo: selector, classifier, realized rates");
  ParamFlags sim_params;
  sim_params.add_to(simulate);
  std::string sim_kind = "clip", sim_selector = "hct";
  double sim_alpha0 = -1.0, sim_alpha = -1.0, sim_t = -1.0;
  std::int64_t sim_replicates = 100, sim_test_size = 2000;
  std::uint64_t sim_seed = 0;
  std::string sim_mode = "direct", sim_out, sim_json;
  simulate->add_option("--kind", sim_kind, "clip|hard|soft");
  simulate->add_option("--selector", sim_selector,
                       "hct[:alpha0]|ideal|fixed:t|fdrt:alpha|bonferroni");
  simulate->add_option("--alpha0", sim_alpha0, "HCT scan fraction");
  simulate->add_option("--alpha", sim_alpha, "FDRT level");
  simulate->add_option("--t", sim_t, "fixed threshold");
  simulate->add_option("--replicates", sim_replicates, "Monte Carlo replicates");
  simulate->add_option("--test-size", sim_test_size, "test samples per replicate");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("--zscore-mode", sim_mode, "direct|full-matrix");
  simulate->add_option("--out", sim_out, "per-replicate CSV path")->required();
  simulate->add_option("--json", sim_json, "optional aggregate JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (hct->parsed())
      return cmd_hct(hct_input, hct_column, hct_alpha0, hct_out, hct_trace);
    if (ideal->parsed()) return cmd_ideal(ideal_params, ideal_kind, ideal_out);
    if (phase->parsed()) return cmd_phase(phase_step, phase_out);
    if (exponents->parsed()) return cmd_exponents(exp_beta, exp_step, exp_out);
    if (boundary->parsed())
      return cmd_boundary(boundary_p, boundary_levels, boundary_step,
                          boundary_out);
    if (simulate->parsed())
      return cmd_simulate(sim_params, sim_kind, sim_selector, sim_alpha0,
                          sim_alpha, sim_t, sim_replicates, sim_test_size,
                          sim_seed, sim_mode, sim_out, sim_json);
  } catch (const std::exception& err) {
    std::cerr << "hctlab: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
