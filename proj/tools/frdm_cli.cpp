// Command-line front end for the feature-selection library.
//
// Subcommands: select (full pipeline), matrix (similarity/clause dumps),
// oracle (exhaustive minimal reducts, guarded), eval (leave-one-out 1-NN),
// scatter (reduct-column export). Exit codes: 0 success, 1 input error,
// 2 degenerate or unsatisfiable instance, 3 internal invariant breach.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frdm/frdm.hpp"

namespace {

struct CommonOpts {
  std::string input;
  std::string mode = "fuzzy_proposed";
  std::string kernel = "range_linear";
  std::string stddev_mode = "population";
  std::string tnorm = "minimum";
  std::string tconorm = "lukasiewicz";
  bool simplify = true;
  std::string decision_column;
  std::string delimiter = ",";
  std::vector<std::string> nominal_cols;
  std::vector<std::string> real_cols;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input, "CSV/TSV dataset; last column is the decision unless --decision-column is given")
      ->required();
  cmd->add_option("--mode", o.mode, "crisp, fuzzy_baseline, or fuzzy_proposed")->capture_default_str();
  cmd->add_option("--kernel", o.kernel, "range_linear, stddev_triangular, or crisp_equality")->capture_default_str();
  cmd->add_option("--stddev-mode", o.stddev_mode, "population or sample (stddev_triangular kernel)")
      ->capture_default_str();
  cmd->add_option("--tnorm", o.tnorm, "minimum or lukasiewicz (subsumption)")->capture_default_str();
  cmd->add_option("--tconorm", o.tconorm, "lukasiewicz or maximum (clause satisfaction)")->capture_default_str();
  cmd->add_flag("--simplify,!--no-simplify", o.simplify, "subsumption-based clause simplification")
      ->capture_default_str();
  cmd->add_option("--decision-column", o.decision_column, "decision column name (default: last column)");
  cmd->add_option("--delimiter", o.delimiter, "single-character field delimiter")->capture_default_str();
  cmd->add_option("--nominal", o.nominal_cols, "force a column to be treated as nominal (repeatable)");
  cmd->add_option("--real", o.real_cols, "force a column to be treated as real (repeatable)");
  cmd->add_option("--seed", o.seed, "reserved; every stage is deterministic")->capture_default_str();
}

frdm::RunConfig to_config(const CommonOpts& o) {
  if (o.delimiter.size() != 1) throw frdm::InputError("--delimiter must be a single character");
  frdm::RunConfig cfg;
  cfg.input = o.input;
  cfg.schema.delimiter = o.delimiter[0];
  cfg.schema.decision_column = o.decision_column;
  for (const auto& name : o.nominal_cols) cfg.schema.kind_overrides[name] = frdm::FeatureKind::Nominal;
  for (const auto& name : o.real_cols) {
    if (cfg.schema.kind_overrides.count(name))
      throw frdm::InputError("column '" + name + "' listed under both --nominal and --real");
    cfg.schema.kind_overrides[name] = frdm::FeatureKind::Real;
  }
  cfg.generation.mode = frdm::parse_mode(o.mode);
  cfg.generation.similarity.kernel = frdm::parse_kernel(o.kernel);
  cfg.generation.similarity.stddev_mode = frdm::parse_stddev_mode(o.stddev_mode);
  cfg.generation.connectives.tnorm = frdm::parse_tnorm(o.tnorm);
  cfg.generation.connectives.tconorm = frdm::parse_tconorm(o.tconorm);
  cfg.generation.simplify = o.simplify;
  cfg.seed = o.seed;
  return cfg;
}

std::ostream& full_precision(std::ostream& os) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  return os;
}

void write_text_or_file(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw frdm::InputError("cannot open output file '" + path + "'");
  out << text;
}

int run_select_cmd(const CommonOpts& common, const std::string& format, const std::string& output, bool eval,
                   int scatter_k, const std::string& scatter_output) {
  frdm::RunConfig cfg = to_config(common);
  cfg.format = frdm::parse_format(format);
  cfg.output_path = output;
  cfg.eval = eval;
  cfg.scatter_k = scatter_k;
  cfg.scatter_path = scatter_output;

  frdm::DecisionSystem ds = frdm::load_csv(cfg.input, cfg.schema);
  frdm::SelectionReport report = frdm::run_select(ds, cfg);

  if (cfg.format == frdm::OutputFormat::Json) {
    std::cout << frdm::report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << frdm::to_text(report);
  }
  if (!cfg.output_path.empty()) write_text_or_file(cfg.output_path, frdm::report_to_json(report).dump(2) + "\n");

  if (cfg.scatter_k > 0) {
    if (cfg.scatter_path.empty())
      throw frdm::InputError("scatter export from select requires --scatter-output (stdout carries the report)");
    std::ofstream out(cfg.scatter_path, std::ios::binary);
    if (!out) throw frdm::InputError("cannot open output file '" + cfg.scatter_path + "'");
    frdm::export_scatter(ds, report.reduct.features(), cfg.scatter_k, out, cfg.schema.delimiter);
  }
  return report.degenerate ? 2 : 0;
}

int run_matrix_cmd(const CommonOpts& common, const std::string& feature, bool decision, bool clauses) {
  frdm::RunConfig cfg = to_config(common);
  frdm::DecisionSystem ds = frdm::load_csv(cfg.input, cfg.schema);
  const char delim = cfg.schema.delimiter;

  int selected = (feature.empty() ? 0 : 1) + (decision ? 1 : 0) + (clauses ? 1 : 0);
  if (selected != 1) throw frdm::InputError("matrix: pass exactly one of --feature NAME, --decision, --clauses");

  if (clauses) {
    frdm::ClauseSet cs = frdm::generate_clause_set(ds, cfg.generation);
    std::cout << frdm::clause_set_to_json(cs).dump(2) << "\n";
    return 0;
  }

  frdm::SimilarityMatrix m;
  if (decision) {
    m = frdm::decision_similarity_matrix(ds);
  } else {
    int f = ds.feature_index(feature);
    if (f < 0) throw frdm::InputError("unknown feature '" + feature + "'");
    m = frdm::similarity_matrix(ds, f, cfg.generation.similarity);
  }
  full_precision(std::cout);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (j) std::cout << delim;
      std::cout << m.at(i, j);
    }
    std::cout << "\n";
  }
  return 0;
}

int run_oracle_cmd(const CommonOpts& common, const std::string& format) {
  frdm::RunConfig cfg = to_config(common);
  frdm::DecisionSystem ds = frdm::load_csv(cfg.input, cfg.schema);
  frdm::ClauseSet cs = frdm::generate_clause_set(ds, cfg.generation);
  auto reducts = frdm::brute_force_reducts(cs, cfg.generation.connectives);

  auto names = [&](const std::vector<int>& subset) {
    std::vector<std::string> out;
    for (int f : subset) out.push_back(ds.feature_name(f));
    return out;
  };
  if (frdm::parse_format(format) == frdm::OutputFormat::Json) {
    frdm::ordered_json j = frdm::ordered_json::array();
    for (const auto& r : reducts) j.push_back(names(r));
    std::cout << frdm::ordered_json{{"reducts", std::move(j)}}.dump(2) << "\n";
  } else {
    for (const auto& r : reducts) {
      bool first = true;
      for (const auto& n : names(r)) {
        if (!first) std::cout << ' ';
        std::cout << n;
        first = false;
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int run_eval_cmd(const CommonOpts& common, const std::vector<std::string>& features) {
  frdm::RunConfig cfg = to_config(common);
  frdm::DecisionSystem ds = frdm::load_csv(cfg.input, cfg.schema);
  std::vector<int> reduct;
  for (const auto& name : features) {
    int f = ds.feature_index(name);
    if (f < 0) throw frdm::InputError("unknown feature '" + name + "'");
    reduct.push_back(f);
  }
  double acc = frdm::loocv_eval(ds, reduct);
  full_precision(std::cout);
  std::cout << acc << "\n";
  return 0;
}

int run_scatter_cmd(const CommonOpts& common, int k, const std::string& output) {
  frdm::RunConfig cfg = to_config(common);
  frdm::DecisionSystem ds = frdm::load_csv(cfg.input, cfg.schema);
  frdm::SelectionReport report = frdm::run_select(ds, cfg);
  std::ostringstream rows;
  frdm::export_scatter(ds, report.reduct.features(), k, rows, cfg.schema.delimiter);
  write_text_or_file(output, rows.str());
  return report.degenerate ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discernibility-matrix feature selection (crisp and fuzzy-rough)"};
  app.set_version_flag("--version", "frdm 1.0.0");
  app.require_subcommand(1);

  CommonOpts select_opts, matrix_opts, oracle_opts, eval_opts, scatter_opts;

  auto* select = app.add_subcommand("select", "run the selection pipeline and report the reduct");
  add_common(select, select_opts);
  std::string select_format = "text";
  std::string select_output;
  bool select_eval = false;
  int select_scatter_k = 0;
  std::string select_scatter_output;
  select->add_option("--format", select_format, "stdout format: text or json")->capture_default_str();
  select->add_option("--output", select_output, "write the JSON report to this file");
  select->add_flag("--eval", select_eval, "append leave-one-out 1-NN accuracy of the reduct");
  select->add_option("--scatter-k", select_scatter_k, "also export the first K reduct columns");
  select->add_option("--scatter-output", select_scatter_output, "scatter export destination");

  auto* matrix = app.add_subcommand("matrix", "dump a similarity matrix or the generated clause set");
  add_common(matrix, matrix_opts);
  std::string matrix_feature;
  bool matrix_decision = false;
  bool matrix_clauses = false;
  matrix->add_option("--feature", matrix_feature, "dump the similarity matrix of this feature");
  matrix->add_flag("--decision", matrix_decision, "dump the crisp decision-similarity matrix");
  matrix->add_flag("--clauses", matrix_clauses, "dump the generated clause set as JSON");

  auto* oracle = app.add_subcommand("oracle", "enumerate all minimal satisfying feature subsets (max 20 features)");
  add_common(oracle, oracle_opts);
  std::string oracle_format = "text";
  oracle->add_option("--format", oracle_format, "stdout format: text or json")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "leave-one-out 1-NN accuracy over the given features");
  add_common(eval, eval_opts);
  std::vector<std::string> eval_features;
  eval->add_option("--features", eval_features, "feature names (comma-separated or repeated)")
      ->required()
      ->delimiter(',');

  auto* scatter = app.add_subcommand("scatter", "run selection, then export the first K reduct columns");
  add_common(scatter, scatter_opts);
  int scatter_k = 2;
  std::string scatter_output;
  scatter->add_option("-k,--k", scatter_k, "number of reduct columns to export")->capture_default_str();
  scatter->add_option("--output", scatter_output, "destination file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (select->parsed())
      return run_select_cmd(select_opts, select_format, select_output, select_eval, select_scatter_k,
                            select_scatter_output);
    if (matrix->parsed()) return run_matrix_cmd(matrix_opts, matrix_feature, matrix_decision, matrix_clauses);
    if (oracle->parsed()) return run_oracle_cmd(oracle_opts, oracle_format);
    if (eval->parsed()) return run_eval_cmd(eval_opts, eval_features);
    if (scatter->parsed()) return run_scatter_cmd(scatter_opts, scatter_k, scatter_output);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const frdm::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const frdm::DegenerateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const frdm::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
