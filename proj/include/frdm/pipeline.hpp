#pragma once

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "frdm/dataset.hpp"
#include "frdm/discernibility.hpp"
#include "frdm/errors.hpp"
#include "frdm/fuzzy.hpp"
#include "frdm/reducer.hpp"

namespace frdm {

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::string input;
  CsvSchema schema;
  GenerationConfig generation;
  OutputFormat format = OutputFormat::Text;
  std::string output_path;   // JSON report destination; empty = none
  bool eval = false;         // leave-one-out 1-NN accuracy of the reduct
  int scatter_k = 0;         // scatter export column count; 0 = off
  std::string scatter_path;  // empty = stdout
  std::uint64_t seed = 0;    // reserved; every stage is deterministic
};

struct DatasetSummary {
  int objects = 0;
  int features = 0;
  int nominal_features = 0;
  int real_features = 0;
  int constant_features = 0;
  std::string decision_name;
  std::vector<std::string> labels;
};

struct StageTimings {
  double load_ms = 0.0;
  double generate_ms = 0.0;
  double reduce_ms = 0.0;
  double eval_ms = 0.0;
  double total_ms = 0.0;
};

struct ClauseTraceEntry {
  int i = 0;
  int j = 0;
  int satisfied_step = -1;
};

struct SelectionReport {
  RunConfig config;  // effective configuration, echoed in full
  DatasetSummary dataset;
  ClauseStats clause_stats;
  Reduct reduct;
  std::vector<std::string> reduct_features;  // names in selection order
  std::vector<ClauseTraceEntry> clause_trace;
  double accuracy = -1.0;  // set when config.eval
  bool degenerate = false;
  std::vector<std::string> warnings;
  StageTimings timings;
};

inline DatasetSummary summarize(const DecisionSystem& ds) {
  DatasetSummary s;
  s.objects = ds.object_count();
  s.features = ds.feature_count();
  s.decision_name = ds.decision_name();
  s.labels = ds.labels();
  for (int f = 0; f < ds.feature_count(); ++f) {
    if (ds.kind(f) == FeatureKind::Real) {
      ++s.real_features;
      if (ds.stats(f).constant) ++s.constant_features;
    } else {
      ++s.nominal_features;
    }
  }
  return s;
}

// Leave-one-out 1-NN accuracy over the reduct features. Real features are
// range-normalized ((v - min) / range, full-dataset range); nominal features
// contribute 0/1 mismatch. Distance ties break to the lowest object index.
inline double loocv_eval(const DecisionSystem& ds, const std::vector<int>& reduct) {
  if (reduct.empty()) throw InputError("loocv_eval: empty reduct");
  if (ds.object_count() < 3) throw InputError("loocv_eval: need at least 3 objects");

  const int n = ds.object_count();
  std::vector<std::vector<double>> norm(reduct.size());
  std::vector<bool> is_real(reduct.size(), false);
  for (std::size_t k = 0; k < reduct.size(); ++k) {
    int f = reduct[k];
    internal_check(f >= 0 && f < ds.feature_count(), "loocv_eval: feature index out of range");
    if (ds.kind(f) == FeatureKind::Real) {
      is_real[k] = true;
      const FeatureStats& st = ds.stats(f);
      norm[k].resize(static_cast<std::size_t>(n));
      for (int o = 0; o < n; ++o)
        norm[k][static_cast<std::size_t>(o)] = st.constant ? 0.0 : (ds.real_value(f, o) - st.min) / st.range();
    }
  }

  int correct = 0;
  for (int o = 0; o < n; ++o) {
    int best = -1;
    double best_d2 = 0.0;
    for (int p = 0; p < n; ++p) {
      if (p == o) continue;
      double d2 = 0.0;
      for (std::size_t k = 0; k < reduct.size(); ++k) {
        if (is_real[k]) {
          double d = norm[k][static_cast<std::size_t>(o)] - norm[k][static_cast<std::size_t>(p)];
          d2 += d * d;
        } else if (!ds.values_equal(reduct[k], o, p)) {
          d2 += 1.0;
        }
      }
      if (best == -1 || d2 < best_d2) {
        best = p;
        best_d2 = d2;
      }
    }
    if (ds.decision(best) == ds.decision(o)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

// One row per object: id, the first k reduct features' values in selection
// order, decision label.
inline void export_scatter(const DecisionSystem& ds, const std::vector<int>& reduct, int k, std::ostream& out,
                           char delimiter = ',') {
  if (k < 0 || k > static_cast<int>(reduct.size()))
    throw InputError("export_scatter: k = " + std::to_string(k) + " exceeds reduct size " +
                     std::to_string(reduct.size()));
  out << "id";
  for (int c = 0; c < k; ++c) out << delimiter << ds.feature_name(reduct[static_cast<std::size_t>(c)]);
  out << delimiter << ds.decision_name() << '\n';
  for (int o = 0; o < ds.object_count(); ++o) {
    out << o;
    for (int c = 0; c < k; ++c) out << delimiter << ds.cell_text(reduct[static_cast<std::size_t>(c)], o);
    out << delimiter << ds.decision_text(o) << '\n';
  }
}

namespace detail {

class StageClock {
public:
  StageClock() : start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Full pipeline on a loaded system: clause generation, reduction, optional
// evaluation. Load timing is filled by the file-path overload.
inline SelectionReport run_select(const DecisionSystem& ds, const RunConfig& config) {
  SelectionReport report;
  report.config = config;
  report.dataset = summarize(ds);

  detail::StageClock clock;
  double total = 0.0;

  ClauseSet cs = generate_clause_set(ds, config.generation);
  report.clause_stats = cs.stats;
  report.timings.generate_ms = clock.lap_ms();
  total += report.timings.generate_ms;

  if (ds.label_count() < 2 && config.generation.mode != Mode::FuzzyProposed) {
    report.degenerate = true;
    report.warnings.push_back("single decision label: every clause is decision-equal, reduct is empty");
  }

  report.reduct = config.generation.mode == Mode::Crisp ? johnson_reduct(cs)
                                                        : fuzzy_johnson_reduct(cs, config.generation.connectives);
  for (int f : report.reduct.features()) report.reduct_features.push_back(ds.feature_name(f));
  report.clause_trace.reserve(cs.clauses.size());
  for (std::size_t k = 0; k < cs.clauses.size(); ++k)
    report.clause_trace.push_back(
        ClauseTraceEntry{cs.clauses[k].i, cs.clauses[k].j, report.reduct.clause_satisfied_step[k]});
  report.timings.reduce_ms = clock.lap_ms();
  total += report.timings.reduce_ms;

  if (config.eval) {
    if (report.reduct.steps.empty()) {
      report.warnings.push_back("evaluation skipped: empty reduct");
    } else {
      report.accuracy = loocv_eval(ds, report.reduct.features());
    }
    report.timings.eval_ms = clock.lap_ms();
    total += report.timings.eval_ms;
  }

  report.timings.total_ms = report.timings.load_ms + total;
  return report;
}

inline SelectionReport run_select(const RunConfig& config) {
  detail::StageClock clock;
  DecisionSystem ds = load_csv(config.input, config.schema);
  double load_ms = clock.lap_ms();
  SelectionReport report = run_select(ds, config);
  report.timings.load_ms = load_ms;
  report.timings.total_ms += load_ms;
  return report;
}

// ---------------------------------------------------------------------------
// Human-readable summary (two-decimal presentation; full precision lives in
// the JSON report).
// ---------------------------------------------------------------------------

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Crisp: return "crisp";
    case Mode::FuzzyBaseline: return "fuzzy_baseline";
    case Mode::FuzzyProposed: return "fuzzy_proposed";
  }
  return "?";
}

inline std::string to_text(const SelectionReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "dataset: " << r.dataset.objects << " objects, " << r.dataset.features << " features (" << r.dataset.real_features
     << " real, " << r.dataset.nominal_features << " nominal), " << r.dataset.labels.size() << " labels\n";
  os << "mode: " << mode_name(r.config.generation.mode) << (r.config.generation.simplify ? ", simplify on" : ", simplify off")
     << "\n";
  os << "clauses: " << r.clause_stats.generated << " generated = " << r.clause_stats.retained << " retained + "
     << r.clause_stats.decision_dropped << " decision-equal + " << r.clause_stats.vacuous << " vacuous + "
     << r.clause_stats.duplicates << " duplicate + " << r.clause_stats.subsumed << " subsumed\n";
  os << "reduct (" << r.reduct_features.size() << "):";
  for (const auto& name : r.reduct_features) os << ' ' << name;
  os << "\n";
  for (std::size_t s = 0; s < r.reduct.steps.size(); ++s) {
    const auto& st = r.reduct.steps[s];
    os << "  step " << s + 1 << ": " << r.reduct_features[s];
    if (st.cause == SelectionCause::UnitClause)
      os << "  [unit clause (" << st.pair_i << "," << st.pair_j << ")]";
    else
      os << "  [heuristic: covers " << st.count << " clauses, mass " << st.sum << "]";
    os << "\n";
  }
  if (r.accuracy >= 0.0) os << "loocv accuracy: " << r.accuracy << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  os << "timings (ms): load " << r.timings.load_ms << ", generate " << r.timings.generate_ms << ", reduce "
     << r.timings.reduce_ms;
  if (r.config.eval) os << ", eval " << r.timings.eval_ms;
  os << ", total " << r.timings.total_ms << "\n";
  return os.str();
}

}  // namespace frdm
