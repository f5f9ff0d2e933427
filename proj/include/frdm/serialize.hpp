#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frdm/dataset.hpp"
#include "frdm/discernibility.hpp"
#include "frdm/errors.hpp"
#include "frdm/fuzzy.hpp"
#include "frdm/pipeline.hpp"
#include "frdm/reducer.hpp"

namespace frdm {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Enum names. Parsers accept exactly the emitted names; anything else is an
// input error so CLI flags and JSON stay in lockstep.
// ---------------------------------------------------------------------------

inline const char* kernel_name(SimilarityKernel k) {
  switch (k) {
    case SimilarityKernel::RangeLinear: return "range_linear";
    case SimilarityKernel::StddevTriangular: return "stddev_triangular";
    case SimilarityKernel::CrispEquality: return "crisp_equality";
  }
  return "?";
}

inline const char* stddev_mode_name(StddevMode m) {
  return m == StddevMode::Population ? "population" : "sample";
}

inline const char* tnorm_name(TNorm t) { return t == TNorm::Minimum ? "minimum" : "lukasiewicz"; }

inline const char* tconorm_name(TConorm t) { return t == TConorm::Maximum ? "maximum" : "lukasiewicz"; }

inline const char* format_name(OutputFormat f) { return f == OutputFormat::Text ? "text" : "json"; }

inline const char* cause_name(SelectionCause c) {
  return c == SelectionCause::UnitClause ? "unit_clause" : "heuristic";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "crisp") return Mode::Crisp;
  if (s == "fuzzy_baseline") return Mode::FuzzyBaseline;
  if (s == "fuzzy_proposed") return Mode::FuzzyProposed;
  throw InputError("unknown mode '" + s + "' (expected crisp, fuzzy_baseline, or fuzzy_proposed)");
}

inline SimilarityKernel parse_kernel(const std::string& s) {
  if (s == "range_linear") return SimilarityKernel::RangeLinear;
  if (s == "stddev_triangular") return SimilarityKernel::StddevTriangular;
  if (s == "crisp_equality") return SimilarityKernel::CrispEquality;
  throw InputError("unknown kernel '" + s + "' (expected range_linear, stddev_triangular, or crisp_equality)");
}

inline StddevMode parse_stddev_mode(const std::string& s) {
  if (s == "population") return StddevMode::Population;
  if (s == "sample") return StddevMode::Sample;
  throw InputError("unknown stddev mode '" + s + "' (expected population or sample)");
}

inline TNorm parse_tnorm(const std::string& s) {
  if (s == "minimum") return TNorm::Minimum;
  if (s == "lukasiewicz") return TNorm::Lukasiewicz;
  throw InputError("unknown t-norm '" + s + "' (expected minimum or lukasiewicz)");
}

inline TConorm parse_tconorm(const std::string& s) {
  if (s == "maximum") return TConorm::Maximum;
  if (s == "lukasiewicz") return TConorm::Lukasiewicz;
  throw InputError("unknown t-conorm '" + s + "' (expected maximum or lukasiewicz)");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  throw InputError("unknown format '" + s + "' (expected text or json)");
}

// ---------------------------------------------------------------------------
// JSON builders. Numbers serialize at full round-trip precision; rounding is
// the consumer's concern.
// ---------------------------------------------------------------------------

inline ordered_json stats_to_json(const ClauseStats& s) {
  return ordered_json{{"generated", s.generated},   {"decision_dropped", s.decision_dropped},
                      {"vacuous", s.vacuous},       {"duplicates", s.duplicates},
                      {"subsumed", s.subsumed},     {"retained", s.retained}};
}

inline ordered_json clause_to_json(const FuzzyClause& c, const std::vector<std::string>& feature_names) {
  internal_check(c.memberships.size() == feature_names.size(), "clause_to_json: arity mismatch");
  ordered_json memberships = ordered_json::object();
  for (std::size_t f = 0; f < feature_names.size(); ++f) memberships[feature_names[f]] = c.memberships[f];
  return ordered_json{{"pair", {c.i, c.j}},
                      {"memberships", std::move(memberships)},
                      {"decision_degree", c.decision_degree},
                      {"max_sat", c.max_sat}};
}

inline ordered_json clause_set_to_json(const ClauseSet& cs) {
  ordered_json clauses = ordered_json::array();
  for (const auto& c : cs.clauses) clauses.push_back(clause_to_json(c, cs.feature_names));
  return ordered_json{{"mode", mode_name(cs.mode)},
                      {"kernel", kernel_name(cs.provenance.similarity.kernel)},
                      {"stddev_mode", stddev_mode_name(cs.provenance.similarity.stddev_mode)},
                      {"tnorm", tnorm_name(cs.provenance.connectives.tnorm)},
                      {"tconorm", tconorm_name(cs.provenance.connectives.tconorm)},
                      {"simplify", cs.provenance.simplify},
                      {"features", cs.feature_names},
                      {"stats", stats_to_json(cs.stats)},
                      {"clauses", std::move(clauses)}};
}

inline ordered_json step_to_json(const SelectionStep& s, const std::vector<std::string>& feature_names) {
  ordered_json j{{"feature", s.feature},
                 {"name", feature_names.at(static_cast<std::size_t>(s.feature))},
                 {"cause", cause_name(s.cause)}};
  if (s.cause == SelectionCause::UnitClause) {
    j["pair"] = {s.pair_i, s.pair_j};
  } else {
    j["covered"] = s.count;
    j["membership_sum"] = s.sum;
  }
  return j;
}

// Selection order, cause per step, and which step satisfied each clause of
// the input set (-1 = satisfied before any selection).
inline ordered_json reduct_to_json(const Reduct& r, const ClauseSet& cs) {
  internal_check(r.clause_satisfied_step.size() == cs.clauses.size(), "reduct_to_json: trace/clause count mismatch");
  ordered_json steps = ordered_json::array();
  for (const auto& s : r.steps) steps.push_back(step_to_json(s, cs.feature_names));
  ordered_json trace = ordered_json::array();
  for (std::size_t k = 0; k < cs.clauses.size(); ++k)
    trace.push_back(ordered_json{{"pair", {cs.clauses[k].i, cs.clauses[k].j}},
                                 {"satisfied_step", r.clause_satisfied_step[k]}});
  ordered_json names = ordered_json::array();
  for (int f : r.features()) names.push_back(cs.feature_names.at(static_cast<std::size_t>(f)));
  return ordered_json{{"features", std::move(names)}, {"steps", std::move(steps)}, {"clause_trace", std::move(trace)}};
}

inline ordered_json config_to_json(const RunConfig& c) {
  ordered_json overrides = ordered_json::object();
  for (const auto& [name, kind] : c.schema.kind_overrides)
    overrides[name] = kind == FeatureKind::Real ? "real" : "nominal";
  return ordered_json{{"input", c.input},
                      {"delimiter", std::string(1, c.schema.delimiter)},
                      {"decision_column", c.schema.decision_column.empty() ? ordered_json(nullptr)
                                                                           : ordered_json(c.schema.decision_column)},
                      {"kind_overrides", std::move(overrides)},
                      {"mode", mode_name(c.generation.mode)},
                      {"kernel", kernel_name(c.generation.similarity.kernel)},
                      {"stddev_mode", stddev_mode_name(c.generation.similarity.stddev_mode)},
                      {"tnorm", tnorm_name(c.generation.connectives.tnorm)},
                      {"tconorm", tconorm_name(c.generation.connectives.tconorm)},
                      {"simplify", c.generation.simplify},
                      {"format", format_name(c.format)},
                      {"eval", c.eval},
                      {"scatter_k", c.scatter_k},
                      {"seed", c.seed}};
}

inline ordered_json report_to_json(const SelectionReport& r) {
  ordered_json steps = ordered_json::array();
  std::vector<std::string> names;
  names.reserve(r.reduct_features.size());
  // SelectionStep carries dataset feature indices; reduct_features already
  // resolves them, in the same order.
  for (std::size_t s = 0; s < r.reduct.steps.size(); ++s) {
    const auto& st = r.reduct.steps[s];
    ordered_json j{{"feature", st.feature}, {"name", r.reduct_features.at(s)}, {"cause", cause_name(st.cause)}};
    if (st.cause == SelectionCause::UnitClause) {
      j["pair"] = {st.pair_i, st.pair_j};
    } else {
      j["covered"] = st.count;
      j["membership_sum"] = st.sum;
    }
    steps.push_back(std::move(j));
  }
  ordered_json trace = ordered_json::array();
  for (const auto& t : r.clause_trace)
    trace.push_back(ordered_json{{"pair", {t.i, t.j}}, {"satisfied_step", t.satisfied_step}});

  return ordered_json{
      {"config", config_to_json(r.config)},
      {"dataset",
       ordered_json{{"objects", r.dataset.objects},
                    {"features", r.dataset.features},
                    {"real_features", r.dataset.real_features},
                    {"nominal_features", r.dataset.nominal_features},
                    {"constant_features", r.dataset.constant_features},
                    {"decision", r.dataset.decision_name},
                    {"labels", r.dataset.labels}}},
      {"clause_stats", stats_to_json(r.clause_stats)},
      {"reduct", ordered_json{{"features", r.reduct_features},
                              {"size", r.reduct_features.size()},
                              {"steps", std::move(steps)},
                              {"clause_trace", std::move(trace)}}},
      {"accuracy", r.accuracy >= 0.0 ? ordered_json(r.accuracy) : ordered_json(nullptr)},
      {"degenerate", r.degenerate},
      {"warnings", r.warnings},
      {"timings_ms", ordered_json{{"load", r.timings.load_ms},
                                  {"generate", r.timings.generate_ms},
                                  {"reduce", r.timings.reduce_ms},
                                  {"eval", r.timings.eval_ms},
                                  {"total", r.timings.total_ms}}}};
}

}  // namespace frdm
