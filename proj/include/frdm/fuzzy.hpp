#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "frdm/dataset.hpp"
#include "frdm/errors.hpp"

namespace frdm {

enum class TNorm { Lukasiewicz, Minimum };
enum class TConorm { Lukasiewicz, Maximum };

// Fuzzy connectives on [0,1]. Negation is standard, the implicator is
// Lukasiewicz. The t-norm drives clause subsumption, the t-conorm drives
// clause satisfaction folds.
struct Connectives {
  TNorm tnorm = TNorm::Minimum;
  TConorm tconorm = TConorm::Lukasiewicz;

  double tn(double x, double y) const {
    return tnorm == TNorm::Lukasiewicz ? std::max(x + y - 1.0, 0.0) : std::min(x, y);
  }
  double tc(double x, double y) const {
    return tconorm == TConorm::Lukasiewicz ? std::min(x + y, 1.0) : std::max(x, y);
  }
  static double negate(double x) { return 1.0 - x; }
  static double implication(double x, double y) { return std::min(1.0 - x + y, 1.0); }
};

enum class SimilarityKernel { RangeLinear, StddevTriangular, CrispEquality };
enum class StddevMode { Population, Sample };

struct SimilarityConfig {
  SimilarityKernel kernel = SimilarityKernel::RangeLinear;
  StddevMode stddev_mode = StddevMode::Population;
};

namespace detail {

inline double kernel_range_linear(double vi, double vj, double range) {
  if (range == 0.0) return 1.0;  // constant feature: every pair fully similar
  double gap = std::abs(vi - vj) / range;
  return gap <= 0.25 ? 1.0 - 4.0 * gap : 0.0;
}

inline double kernel_stddev_triangular(double vi, double vj, double sigma) {
  if (sigma == 0.0) return vi == vj ? 1.0 : 0.0;
  // 1 - |d|/sigma keeps the kernel exactly symmetric and reflexive.
  return std::max(1.0 - std::abs(vi - vj) / sigma, 0.0);
}

}  // namespace detail

// Similarity degree of two objects under one conditional feature. Real
// features use the configured kernel; nominal features always compare
// crisply (1 iff equal).
inline double similarity(const DecisionSystem& ds, int feature, int i, int j, const SimilarityConfig& cfg = {}) {
  internal_check(feature >= 0 && feature < ds.feature_count(), "similarity: feature index out of range");
  internal_check(i >= 0 && i < ds.object_count() && j >= 0 && j < ds.object_count(),
                 "similarity: object index out of range");
  if (ds.kind(feature) == FeatureKind::Nominal) return ds.values_equal(feature, i, j) ? 1.0 : 0.0;
  double vi = ds.real_value(feature, i);
  double vj = ds.real_value(feature, j);
  const FeatureStats& st = ds.stats(feature);
  switch (cfg.kernel) {
    case SimilarityKernel::RangeLinear:
      return detail::kernel_range_linear(vi, vj, st.range());
    case SimilarityKernel::StddevTriangular: {
      double sigma = cfg.stddev_mode == StddevMode::Population ? st.stddev_population : st.stddev_sample;
      return detail::kernel_stddev_triangular(vi, vj, sigma);
    }
    case SimilarityKernel::CrispEquality:
      return vi == vj ? 1.0 : 0.0;
  }
  throw InternalError("similarity: unknown kernel");
}

// Decision similarity is always crisp.
inline double decision_similarity(const DecisionSystem& ds, int i, int j) {
  return ds.decision(i) == ds.decision(j) ? 1.0 : 0.0;
}

struct SimilarityMatrix {
  std::string feature;
  int n = 0;
  std::vector<double> degrees;  // row-major n*n

  double at(int i, int j) const { return degrees[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

inline SimilarityMatrix similarity_matrix(const DecisionSystem& ds, int feature, const SimilarityConfig& cfg = {}) {
  SimilarityMatrix m;
  m.feature = ds.feature_name(feature);
  m.n = ds.object_count();
  m.degrees.assign(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n), 1.0);
  for (int i = 0; i < m.n; ++i) {
    for (int j = i + 1; j < m.n; ++j) {
      double d = similarity(ds, feature, i, j, cfg);
      m.degrees[static_cast<std::size_t>(i) * static_cast<std::size_t>(m.n) + static_cast<std::size_t>(j)] = d;
      m.degrees[static_cast<std::size_t>(j) * static_cast<std::size_t>(m.n) + static_cast<std::size_t>(i)] = d;
    }
  }
  return m;
}

inline SimilarityMatrix decision_similarity_matrix(const DecisionSystem& ds) {
  SimilarityMatrix m;
  m.feature = ds.decision_name();
  m.n = ds.object_count();
  m.degrees.assign(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n), 1.0);
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) {
      double d = decision_similarity(ds, i, j);
      m.degrees[static_cast<std::size_t>(i) * static_cast<std::size_t>(m.n) + static_cast<std::size_t>(j)] = d;
      m.degrees[static_cast<std::size_t>(j) * static_cast<std::size_t>(m.n) + static_cast<std::size_t>(i)] = d;
    }
  return m;
}

}  // namespace frdm
