#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "frdm/dataset.hpp"
#include "frdm/errors.hpp"
#include "frdm/fuzzy.hpp"

namespace frdm {

enum class Mode { Crisp, FuzzyBaseline, FuzzyProposed };

// Tolerances fixed by contract: duplicate detection compares membership
// vectors componentwise at kEpsDuplicate; subsumption tests |degree - 1|
// against kEpsSubsume; clause satisfaction uses kEpsSatisfy against each
// clause's own maximum.
inline constexpr double kEpsDuplicate = 1e-9;
inline constexpr double kEpsSubsume = 1e-9;
inline constexpr double kEpsSatisfy = 1e-9;

// ---------------------------------------------------------------------------
// Crisp side
// ---------------------------------------------------------------------------

struct CrispClause {
  int i = 0;
  int j = 0;
  std::vector<int> features;  // ascending indices

  bool operator==(const CrispClause& other) const { return features == other.features; }
};

// Symmetric pairwise matrix; entry (i,j) holds the conditional features on
// which the two objects differ, and is empty when their decision labels
// agree. Diagonal entries are empty.
struct CrispDiscernibilityMatrix {
  int n = 0;
  std::vector<std::vector<int>> cells;  // row-major n*n

  const std::vector<int>& at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  }
};

inline CrispDiscernibilityMatrix crisp_dm(const DecisionSystem& ds) {
  CrispDiscernibilityMatrix dm;
  dm.n = ds.object_count();
  dm.cells.assign(static_cast<std::size_t>(dm.n) * static_cast<std::size_t>(dm.n), {});
  for (int i = 0; i < dm.n; ++i) {
    for (int j = i + 1; j < dm.n; ++j) {
      if (ds.decision(i) == ds.decision(j)) continue;
      std::vector<int> diff;
      for (int f = 0; f < ds.feature_count(); ++f)
        if (!ds.values_equal(f, i, j)) diff.push_back(f);
      dm.cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(dm.n) + static_cast<std::size_t>(j)] = diff;
      dm.cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(dm.n) + static_cast<std::size_t>(i)] = std::move(diff);
    }
  }
  return dm;
}

// Distinct non-empty upper-triangle clauses in ascending (i,j) order,
// keeping the first occurrence of each feature set.
inline std::vector<CrispClause> crisp_clauses(const CrispDiscernibilityMatrix& dm) {
  std::vector<CrispClause> out;
  for (int i = 0; i < dm.n; ++i) {
    for (int j = i + 1; j < dm.n; ++j) {
      const auto& cell = dm.at(i, j);
      if (cell.empty()) continue;
      bool dup = false;
      for (const auto& kept : out)
        if (kept.features == cell) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(CrispClause{i, j, cell});
    }
  }
  return out;
}

// Subset-subsumption plus duplicate removal. A clause that is a superset of
// another clause is redundant; the satisfying feature subsets are unchanged.
inline std::vector<CrispClause> crisp_simplify(const std::vector<CrispClause>& clauses) {
  std::vector<CrispClause> kept;
  auto is_subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (const auto& c : clauses) {
    bool dominated = false;
    for (const auto& k : kept)
      if (is_subset(k.features, c.features)) {  // covers duplicates as well
        dominated = true;
        break;
      }
    if (dominated) continue;
    std::erase_if(kept, [&](const CrispClause& k) { return is_subset(c.features, k.features); });
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const CrispClause& a, const CrispClause& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return kept;
}

// ---------------------------------------------------------------------------
// Fuzzy side
// ---------------------------------------------------------------------------

// One discernibility clause for an object pair: a membership degree per
// conditional feature plus a decision component. max_sat caches the
// t-conorm fold of all memberships (the most the clause can be satisfied).
struct FuzzyClause {
  int i = 0;
  int j = 0;
  std::vector<double> memberships;
  double decision_degree = 1.0;
  double max_sat = 0.0;
  double membership_sum = 0.0;
};

inline double max_sat_degree(const std::vector<double>& memberships, const Connectives& conn) {
  double acc = 0.0;
  for (double m : memberships) acc = conn.tc(acc, m);
  return acc;
}

inline double max_sat_degree(const FuzzyClause& clause, const Connectives& conn) {
  return max_sat_degree(clause.memberships, conn);
}

inline FuzzyClause make_fuzzy_clause(int i, int j, std::vector<double> memberships, double decision_degree,
                                     const Connectives& conn) {
  FuzzyClause c;
  c.i = i;
  c.j = j;
  c.memberships = std::move(memberships);
  c.decision_degree = decision_degree;
  c.max_sat = max_sat_degree(c.memberships, conn);
  c.membership_sum = 0.0;
  for (double m : c.memberships) c.membership_sum += m;
  return c;
}

// Membership of each conditional feature in the clause of pair (i,j).
// Baseline negates the similarity for every feature and carries the negated
// decision similarity. Proposed negates only across decision labels, keeps
// the similarity itself within a label, and always carries decision
// degree 1.
inline FuzzyClause fuzzy_clause(const DecisionSystem& ds, int i, int j, Mode mode, const SimilarityConfig& sim = {},
                                const Connectives& conn = {}) {
  internal_check(i != j, "fuzzy_clause: object pair must be distinct");
  internal_check(mode != Mode::Crisp, "fuzzy_clause: crisp mode has no fuzzy clauses");
  const bool same_label = ds.decision(i) == ds.decision(j);
  std::vector<double> memberships(static_cast<std::size_t>(ds.feature_count()));
  for (int f = 0; f < ds.feature_count(); ++f) {
    double s = similarity(ds, f, i, j, sim);
    if (mode == Mode::FuzzyBaseline)
      memberships[static_cast<std::size_t>(f)] = Connectives::negate(s);
    else
      memberships[static_cast<std::size_t>(f)] = same_label ? s : Connectives::negate(s);
  }
  double decision_degree = mode == Mode::FuzzyProposed ? 1.0 : Connectives::negate(same_label ? 1.0 : 0.0);
  return make_fuzzy_clause(i, j, std::move(memberships), decision_degree, conn);
}

// Graded subsumption: sum of T(mu_c1, mu_c2) over features divided by the
// sum of mu_c1. Degree 1 means c2 is redundant given c1; with the minimum
// t-norm that holds exactly when c1 <= c2 pointwise.
inline double subsumption_degree(const FuzzyClause& c1, const FuzzyClause& c2, const Connectives& conn = {}) {
  internal_check(c1.memberships.size() == c2.memberships.size(), "subsumption_degree: clause arity mismatch");
  internal_check(c1.membership_sum > 0.0, "subsumption_degree: subsumer has zero membership sum");
  double num = 0.0;
  for (std::size_t f = 0; f < c1.memberships.size(); ++f) num += conn.tn(c1.memberships[f], c2.memberships[f]);
  return num / c1.membership_sum;
}

namespace detail {

// subsumption_degree(c1, c2) == 1 within kEpsSubsume, with early exit on the
// accumulated deficit. T(x,y) <= x for every t-norm, so the deficit only
// grows.
inline bool subsumes(const FuzzyClause& c1, const FuzzyClause& c2, const Connectives& conn) {
  if (c1.membership_sum <= 0.0) return false;
  const double budget = kEpsSubsume * c1.membership_sum;
  double deficit = 0.0;
  for (std::size_t f = 0; f < c1.memberships.size(); ++f) {
    deficit += c1.memberships[f] - conn.tn(c1.memberships[f], c2.memberships[f]);
    if (deficit > budget) return false;
  }
  return true;
}

inline bool same_memberships(const FuzzyClause& a, const FuzzyClause& b) {
  for (std::size_t f = 0; f < a.memberships.size(); ++f)
    if (std::abs(a.memberships[f] - b.memberships[f]) > kEpsDuplicate) return false;
  return true;
}

}  // namespace detail

struct GenerationConfig {
  Mode mode = Mode::FuzzyProposed;
  SimilarityConfig similarity;
  Connectives connectives;
  bool simplify = true;
};

// Every generated pair lands in exactly one bucket, so
// generated == decision_dropped + vacuous + duplicates + subsumed + retained.
struct ClauseStats {
  std::int64_t generated = 0;
  std::int64_t decision_dropped = 0;
  std::int64_t vacuous = 0;
  std::int64_t duplicates = 0;
  std::int64_t subsumed = 0;
  std::int64_t retained = 0;

  bool consistent() const {
    return generated == decision_dropped + vacuous + duplicates + subsumed + retained;
  }
};

struct ClauseSet {
  Mode mode = Mode::FuzzyProposed;
  GenerationConfig provenance;
  std::vector<std::string> feature_names;
  std::vector<FuzzyClause> clauses;  // canonical ascending (i,j) order
  ClauseStats stats;
};

namespace detail {

// Online retention filter. Duplicates are dropped against the retained set;
// with simplify on, a new clause is dropped when any retained clause
// subsumes it and evicts every retained clause it subsumes, so the retained
// set stays pairwise non-subsuming.
class RetentionFilter {
public:
  RetentionFilter(const Connectives& conn, bool simplify, ClauseStats& stats)
      : conn_(conn), simplify_(simplify), stats_(stats) {}

  void offer(FuzzyClause&& c) {
    for (const auto& kept : retained_) {
      if (same_memberships(kept, c)) {
        ++stats_.duplicates;
        return;
      }
    }
    if (simplify_) {
      for (const auto& kept : retained_) {
        if (subsumes(kept, c, conn_)) {
          ++stats_.subsumed;
          return;
        }
      }
      auto before = static_cast<std::int64_t>(retained_.size());
      std::erase_if(retained_, [&](const FuzzyClause& kept) { return subsumes(c, kept, conn_); });
      stats_.subsumed += before - static_cast<std::int64_t>(retained_.size());
    }
    retained_.push_back(std::move(c));
  }

  std::vector<FuzzyClause> take() && { return std::move(retained_); }

private:
  Connectives conn_;
  bool simplify_;
  ClauseStats& stats_;
  std::vector<FuzzyClause> retained_;
};

}  // namespace detail

// Builds the clause set for all object pairs i < j in ascending order.
// Crisp mode encodes feature difference as 0/1 memberships; same-label pairs
// carry decision degree 0 and are dropped, mirroring the crisp matrix rule.
inline ClauseSet generate_clause_set(const DecisionSystem& ds, const GenerationConfig& cfg) {
  ClauseSet cs;
  cs.mode = cfg.mode;
  cs.provenance = cfg;
  cs.feature_names = ds.feature_names();

  const int n = ds.object_count();
  const int nf = ds.feature_count();
  cs.stats.generated = static_cast<std::int64_t>(n) * (n - 1) / 2;

  detail::RetentionFilter filter(cfg.connectives, cfg.simplify, cs.stats);
  std::vector<double> memberships(static_cast<std::size_t>(nf));

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same_label = ds.decision(i) == ds.decision(j);
      if (cfg.mode != Mode::FuzzyProposed && same_label) {
        ++cs.stats.decision_dropped;  // clauses with decision component 0
        continue;
      }
      bool all_zero = true;
      for (int f = 0; f < nf; ++f) {
        double m;
        if (cfg.mode == Mode::Crisp) {
          m = ds.values_equal(f, i, j) ? 0.0 : 1.0;
        } else {
          double s = similarity(ds, f, i, j, cfg.similarity);
          m = (cfg.mode == Mode::FuzzyProposed && same_label) ? s : Connectives::negate(s);
        }
        memberships[static_cast<std::size_t>(f)] = m;
        if (m != 0.0) all_zero = false;
      }
      if (all_zero) {
        ++cs.stats.vacuous;
        continue;
      }
      filter.offer(make_fuzzy_clause(i, j, memberships, 1.0, cfg.connectives));
    }
  }

  cs.clauses = std::move(filter).take();
  std::sort(cs.clauses.begin(), cs.clauses.end(),
            [](const FuzzyClause& a, const FuzzyClause& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  cs.stats.retained = static_cast<std::int64_t>(cs.clauses.size());
  internal_check(cs.stats.consistent(), "generate_clause_set: clause accounting does not reconcile");
  return cs;
}

// Full pairwise simplification of an already generated set. Generating with
// simplify on is observationally equal to generating without and running
// this pass.
inline ClauseSet simplify_clause_set(const ClauseSet& input) {
  ClauseSet cs = input;
  cs.provenance.simplify = true;
  ClauseStats& stats = cs.stats;
  detail::RetentionFilter filter(cs.provenance.connectives, true, stats);
  std::int64_t before = static_cast<std::int64_t>(cs.clauses.size());
  std::int64_t dropped_before = stats.duplicates + stats.subsumed;
  for (auto& c : cs.clauses) filter.offer(std::move(c));
  cs.clauses = std::move(filter).take();
  std::sort(cs.clauses.begin(), cs.clauses.end(),
            [](const FuzzyClause& a, const FuzzyClause& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  stats.retained = static_cast<std::int64_t>(cs.clauses.size());
  internal_check(stats.duplicates + stats.subsumed - dropped_before ==
                     before - static_cast<std::int64_t>(cs.clauses.size()),
                 "simplify_clause_set: clause accounting does not reconcile");
  internal_check(stats.consistent(), "simplify_clause_set: clause accounting does not reconcile");
  return cs;
}

}  // namespace frdm
