#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "frdm/discernibility.hpp"
#include "frdm/errors.hpp"

namespace frdm {

enum class SelectionCause { UnitClause, Heuristic };

struct SelectionStep {
  int feature = -1;
  SelectionCause cause = SelectionCause::Heuristic;
  int pair_i = -1;  // unit clause pair, when cause == UnitClause
  int pair_j = -1;
  std::int64_t count = 0;  // heuristic score: clauses covered
  double sum = 0.0;        // heuristic score: membership mass
};

struct Reduct {
  std::vector<SelectionStep> steps;
  // Per input clause: index of the step whose selection satisfied it, or -1
  // when the clause was satisfied before any selection.
  std::vector<int> clause_satisfied_step;

  std::vector<int> features() const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.feature);
    return out;
  }
};

// Live solver state: the accumulated degree only grows as features are
// selected, and a clause is satisfied once it reaches its own maximum
// (max_sat - kEpsSatisfy), not degree 1.
struct SatisfactionState {
  std::vector<double> accumulated;
  std::vector<bool> satisfied;
  std::vector<int> satisfied_step;
  std::size_t open = 0;

  explicit SatisfactionState(std::size_t clause_count)
      : accumulated(clause_count, 0.0), satisfied(clause_count, false), satisfied_step(clause_count, -1),
        open(clause_count) {}
};

inline bool is_satisfied(const FuzzyClause& clause, const std::vector<int>& selected, const Connectives& conn = {}) {
  double acc = 0.0;
  for (int f : selected) acc = conn.tc(acc, clause.memberships[static_cast<std::size_t>(f)]);
  return acc >= max_sat_degree(clause, conn) - kEpsSatisfy;
}

// Heuristic literal choice: most unsatisfied clauses covered, then largest
// membership mass over them, then lowest feature index. Already selected
// features never score.
inline int select_literal(const std::vector<FuzzyClause>& clauses, const std::vector<bool>& unsatisfied,
                          const std::vector<bool>& selected, int feature_count, std::int64_t* best_count = nullptr,
                          double* best_sum = nullptr) {
  std::vector<std::int64_t> count(static_cast<std::size_t>(feature_count), 0);
  std::vector<double> sum(static_cast<std::size_t>(feature_count), 0.0);
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    if (!unsatisfied[k]) continue;
    const auto& m = clauses[k].memberships;
    for (int f = 0; f < feature_count; ++f) {
      if (m[static_cast<std::size_t>(f)] > 0.0) {
        ++count[static_cast<std::size_t>(f)];
        sum[static_cast<std::size_t>(f)] += m[static_cast<std::size_t>(f)];
      }
    }
  }
  int best = -1;
  for (int f = 0; f < feature_count; ++f) {
    if (selected[static_cast<std::size_t>(f)] || count[static_cast<std::size_t>(f)] == 0) continue;
    if (best == -1 || count[static_cast<std::size_t>(f)] > count[static_cast<std::size_t>(best)] ||
        (count[static_cast<std::size_t>(f)] == count[static_cast<std::size_t>(best)] &&
         sum[static_cast<std::size_t>(f)] > sum[static_cast<std::size_t>(best)]))
      best = f;
  }
  if (best == -1) throw DegenerateError("unsatisfiable residue: no feature covers the remaining clauses");
  if (best_count) *best_count = count[static_cast<std::size_t>(best)];
  if (best_sum) *best_sum = sum[static_cast<std::size_t>(best)];
  return best;
}

// Fuzzy Johnson reducer: unit propagation (a clause with exactly one
// nonzero membership forces that feature, in ascending pair order) then the
// covering heuristic, until every clause reaches its maximum satisfiability
// degree.
inline Reduct fuzzy_johnson_reduct(const ClauseSet& cs, const Connectives& conn = {}) {
  internal_check(cs.mode != Mode::Crisp, "fuzzy_johnson_reduct: clause set is crisp");
  const int nf = static_cast<int>(cs.feature_names.size());
  const std::size_t m = cs.clauses.size();

  std::vector<int> unit_feature(m, -1);  // set when the clause has exactly one nonzero membership
  std::vector<double> max_sat(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& ms = cs.clauses[k].memberships;
    int nonzero = -1;
    int nonzero_count = 0;
    for (int f = 0; f < nf; ++f)
      if (ms[static_cast<std::size_t>(f)] > 0.0) {
        ++nonzero_count;
        nonzero = f;
      }
    if (nonzero_count == 1) unit_feature[k] = nonzero;
    max_sat[k] = max_sat_degree(cs.clauses[k], conn);
  }

  SatisfactionState state(m);
  for (std::size_t k = 0; k < m; ++k)
    if (state.accumulated[k] >= max_sat[k] - kEpsSatisfy) {
      state.satisfied[k] = true;
      --state.open;
    }

  Reduct reduct;
  std::vector<bool> selected(static_cast<std::size_t>(nf), false);

  auto apply = [&](int f, int step_index) {
    selected[static_cast<std::size_t>(f)] = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (state.satisfied[k]) continue;
      state.accumulated[k] = conn.tc(state.accumulated[k], cs.clauses[k].memberships[static_cast<std::size_t>(f)]);
      if (state.accumulated[k] >= max_sat[k] - kEpsSatisfy) {
        state.satisfied[k] = true;
        state.satisfied_step[k] = step_index;
        --state.open;
      }
    }
  };

  while (state.open > 0) {
    int unit_index = -1;
    for (std::size_t k = 0; k < m; ++k)
      if (!state.satisfied[k] && unit_feature[k] >= 0) {
        unit_index = static_cast<int>(k);
        break;
      }
    SelectionStep step;
    if (unit_index >= 0) {
      step.feature = unit_feature[static_cast<std::size_t>(unit_index)];
      step.cause = SelectionCause::UnitClause;
      step.pair_i = cs.clauses[static_cast<std::size_t>(unit_index)].i;
      step.pair_j = cs.clauses[static_cast<std::size_t>(unit_index)].j;
    } else {
      std::vector<bool> unsat(m);
      for (std::size_t k = 0; k < m; ++k) unsat[k] = !state.satisfied[k];
      step.cause = SelectionCause::Heuristic;
      step.feature = select_literal(cs.clauses, unsat, selected, nf, &step.count, &step.sum);
    }
    apply(step.feature, static_cast<int>(reduct.steps.size()));
    reduct.steps.push_back(step);
  }

  reduct.clause_satisfied_step = std::move(state.satisfied_step);
  return reduct;
}

// Crisp Johnson reducer over 0/1 clause sets: unit propagation, then the
// feature appearing in the most open clauses (ties to the lowest index).
inline Reduct johnson_reduct(const ClauseSet& cs) {
  internal_check(cs.mode == Mode::Crisp, "johnson_reduct: clause set is not crisp");
  const int nf = static_cast<int>(cs.feature_names.size());
  const std::size_t m = cs.clauses.size();

  std::vector<std::vector<int>> features(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (int f = 0; f < nf; ++f)
      if (cs.clauses[k].memberships[static_cast<std::size_t>(f)] > 0.0) features[k].push_back(f);
    if (features[k].empty()) throw DegenerateError("unsatisfiable: empty clause in crisp clause set");
  }

  Reduct reduct;
  std::vector<bool> satisfied(m, false);
  std::vector<int> satisfied_step(m, -1);
  std::vector<bool> selected(static_cast<std::size_t>(nf), false);
  std::size_t open = m;

  auto apply = [&](int f, int step_index) {
    selected[static_cast<std::size_t>(f)] = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (satisfied[k]) continue;
      if (std::find(features[k].begin(), features[k].end(), f) != features[k].end()) {
        satisfied[k] = true;
        satisfied_step[k] = step_index;
        --open;
      }
    }
  };

  while (open > 0) {
    SelectionStep step;
    int unit_index = -1;
    for (std::size_t k = 0; k < m; ++k)
      if (!satisfied[k] && features[k].size() == 1) {
        unit_index = static_cast<int>(k);
        break;
      }
    if (unit_index >= 0) {
      step.feature = features[static_cast<std::size_t>(unit_index)][0];
      step.cause = SelectionCause::UnitClause;
      step.pair_i = cs.clauses[static_cast<std::size_t>(unit_index)].i;
      step.pair_j = cs.clauses[static_cast<std::size_t>(unit_index)].j;
    } else {
      std::vector<std::int64_t> count(static_cast<std::size_t>(nf), 0);
      for (std::size_t k = 0; k < m; ++k)
        if (!satisfied[k])
          for (int f : features[k]) ++count[static_cast<std::size_t>(f)];
      int best = -1;
      for (int f = 0; f < nf; ++f) {
        if (selected[static_cast<std::size_t>(f)] || count[static_cast<std::size_t>(f)] == 0) continue;
        if (best == -1 || count[static_cast<std::size_t>(f)] > count[static_cast<std::size_t>(best)]) best = f;
      }
      if (best == -1) throw DegenerateError("unsatisfiable residue: no feature covers the remaining clauses");
      step.cause = SelectionCause::Heuristic;
      step.feature = best;
      step.count = count[static_cast<std::size_t>(best)];
      step.sum = static_cast<double>(step.count);
    }
    apply(step.feature, static_cast<int>(reduct.steps.size()));
    reduct.steps.push_back(step);
  }

  reduct.clause_satisfied_step = std::move(satisfied_step);
  return reduct;
}

inline constexpr int kBruteForceFeatureLimit = 20;

// Exhaustive verification oracle: enumerates every feature subset and
// returns the satisfying subsets that are minimal under inclusion.
// Satisfaction is monotone in the subset, so minimality reduces to checking
// single-feature removals.
inline std::vector<std::vector<int>> brute_force_reducts(const ClauseSet& cs, const Connectives& conn = {}) {
  const int nf = static_cast<int>(cs.feature_names.size());
  if (nf > kBruteForceFeatureLimit)
    throw InputError("brute_force_reducts: refusing " + std::to_string(nf) + " features (limit " +
                     std::to_string(kBruteForceFeatureLimit) + "; subset enumeration is exponential)");

  const std::size_t m = cs.clauses.size();
  std::vector<double> max_sat(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) max_sat[k] = max_sat_degree(cs.clauses[k], conn);

  auto satisfies = [&](std::uint32_t mask) {
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.0;
      const auto& ms = cs.clauses[k].memberships;
      for (int f = 0; f < nf; ++f)
        if (mask & (1u << f)) acc = conn.tc(acc, ms[static_cast<std::size_t>(f)]);
      if (acc < max_sat[k] - kEpsSatisfy) return false;
    }
    return true;
  };

  const std::uint32_t total = 1u << nf;
  std::vector<bool> sat(total, false);
  for (std::uint32_t mask = 0; mask < total; ++mask) sat[mask] = satisfies(mask);

  std::vector<std::vector<int>> minimal;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (!sat[mask]) continue;
    bool is_minimal = true;
    for (int f = 0; f < nf && is_minimal; ++f)
      if ((mask & (1u << f)) && sat[mask & ~(1u << f)]) is_minimal = false;
    if (!is_minimal) continue;
    std::vector<int> subset;
    for (int f = 0; f < nf; ++f)
      if (mask & (1u << f)) subset.push_back(f);
    minimal.push_back(std::move(subset));
  }
  std::sort(minimal.begin(), minimal.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return minimal;
}

}  // namespace frdm
