#include <algorithm>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "frdm/frdm.hpp"
#include "support/golden_data.hpp"
#include "support/oracles.hpp"
#include "support/random_systems.hpp"

using namespace frdm;

namespace {

ClauseSet clause_set_for(const DecisionSystem& ds, Mode mode, bool simplify = true) {
  GenerationConfig cfg;
  cfg.mode = mode;
  cfg.simplify = simplify;
  return generate_clause_set(ds, cfg);
}

std::vector<int> sorted_features(const Reduct& r) {
  std::vector<int> out = r.features();
  std::sort(out.begin(), out.end());
  return out;
}

// Replays a trace against the clause set, recomputing accumulation from raw
// memberships. Returns false if any recorded step or satisfaction point
// disagrees with the replay.
bool trace_is_faithful(const ClauseSet& cs, const Reduct& r, const Connectives& conn) {
  std::vector<double> acc(cs.clauses.size(), 0.0);
  std::vector<int> sat_step(cs.clauses.size(), -1);
  std::vector<bool> satisfied(cs.clauses.size(), false);
  for (std::size_t k = 0; k < cs.clauses.size(); ++k) {
    double max_sat = oracle::fold_tconorm(cs.clauses[k].memberships, conn);
    if (0.0 >= max_sat - 1e-9) satisfied[k] = true;
  }
  for (std::size_t s = 0; s < r.steps.size(); ++s) {
    int f = r.steps[s].feature;
    for (std::size_t k = 0; k < cs.clauses.size(); ++k) {
      if (satisfied[k]) continue;
      double next = conn.tc(acc[k], cs.clauses[k].memberships[static_cast<std::size_t>(f)]);
      CHECK(next >= acc[k]);  // accumulation is monotone
      acc[k] = next;
      double max_sat = oracle::fold_tconorm(cs.clauses[k].memberships, conn);
      if (acc[k] >= max_sat - 1e-9) {
        satisfied[k] = true;
        sat_step[k] = static_cast<int>(s);
      }
    }
  }
  return std::all_of(satisfied.begin(), satisfied.end(), [](bool b) { return b; }) &&
         sat_step == r.clause_satisfied_step;
}

}  // namespace

TEST_CASE("crisp reducer on the nominal demo") {
  DecisionSystem ds = load_csv_text(golden::kNominalDemoCsv);
  ClauseSet cs = clause_set_for(ds, Mode::Crisp);
  Reduct r = johnson_reduct(cs);
  // (d) is a unit clause; then b beats c on the index tie-break.
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].feature == 3);
  CHECK(r.steps[0].cause == SelectionCause::UnitClause);
  CHECK(r.steps[1].feature == 1);
  CHECK(r.steps[1].cause == SelectionCause::Heuristic);
  CHECK(sorted_features(r) == std::vector<int>{1, 3});

  // The reduct also satisfies the unsimplified clause set.
  ClauseSet raw = clause_set_for(ds, Mode::Crisp, false);
  for (const auto& clause : raw.clauses) CHECK(oracle::clause_satisfied(clause, r.features(), Connectives{}));
}

TEST_CASE("crisp reducer edge cases") {
  ClauseSet empty;
  empty.mode = Mode::Crisp;
  empty.feature_names = {"a", "b"};
  Reduct r = johnson_reduct(empty);
  CHECK(r.steps.empty());
  CHECK(r.clause_satisfied_step.empty());

  ClauseSet bad = empty;
  bad.clauses.push_back(make_fuzzy_clause(0, 1, {0.0, 0.0}, 1.0, Connectives{}));
  CHECK_THROWS_AS(johnson_reduct(bad), DegenerateError);

  ClauseSet fuzzy;
  fuzzy.mode = Mode::FuzzyProposed;
  CHECK_THROWS_AS(johnson_reduct(fuzzy), InternalError);
  CHECK_THROWS_AS(fuzzy_johnson_reduct(empty), InternalError);
}

TEST_CASE("fuzzy reducer on the crisp-decision clause list") {
  DecisionSystem ds = load_csv_text(golden::kRealDemoCsv);
  ClauseSet cs = clause_set_for(ds, Mode::FuzzyBaseline);
  Reduct r = fuzzy_johnson_reduct(cs);
  CHECK(r.features() == golden::baseline_selection());  // b from the unit clause, then c over a
  CHECK(r.steps[0].cause == SelectionCause::UnitClause);
  CHECK(r.steps[0].pair_i == 2);
  CHECK(r.steps[0].pair_j == 5);
  CHECK(r.steps[1].cause == SelectionCause::Heuristic);
  CHECK(trace_is_faithful(cs, r, Connectives{}));

  ClauseSet raw = clause_set_for(ds, Mode::FuzzyBaseline, false);
  for (const auto& clause : raw.clauses) CHECK(oracle::clause_satisfied(clause, r.features(), Connectives{}));
}

TEST_CASE("fuzzy reducer on the label-aware clause list") {
  DecisionSystem ds = load_csv_text(golden::kRealDemoCsv);
  ClauseSet cs = clause_set_for(ds, Mode::FuzzyProposed);
  Reduct r = fuzzy_johnson_reduct(cs);
  CHECK(sorted_features(r) == golden::proposed_selection_set());
  // Both survivors are unit clauses, propagated in ascending pair order.
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].cause == SelectionCause::UnitClause);
  CHECK(r.steps[1].cause == SelectionCause::UnitClause);
  CHECK(r.steps[0].feature == 0);
  CHECK(r.steps[1].feature == 1);
  CHECK(trace_is_faithful(cs, r, Connectives{}));
  CHECK(oracle::subset_satisfies(cs, r.features(), Connectives{}));

  // Subsumption keeps the pointwise-smaller clause, whose own maximum can be
  // lower, so a selection from the simplified list need not reach every raw
  // clause's maximum: (2,3) = (0.33, 0, 1) has max 1.0 but {a, b} only reach
  // 0.33. Reducing the raw list itself satisfies it, at the price of a wider
  // selection.
  ClauseSet raw = clause_set_for(ds, Mode::FuzzyProposed, false);
  FuzzyClause pinched = fuzzy_clause(ds, 2, 3, Mode::FuzzyProposed);
  CHECK_FALSE(oracle::clause_satisfied(pinched, r.features(), Connectives{}));
  Reduct raw_reduct = fuzzy_johnson_reduct(raw);
  CHECK(oracle::subset_satisfies(raw, raw_reduct.features(), Connectives{}));
}

TEST_CASE("heuristic literal choice") {
  Connectives conn;

  SECTION("membership mass breaks covering ties") {
    // One open clause: a at 0.67, c at 1.0, b already selected.
    std::vector<FuzzyClause> clauses = {make_fuzzy_clause(1, 2, {0.67, 0.57, 1.0}, 1.0, conn)};
    std::vector<bool> unsat = {true};
    std::vector<bool> selected = {false, true, false};
    std::int64_t count = 0;
    double sum = 0.0;
    CHECK(select_literal(clauses, unsat, selected, 3, &count, &sum) == 2);
    CHECK(count == 1);
    CHECK(sum == 1.0);
  }

  SECTION("coverage dominates mass") {
    std::vector<FuzzyClause> clauses = {make_fuzzy_clause(0, 1, {1.0, 0.0}, 1.0, conn),
                                        make_fuzzy_clause(0, 2, {1.0, 0.5}, 1.0, conn)};
    std::vector<bool> unsat = {true, true};
    std::vector<bool> selected = {false, false};
    CHECK(select_literal(clauses, unsat, selected, 2) == 0);
  }

  SECTION("lowest index wins full ties") {
    std::vector<FuzzyClause> clauses = {make_fuzzy_clause(0, 1, {0.5, 0.5}, 1.0, conn)};
    std::vector<bool> unsat = {true};
    std::vector<bool> selected = {false, false};
    CHECK(select_literal(clauses, unsat, selected, 2) == 0);
  }

  SECTION("no coverable clause is a degenerate residue") {
    std::vector<FuzzyClause> clauses = {make_fuzzy_clause(0, 1, {0.0, 0.0}, 1.0, conn)};
    std::vector<bool> unsat = {true};
    std::vector<bool> selected = {false, false};
    CHECK_THROWS_AS(select_literal(clauses, unsat, selected, 2), DegenerateError);
  }
}

TEST_CASE("clause satisfaction thresholds at the clause's own maximum") {
  Connectives conn;
  FuzzyClause weak = make_fuzzy_clause(0, 3, {0.33, 0.0, 0.0}, 1.0, conn);
  CHECK(is_satisfied(weak, {0}, conn));       // 0.33 reaches the 0.33 maximum
  CHECK_FALSE(is_satisfied(weak, {1}, conn));
  CHECK_FALSE(is_satisfied(weak, {}, conn));

  FuzzyClause pair = make_fuzzy_clause(0, 1, {0.4, 0.3, 0.0}, 1.0, conn);
  // Lukasiewicz fold of all memberships is 0.7; either feature alone falls short.
  CHECK_FALSE(is_satisfied(pair, {0}, conn));
  CHECK(is_satisfied(pair, {0, 1}, conn));
}

TEST_CASE("vacuous clause counts as satisfied before any selection") {
  Connectives conn;
  ClauseSet cs;
  cs.mode = Mode::FuzzyProposed;
  cs.feature_names = {"a", "b"};
  cs.clauses.push_back(make_fuzzy_clause(0, 1, {0.0, 0.0}, 1.0, conn));
  cs.clauses.push_back(make_fuzzy_clause(0, 2, {0.5, 0.0}, 1.0, conn));
  Reduct r = fuzzy_johnson_reduct(cs, conn);
  REQUIRE(r.clause_satisfied_step.size() == 2);
  CHECK(r.clause_satisfied_step[0] == -1);  // never blocked the solver
  CHECK(r.clause_satisfied_step[1] == 0);
  CHECK(r.features() == std::vector<int>{0});
}

TEST_CASE("reduction is deterministic") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    DecisionSystem ds = testgen::random_system(rng);
    ClauseSet cs = clause_set_for(ds, Mode::FuzzyProposed);
    Reduct a = fuzzy_johnson_reduct(cs);
    Reduct b = fuzzy_johnson_reduct(cs);
    CHECK(a.features() == b.features());
    CHECK(a.clause_satisfied_step == b.clause_satisfied_step);
    for (std::size_t s = 0; s < a.steps.size(); ++s) {
      CHECK(a.steps[s].cause == b.steps[s].cause);
      CHECK(a.steps[s].count == b.steps[s].count);
      CHECK(a.steps[s].sum == b.steps[s].sum);
    }
  }
}

TEST_CASE("unit clauses take priority whenever one is open") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    DecisionSystem ds = testgen::random_system(rng);
    ClauseSet cs = clause_set_for(ds, Mode::FuzzyProposed);
    Connectives conn;
    Reduct r = fuzzy_johnson_reduct(cs, conn);

    // Replay: before each step, if some open clause has exactly one nonzero
    // membership, the step must be a unit propagation.
    std::vector<double> acc(cs.clauses.size(), 0.0);
    std::vector<bool> satisfied(cs.clauses.size(), false);
    for (std::size_t k = 0; k < cs.clauses.size(); ++k)
      if (oracle::fold_tconorm(cs.clauses[k].memberships, conn) <= 1e-9) satisfied[k] = true;
    for (const auto& step : r.steps) {
      bool unit_open = false;
      for (std::size_t k = 0; k < cs.clauses.size() && !unit_open; ++k) {
        if (satisfied[k]) continue;
        int nonzero = 0;
        for (double m : cs.clauses[k].memberships)
          if (m > 0.0) ++nonzero;
        unit_open = nonzero == 1;
      }
      if (unit_open) CHECK(step.cause == SelectionCause::UnitClause);
      for (std::size_t k = 0; k < cs.clauses.size(); ++k) {
        if (satisfied[k]) continue;
        acc[k] = conn.tc(acc[k], cs.clauses[k].memberships[static_cast<std::size_t>(step.feature)]);
        if (acc[k] >= oracle::fold_tconorm(cs.clauses[k].memberships, conn) - 1e-9) satisfied[k] = true;
      }
    }
  }
}

TEST_CASE("exhaustive oracle on the nominal demo") {
  DecisionSystem ds = load_csv_text(golden::kNominalDemoCsv);
  ClauseSet cs = clause_set_for(ds, Mode::Crisp, false);
  CHECK(brute_force_reducts(cs) == golden::crisp_minimal_reducts());
}

TEST_CASE("exhaustive oracle on the label-aware demo set") {
  DecisionSystem ds = load_csv_text(golden::kRealDemoCsv);
  ClauseSet cs = clause_set_for(ds, Mode::FuzzyProposed);
  auto family = brute_force_reducts(cs);
  CHECK(std::find(family.begin(), family.end(), golden::proposed_selection_set()) != family.end());
}

TEST_CASE("exhaustive oracle edge cases") {
  ClauseSet empty;
  empty.feature_names = {"a", "b"};
  auto family = brute_force_reducts(empty);
  REQUIRE(family.size() == 1);
  CHECK(family[0].empty());  // the empty set satisfies vacuously

  ClauseSet wide;
  wide.feature_names.assign(21, "f");
  CHECK_THROWS_AS(brute_force_reducts(wide), InputError);
}

TEST_CASE("greedy reducts satisfy everything and respect the exhaustive minimum") {
  std::mt19937_64 rng(987654321);
  Connectives conn;
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    DecisionSystem ds = testgen::random_system(rng);
    for (Mode mode : {Mode::Crisp, Mode::FuzzyBaseline, Mode::FuzzyProposed}) {
      for (bool simplify : {true, false}) {
        ClauseSet cs = clause_set_for(ds, mode, simplify);
        Reduct r = mode == Mode::Crisp ? johnson_reduct(cs) : fuzzy_johnson_reduct(cs, conn);
        CHECK(oracle::subset_satisfies(cs, r.features(), conn));
        int minimum = oracle::minimum_satisfying_size(cs, conn);
        CHECK(static_cast<int>(r.steps.size()) >= minimum);
        if (!cs.clauses.empty()) ++nontrivial;
      }
    }
  }
  CHECK(nontrivial > 60);  // the generator must actually exercise the solvers
}
