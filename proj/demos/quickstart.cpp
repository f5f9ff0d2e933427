// Minimal library walkthrough: load a dataset, build fuzzy clauses, reduce,
// and print the selection for each mode.

#include <iostream>

#include <frdm/frdm.hpp>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: quickstart <dataset.csv>\n";
    return 1;
  }

  try {
    frdm::DecisionSystem ds = frdm::load_csv(argv[1]);
    std::cout << "dataset: " << ds.object_count() << " objects, " << ds.feature_count() << " features, "
              << ds.label_count() << " labels\n\n";

    for (frdm::Mode mode : {frdm::Mode::Crisp, frdm::Mode::FuzzyBaseline, frdm::Mode::FuzzyProposed}) {
      frdm::RunConfig cfg;
      cfg.generation.mode = mode;
      cfg.eval = true;
      frdm::SelectionReport report = frdm::run_select(ds, cfg);
      std::cout << frdm::to_text(report) << "\n";
    }
  } catch (const frdm::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
