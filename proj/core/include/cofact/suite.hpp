#pragma once

#include <string>
#include <vector>

#include "cofact/corpus.hpp"

namespace cofact {

// One named property verified over many corpus instances.
struct SuiteCheck {
  std::string name;
  long checked = 0;
  long failed = 0;
  std::vector<std::string> notes;  // first few counterexample loci

  bool pass() const { return checked > 0 && failed == 0; }
};

struct SuiteResult {
  std::string suite;
  CorpusOptions options;
  std::vector<SuiteCheck> checks;

  bool all_pass() const;
  const SuiteCheck* find(const std::string& name) const;
};

// Runnable suites in deterministic order; "theorems" runs every section.
std::vector<std::string> suite_names();

// Runs the named suite over the deterministic corpus derived from the
// options. Pure given its arguments: reports are reproducible byte-for-byte
// once serialised. Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& suite, const CorpusOptions& opt);

}  // namespace cofact
