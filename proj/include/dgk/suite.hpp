#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dgk/evidence.hpp"
#include "dgk/genlab.hpp"

namespace dgk {

// One verification routine run on one instance. The sub-checks of the
// routine are counted; only the first failing one is reported in full.
struct CheckOutcome {
  std::string name;
  std::string instance;
  bool passed = true;
  std::size_t subchecks = 0;
  std::string failed_check;
  std::string detail;
  json counterexample;
  double seconds = 0;
};

CheckOutcome outcome_from_evidence(std::string name, std::string instance, const Evidence& ev, double seconds);

// Machine-readable result of a CLI command. Everything except the "timing"
// member is a deterministic function of the inputs.
struct Report {
  std::string command;
  json instance_refs = json::array();
  json echo = json::object();       // seed, profile, field, options
  json artifacts = json::object();  // matrices and dimensions worth keeping
  std::vector<CheckOutcome> checks;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  int exit_code() const { return ok() ? 0 : 1; }
  json to_json(bool include_timing = true) const;
  std::string summary() const;
};

// Writes to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& text);

struct SuiteOptions {
  std::size_t samples = 20;          // coboundary perturbations per instance
  std::size_t morphism_pairs = 60;
  std::optional<int> depth;          // derived resolution depth; default width(τN) + 2
  unsigned jobs = 0;                 // 0: one worker per hardware thread
  std::optional<std::size_t> inject_failure;  // corrupt this instance's left factor
};

json options_to_json(const SuiteOptions& o);

// Corpus from the profile, the plain and derived suites, functoriality on morphism
// pairs, and the fixed oracles. Throws StructuralError for an invalid profile.
Report run_suite(const CorpusProfile& profile, const SuiteOptions& options = {});

// Document-level commands; every document names its field.
Report validate_document(const json& doc, const std::string& ref);
Report kunneth_report(const json& m_doc, const json& n_doc, const std::vector<std::string>& refs,
                      const SuiteOptions& options = {});
Report derived_report(const json& m_doc, const json& n_doc, const std::vector<std::string>& refs,
                      const SuiteOptions& options = {});

json corpus_to_json(const CorpusProfile& profile);

// Repeatedly zeroes single matrix entries of m while `still_fails` holds.
template <class F, class Pred>
DGModule<F> shrink_module(DGModule<F> m, Pred still_fails) {
  const F& f = m.field();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto* family : {&m.differentials, &m.actions})
      for (auto& mat : *family)
        for (std::size_t r = 0; r < mat.rows(); ++r)
          for (std::size_t c = 0; c < mat.cols(); ++c) {
            if (f.is_zero(mat(r, c))) continue;
            auto saved = mat(r, c);
            mat(r, c) = f.zero();
            if (still_fails(m))
              changed = true;
            else
              mat(r, c) = saved;
          }
  }
  return m;
}

// A = 𝕂[t]/(t²), M = N = 𝕂: the periodic resolution, dim H^0 = 1 and the
// negative control dim H^{-1}(P ⊗ N) = 1.
template <class F>
Evidence dual_numbers_oracle(const F& f);

}  // namespace dgk
