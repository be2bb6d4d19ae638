#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dgk/error.hpp"
#include "dgk/suite.hpp"

namespace {

constexpr int kStructuralExit = 2;

dgk::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dgk::StructuralError(path + ": cannot open");
  try {
    return dgk::json::parse(in);
  } catch (const dgk::json::parse_error& e) {
    throw dgk::StructuralError(path + ": " + e.what());
  }
}

void emit(const dgk::Report& rep, const std::string& out) {
  std::cout << rep.summary();
  if (!out.empty()) dgk::write_atomically(out, rep.to_json().dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the top-degree Kunneth isomorphism for DG modules"};
  app.require_subcommand(1);

  std::string field_text, profile_path, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
  std::optional<std::size_t> instances, inject;
  dgk::SuiteOptions options;

  auto add_out = [&](CLI::App* c) { c->add_option("--out", out, "write the JSON report here"); };
  auto add_corpus = [&](CLI::App* c) {
    c->add_option("--profile", profile_path, "corpus profile (JSON)");
    c->add_option("--field", field_text, "field: Q or F<p>")->envname("KUNNETH_FIELD");
    c->add_option("--seed", seed, "corpus seed");
    c->add_option("--instances", instances, "number of corpus instances");
  };

  std::string path, m_path, n_path;
  auto* validate = app.add_subcommand("validate", "check the axioms of an algebra, module or morphism file");
  validate->add_option("file", path)->required();
  add_out(validate);

  auto* kunneth = app.add_subcommand("kunneth", "theta for a right module M and a left module N");
  kunneth->add_option("m", m_path)->required();
  kunneth->add_option("n", n_path)->required();
  kunneth->add_option("--samples", options.samples, "coboundary perturbations");
  add_out(kunneth);

  auto* derived = app.add_subcommand("derived", "theta^der through a semi-free resolution of M");
  derived->add_option("m", m_path)->required();
  derived->add_option("n", n_path)->required();
  derived->add_option("--depth", depth, "resolution depth (default width of truncated N + 2)");
  add_out(derived);

  auto* suite = app.add_subcommand("suite", "generate a corpus and run every check on it");
  add_corpus(suite);
  suite->add_option("--depth", depth, "resolution depth override");
  suite->add_option("--samples", options.samples, "coboundary perturbations per instance");
  suite->add_option("--pairs", options.morphism_pairs, "morphism pairs for the functoriality checks");
  suite->add_option("--jobs", options.jobs, "worker threads (0: all cores)");
  suite->add_option("--inject-fail", inject, "corrupt this instance to exercise failure reporting");
  add_out(suite);

  auto* gen = app.add_subcommand("gen", "write a generated corpus in the instance format");
  add_corpus(gen);
  add_out(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kStructuralExit;
  }

  auto load_profile = [&] {
    auto p = profile_path.empty() ? dgk::default_profile() : dgk::profile_from_json(read_json(profile_path));
    if (!field_text.empty()) p.field = dgk::parse_field_spec(field_text);
    if (seed) p.seed = *seed;
    if (instances) p.instance_count = *instances;
    return p;
  };

  try {
    options.depth = depth;
    options.inject_failure = inject;
    dgk::Report rep;
    if (*validate) {
      rep = dgk::validate_document(read_json(path), path);
    } else if (*kunneth) {
      rep = dgk::kunneth_report(read_json(m_path), read_json(n_path), {m_path, n_path}, options);
    } else if (*derived) {
      rep = dgk::derived_report(read_json(m_path), read_json(n_path), {m_path, n_path}, options);
    } else if (*suite) {
      rep = dgk::run_suite(load_profile(), options);
    } else {
      const auto corpus = dgk::corpus_to_json(load_profile());
      if (out.empty())
        std::cout << corpus.dump(2) << "\n";
      else
        dgk::write_atomically(out, corpus.dump(2) + "\n");
      std::cerr << "gen: " << corpus.at("instances").size() << " instances\n";
      return 0;
    }
    emit(rep, out);
    return rep.exit_code();
  } catch (const dgk::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const dgk::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
  } catch (const dgk::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kStructuralExit;
}
