#include "dgk/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "dgk/kunneth.hpp"
#include "dgk/resolve.hpp"
#include "dgk/serialize.hpp"

namespace dgk {

CheckOutcome outcome_from_evidence(std::string name, std::string instance, const Evidence& ev, double seconds) {
  CheckOutcome out{std::move(name), std::move(instance), ev.ok(), ev.checks().size(), {}, {}, nullptr, seconds};
  if (const Check* c = ev.first_failure()) {
    out.failed_check = c->name;
    out.detail = c->detail;
    out.counterexample = c->counterexample;
  }
  return out;
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

json Report::to_json(bool include_timing) const {
  json list = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name}, {"instance", c.instance}, {"status", c.passed ? "pass" : "fail"},
              {"subchecks", c.subchecks}};
    if (!c.passed) {
      j["failed_check"] = c.failed_check;
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (!c.counterexample.is_null()) j["counterexample"] = c.counterexample;
    }
    list.push_back(std::move(j));
  }
  json out = {{"command", command},
              {"instance_refs", instance_refs},
              {"checks", list},
              {"echo", echo},
              {"artifacts", artifacts},
              {"summary", {{"checks", checks.size()}, {"failures", failures()}, {"status", ok() ? "pass" : "fail"}}}};
  if (include_timing) {
    json per = json::array();
    double total = 0;
    for (const auto& c : checks) {
      per.push_back({{"name", c.name}, {"instance", c.instance}, {"seconds", c.seconds}});
      total += c.seconds;
    }
    out["timing"] = {{"checks", per}, {"total_seconds", total}};
  }
  return out;
}

std::string Report::summary() const {
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_name;  // passed, total
  for (const auto& c : checks) {
    auto& [passed, total] = by_name[c.name];
    passed += c.passed;
    ++total;
  }
  std::ostringstream os;
  os << command << ": " << checks.size() - failures() << "/" << checks.size() << " checks passed\n";
  for (const auto& [name, counts] : by_name)
    os << "  " << (counts.first == counts.second ? "ok  " : "FAIL") << " " << name << "  " << counts.first << "/"
       << counts.second << "\n";
  std::size_t shown = 0;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (++shown > 10) {
      os << "  ... " << failures() - 10 << " more failures\n";
      break;
    }
    os << "  failure: " << c.name << " on " << c.instance << ": " << c.failed_check;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StructuralError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw StructuralError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json options_to_json(const SuiteOptions& o) {
  json j = {{"samples", o.samples}, {"morphism_pairs", o.morphism_pairs}};
  j["depth"] = o.depth ? json(*o.depth) : json(nullptr);
  j["inject_failure"] = o.inject_failure ? json(*o.inject_failure) : json(nullptr);
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs one verification routine, turning resource and generation errors
// into a failed outcome so a single instance cannot abort a sweep.
CheckOutcome timed(const std::string& name, const std::string& instance, const std::function<Evidence()>& body) {
  const auto t0 = Clock::now();
  Evidence ev;
  try {
    ev = body();
  } catch (const ResourceError& e) {
    ev.fail("resource cap", e.what());
  } catch (const GenerationError& e) {
    ev.fail("generation", e.what());
  } catch (const StructuralError& e) {
    ev.fail("structure", e.what());
  } catch (const std::exception& e) {
    ev.fail("internal error", e.what());
  }
  return outcome_from_evidence(name, instance, ev, std::chrono::duration<double>(Clock::now() - t0).count());
}

template <class F>
Evidence validation_evidence(const std::string& what, const ValidationReport& r, const std::function<json()>& bundle) {
  Evidence ev;
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"axiom", v.axiom}, {"where", v.where}});
  if (r.ok())
    ev.pass(what + " valid");
  else
    ev.fail(what + " valid", r.summary(), {{"violations", violations}, {"object", bundle()}});
  return ev;
}

template <class F>
std::size_t nonzero_entries(const DGModule<F>& m) {
  std::size_t n = 0;
  for (const auto* family : {&m.differentials, &m.actions})
    for (const auto& mat : *family)
      for (std::size_t r = 0; r < mat.rows(); ++r)
        for (std::size_t c = 0; c < mat.cols(); ++c) n += !m.field().is_zero(mat(r, c));
  return n;
}

// Doubles the degree-0 action in the top nonzero degree, which breaks the
// unit axiom whatever else the module looks like.
template <class F>
bool corrupt(DGModule<F>& m) {
  const F& f = m.field();
  for (int i = m.hi; i >= m.lo; --i) {
    if (m.dim(i) == 0 || m.algebra->dim(0) == 0) continue;
    m.action(i, 0).scale(f.add(f.one(), f.one()));
    return true;
  }
  return false;
}

template <class F>
Evidence module_validity(const DGModule<F>& m, const DGModule<F>& n) {
  Evidence ev;
  for (const auto* x : {&m, &n}) {
    const std::string what = x == &m ? "left factor" : "right factor";
    auto r = validate_module(*x);
    if (r.ok()) {
      ev.pass(what + " valid");
      continue;
    }
    // Keep the axiom that failed first, so shrinking cannot trade it for a
    // cheaper violation.
    const std::string axiom = r.violations.front().axiom;
    const auto fails = [&](const DGModule<F>& y) {
      for (const auto& v : validate_module(y).violations)
        if (v.axiom == axiom) return true;
      return false;
    };
    auto shrunk = shrink_module(*x, fails);
    json violations = json::array();
    for (const auto& v : validate_module(shrunk).violations) violations.push_back({{"axiom", v.axiom}, {"where", v.where}});
    ev.fail(what + " valid", r.summary(),
            {{"side", what},
             {"module", to_json(*x)},
             {"shrunk_module", to_json(shrunk)},
             {"shrunk_violations", violations},
             {"nonzero_entries", nonzero_entries(*x)},
             {"shrunk_nonzero_entries", nonzero_entries(shrunk)}});
  }
  return ev;
}

template <class F>
std::vector<CheckOutcome> instance_checks(const F& f, const CorpusProfile& profile, const SuiteOptions& options,
                                          std::size_t k, const std::string& ref) {
  std::vector<CheckOutcome> out;
  Instance<F> inst;
  auto gen = timed("instance.generate", ref, [&] {
    inst = generate_instance(f, profile, k);
    if (options.inject_failure && *options.inject_failure == k && !corrupt(inst.m) && !corrupt(inst.n))
      throw GenerationError("fail injection needs a nonzero module");
    Evidence ev;
    ev.pass("generated");
    return ev;
  });
  out.push_back(gen);
  if (!gen.passed) return out;
  out.push_back(timed("instance.valid", ref, [&] { return module_validity(inst.m, inst.n); }));
  if (!out.back().passed) return out;

  const auto& m = inst.m;
  const auto& n = inst.n;
  DerivedOptions dopt;
  dopt.depth = options.depth;
  out.push_back(timed("kunneth.theta", ref, [&] { return theta(m, n).evidence; }));
  out.push_back(timed("kunneth.degree0_iso", ref, [&] { return degree0_iso_check(shift(m, m.hi), shift(n, n.hi)).evidence; }));
  out.push_back(timed("kunneth.exact_sequences", ref, [&] { return check_exact_sequences(m, n); }));
  out.push_back(timed("kunneth.representative_independence", ref, [&] {
    return check_representative_independence(theta(m, n), options.samples, derive_seed(profile.seed, k, 101));
  }));
  out.push_back(timed("kunneth.translation", ref, [&] { return check_translation_agreement(m, n); }));
  out.push_back(timed("derived.theta_der", ref, [&] { return theta_der(m, n, dopt).evidence; }));
  out.push_back(timed("derived.square", ref, [&] { return check_derived_square(m, n, dopt); }));
  out.push_back(timed("derived.depth_stabilization", ref, [&] {
    std::vector<int> depths;
    if (options.depth) depths = {*options.depth, *options.depth + 1, *options.depth + 2};
    return check_depth_stabilization(m, n, depths, dopt);
  }));
  out.push_back(timed("derived.resolution_independence", ref, [&] {
    return check_resolution_independence(m, n, derive_seed(profile.seed, k, 102), derive_seed(profile.seed, k, 103),
                                         dopt);
  }));
  return out;
}

template <class F>
std::vector<CheckOutcome> pair_checks(const F& f, const CorpusProfile& profile, const SuiteOptions& options,
                                      std::size_t k, const std::string& ref) {
  std::vector<CheckOutcome> out;
  MorphismPair<F> pair;
  auto gen = timed("pair.generate", ref, [&] {
    pair = generate_morphism_pair(f, profile, k);
    Evidence ev;
    ev.pass("generated");
    return ev;
  });
  out.push_back(gen);
  if (!gen.passed) return out;
  DerivedOptions dopt;
  dopt.depth = options.depth;
  out.push_back(timed("functoriality.theta", ref, [&] { return check_functoriality(pair.f, pair.g); }));
  out.push_back(timed("functoriality.theta_der", ref, [&] { return check_theta_der_functoriality(pair.f, pair.g, dopt); }));
  return out;
}

template <class F>
Evidence noninjectivity_evidence(const F& f) {
  auto w = noninjectivity_witness(f);
  Evidence ev = w.evidence;
  ev.record("source dimension 2", w.source_dim == 2, std::to_string(w.source_dim));
  ev.record("target dimension 1", w.target_dim == 1, std::to_string(w.target_dim));
  return ev;
}

// Work items are independent; results land in their own slots and are
// assembled in index order afterwards.
template <class Job>
std::vector<std::vector<CheckOutcome>> run_parallel(std::size_t count, unsigned jobs, const Job& job) {
  std::vector<std::vector<CheckOutcome>> results(count);
  unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) results[k] = job(k);
  };
  if (workers <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

template <class F>
Report run_suite_in(const F& f, const CorpusProfile& profile, const SuiteOptions& options) {
  Report rep;
  rep.command = "suite";
  rep.echo = {{"seed", profile.seed}, {"profile", profile_to_json(profile)}, {"options", options_to_json(options)}};
  const std::string tag = to_string(profile.field);

  auto inst = run_parallel(profile.instance_count, options.jobs, [&](std::size_t k) {
    return instance_checks(f, profile, options, k, tag + "/instance/" + std::to_string(k));
  });
  auto pairs = run_parallel(options.morphism_pairs, options.jobs, [&](std::size_t k) {
    return pair_checks(f, profile, options, k, tag + "/pair/" + std::to_string(k));
  });

  for (std::size_t k = 0; k < inst.size(); ++k) {
    rep.instance_refs.push_back(tag + "/instance/" + std::to_string(k));
    for (auto& c : inst[k]) rep.checks.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    rep.instance_refs.push_back(tag + "/pair/" + std::to_string(k));
    for (auto& c : pairs[k]) rep.checks.push_back(std::move(c));
  }
  rep.checks.push_back(timed("oracle.noninjectivity", tag + "/oracle", [&] { return noninjectivity_evidence(f); }));
  rep.checks.push_back(timed("oracle.dual_numbers", tag + "/oracle", [&] { return dual_numbers_oracle(f); }));
  return rep;
}

template <class F>
std::pair<DGModule<F>, DGModule<F>> load_pair(const F& f, const json& m_doc, const json& n_doc) {
  auto m = module_from_json(f, m_doc);
  auto n = module_from_json(f, n_doc);
  if (m.side != Side::Right) throw StructuralError("the left factor must be a right DG module");
  if (n.side != Side::Left) throw StructuralError("the right factor must be a left DG module");
  if (!(*m.algebra == *n.algebra)) throw StructuralError("the two modules are over different DG algebras");
  n.algebra = m.algebra;
  return {std::move(m), std::move(n)};
}

FieldSpec common_field(const json& a, const json& b) {
  auto fa = peek_field(a), fb = peek_field(b);
  if (!(fa == fb)) throw StructuralError("field mismatch: " + to_string(fa) + " vs " + to_string(fb));
  return fa;
}

}  // namespace

Report run_suite(const CorpusProfile& profile, const SuiteOptions& options) {
  profile.check();
  if (profile.instance_count == 0) throw StructuralError("profile: instance_count must be positive");
  return with_field(profile.field, [&](const auto& f) { return run_suite_in(f, profile, options); });
}

Report validate_document(const json& doc, const std::string& ref) {
  Report rep;
  rep.command = "validate";
  rep.instance_refs.push_back(ref);
  const FieldSpec spec = peek_field(doc);
  rep.echo = {{"field", field_to_json(spec)}};
  if (!doc.contains("type") || !doc.at("type").is_string()) throw StructuralError("document: missing 'type'");
  const std::string type = doc.at("type").get<std::string>();
  with_field(spec, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    if (type == "dg_algebra") {
      auto a = algebra_from_json(f, doc);
      rep.checks.push_back(timed("validate.algebra", ref, [&] {
        return validation_evidence<F>("algebra", validate_algebra(a), [&] { return to_json(a); });
      }));
    } else if (type == "dg_module") {
      auto m = module_from_json(f, doc);
      rep.checks.push_back(timed("validate.algebra", ref, [&] {
        return validation_evidence<F>("algebra", validate_algebra(*m.algebra), [&] { return to_json(*m.algebra); });
      }));
      rep.checks.push_back(timed("validate.module", ref, [&] {
        return validation_evidence<F>("module", validate_module(m), [&] { return to_json(m); });
      }));
    } else if (type == "strict_morphism") {
      auto g = morphism_from_json(f, doc);
      for (const auto* x : {&g.source, &g.target})
        rep.checks.push_back(timed(x == &g.source ? "validate.source" : "validate.target", ref, [&] {
          return validation_evidence<F>("module", validate_module(*x), [&] { return to_json(*x); });
        }));
      rep.checks.push_back(timed("validate.morphism", ref, [&] {
        return validation_evidence<F>("morphism", validate_morphism(g), [&] { return to_json(g); });
      }));
    } else {
      throw StructuralError("document: cannot validate type '" + type + "'");
    }
    return 0;
  });
  return rep;
}

Report kunneth_report(const json& m_doc, const json& n_doc, const std::vector<std::string>& refs,
                      const SuiteOptions& options) {
  Report rep;
  rep.command = "kunneth";
  for (const auto& r : refs) rep.instance_refs.push_back(r);
  const FieldSpec spec = common_field(m_doc, n_doc);
  rep.echo = {{"field", field_to_json(spec)}, {"options", options_to_json(options)}};
  with_field(spec, [&](const auto& f) {
    auto [m, n] = load_pair(f, m_doc, n_doc);
    for (auto& c : module_validity(m, n).checks())
      if (!c.passed) throw StructuralError(c.name + ": " + c.detail);
    const std::string ref = refs.empty() ? "input" : refs.front();
    auto w = theta(m, n);
    rep.checks.push_back(outcome_from_evidence("kunneth.theta", ref, w.evidence, 0));
    rep.checks.push_back(timed("kunneth.degree0_iso", ref, [&] { return degree0_iso_check(shift(m, m.hi), shift(n, n.hi)).evidence; }));
    rep.checks.push_back(timed("kunneth.exact_sequences", ref, [&] { return check_exact_sequences(m, n); }));
    rep.checks.push_back(timed("kunneth.representative_independence", ref, [&] {
      return check_representative_independence(w, options.samples, 0);
    }));
    rep.checks.push_back(timed("kunneth.translation", ref, [&] { return check_translation_agreement(m, n); }));
    rep.artifacts = {{"i0", w.i0},
                     {"j0", w.j0},
                     {"source_dim", w.source.dim()},
                     {"target_dim", w.target.dim()},
                     {"theta", matrix_to_json(w.theta)}};
    return 0;
  });
  return rep;
}

Report derived_report(const json& m_doc, const json& n_doc, const std::vector<std::string>& refs,
                      const SuiteOptions& options) {
  Report rep;
  rep.command = "derived";
  for (const auto& r : refs) rep.instance_refs.push_back(r);
  const FieldSpec spec = common_field(m_doc, n_doc);
  rep.echo = {{"field", field_to_json(spec)}, {"options", options_to_json(options)}};
  with_field(spec, [&](const auto& f) {
    auto [m, n] = load_pair(f, m_doc, n_doc);
    for (auto& c : module_validity(m, n).checks())
      if (!c.passed) throw StructuralError(c.name + ": " + c.detail);
    const std::string ref = refs.empty() ? "input" : refs.front();
    DerivedOptions dopt;
    dopt.depth = options.depth;
    auto w = theta_der(m, n, dopt);
    rep.checks.push_back(outcome_from_evidence("derived.theta_der", ref, w.evidence, 0));
    rep.checks.push_back(timed("derived.square", ref, [&] { return check_derived_square(m, n, dopt); }));
    rep.checks.push_back(timed("derived.depth_stabilization", ref, [&] {
      std::vector<int> depths;
      if (options.depth) depths = {*options.depth, *options.depth + 1, *options.depth + 2};
      return check_depth_stabilization(m, n, depths, dopt);
    }));
    rep.checks.push_back(
        timed("derived.resolution_independence", ref, [&] { return check_resolution_independence(m, n, 1, 2, dopt); }));

    // Below the top degree the trick says nothing; report the neighbouring
    // cohomology as a control.
    auto t = tensor_over_algebra(w.resolution.p, w.truncated);
    const int below = w.top_degree() - 1;
    rep.artifacts = {{"i0", w.i0},
                     {"j0", w.j0},
                     {"depth", w.resolution.depth},
                     {"generators", w.resolution.generators().size()},
                     {"source_dim", w.source.dim()},
                     {"target_dim", w.target().dim()},
                     {"theta_der", matrix_to_json(w.theta_der)},
                     {"below_top", {{"degree", below}, {"dim", cohomology(t.as_complex(), below).dim()}}}};
    return 0;
  });
  return rep;
}

json corpus_to_json(const CorpusProfile& profile) {
  profile.check();
  if (profile.instance_count == 0) throw StructuralError("profile: instance_count must be positive");
  return with_field(profile.field, [&](const auto& f) {
    json list = json::array();
    for (std::size_t k = 0; k < profile.instance_count; ++k) {
      auto inst = generate_instance(f, profile, k);
      list.push_back({{"index", k},
                      {"family", inst.family},
                      {"recipe_left", inst.recipe_left},
                      {"recipe_right", inst.recipe_right},
                      {"left_factor", to_json(inst.m)},
                      {"right_factor", to_json(inst.n)}});
    }
    return json{{"type", "corpus"}, {"profile", profile_to_json(profile)}, {"instances", list}};
  });
}

template <class F>
Evidence dual_numbers_oracle(const F& f) {
  auto fam = make_family(f, "dual_numbers");
  auto m = trivial_module(fam.algebra, fam.augmentations[0], Side::Right);
  auto n = trivial_module(fam.algebra, fam.augmentations[0], Side::Left);
  Evidence ev;

  auto r = semifree_resolve(m, 3);
  ev.merge(r.evidence, "resolution");
  const auto& gens = r.generators();
  bool periodic = gens.size() == 4;
  for (std::size_t g = 0; periodic && g < gens.size(); ++g) {
    periodic = gens[g].degree == -static_cast<int>(g);
    // d(g_k) = g_{k+1}·t: coordinates (1, t) of the single block of P^{k+1}
    if (periodic && g > 0)
      periodic = gens[g].boundary.size() == 2 && f.is_zero(gens[g].boundary[0]) && !f.is_zero(gens[g].boundary[1]);
  }
  ev.record("one generator in each degree 0..-3 with d(g_k) = g_{k+1} t", periodic,
            std::to_string(gens.size()) + " generators");

  auto w = theta_der(m, n);
  ev.merge(w.evidence, "theta_der");
  ev.record("dim H^0(M (x)^L N) = 1", w.target().dim() == 1, std::to_string(w.target().dim()));
  ev.record("dim K (x)_A K = 1", w.source.dim() == 1, std::to_string(w.source.dim()));
  auto t = tensor_over_algebra(r.p, w.truncated);
  const auto below = cohomology(t.as_complex(), -1).dim();
  ev.record("dim H^-1(P (x) N) = 1", below == 1, std::to_string(below));
  return ev;
}

#define DGK_INSTANTIATE(F) template Evidence dual_numbers_oracle<F>(const F&);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
