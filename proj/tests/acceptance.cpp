// One line per acceptance criterion; the exit status is nonzero if any fails.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dgk/genlab.hpp"
#include "dgk/kunneth.hpp"
#include "dgk/resolve.hpp"
#include "dgk/suite.hpp"

using namespace dgk;

namespace {

struct Tally {
  bool ok = true;
  std::size_t checked = 0;
  std::string first_failure;

  void require(bool cond, const std::string& what) {
    ++checked;
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
  void require(const Evidence& ev, const std::string& what) {
    const auto* bad = ev.first_failure();
    require(bad == nullptr, bad ? what + ": " + bad->name + " " + bad->detail : what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs body once per field on that field's default corpus.
void for_both_fields(const std::function<void(const FieldSpec&)>& body) {
  body(FieldSpec::prime(kDefaultPrime));
  body(FieldSpec::rationals());
}

CorpusProfile profile_for(const FieldSpec& spec) {
  auto p = default_profile();
  p.field = spec;
  return p;
}

int failures = 0;

void report(int n, const std::string& title, const Tally& t, const std::string& extra) {
  std::cout << "criterion " << n << ": " << (t.ok ? "PASS" : "FAIL") << "  " << title << "  (" << t.checked
            << " checks" << (extra.empty() ? "" : ", " + extra) << ")";
  if (!t.ok) std::cout << "  first failure: " << t.first_failure;
  std::cout << std::endl;
  failures += !t.ok;
}

void criterion1() {
  Tally t;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t instances = 0, nonzero = 0;
  for_both_fields([&](const FieldSpec& spec) {
    with_field(spec, [&](const auto& f) {
      auto profile = profile_for(spec);
      for (std::size_t k = 0; k < profile.instance_count; ++k) {
        auto inst = generate_instance(f, profile, k);
        const std::string ref = to_string(spec) + "/instance/" + std::to_string(k);
        auto w = theta(inst.m, inst.n);
        nonzero += w.source.dim() > 0;
        t.require(w.evidence, ref + " theta");
        t.require(is_bijective(w.theta), ref + " theta bijective");
        t.require(check_representative_independence(w, 20, derive_seed(profile.seed, k, 101)),
                  ref + " representative independence");
        ++instances;
      }
      return 0;
    });
  });
  const double secs = seconds_since(t0);
  t.require(secs < 60, "runtime " + std::to_string(secs) + " s exceeds 60 s");
  std::ostringstream extra;
  extra << instances << " instances, " << nonzero << " with nonzero top degree, " << secs << " s";
  report(1, "theta bijective with representative independence on the default corpora", t, extra.str());
}

void criterion2() {
  Tally t;
  for_both_fields([&](const FieldSpec& spec) {
    with_field(spec, [&](const auto& f) {
      auto profile = profile_for(spec);
      for (std::size_t k = 0; k < profile.instance_count; ++k) {
        auto inst = generate_instance(f, profile, k);
        const std::string ref = to_string(spec) + "/instance/" + std::to_string(k);
        t.require(check_exact_sequences(inst.m, inst.n), ref + " exact sequences");
        t.require(degree0_iso_check(shift(inst.m, inst.m.hi), shift(inst.n, inst.n.hi)).evidence,
                  ref + " degree-zero comparison");
      }
      return 0;
    });
  });
  report(2, "exact sequences and the degree-zero comparison map on both corpora", t, {});
}

void criterion3() {
  Tally t;
  for_both_fields([&](const FieldSpec& spec) {
    with_field(spec, [&](const auto& f) {
      auto w = noninjectivity_witness(f);
      const std::string ref = to_string(spec);
      t.require(w.evidence, ref + " witness");
      t.require(w.source_dim == 2, ref + " source dim " + std::to_string(w.source_dim));
      t.require(w.target_dim == 1, ref + " target dim " + std::to_string(w.target_dim));
      t.require(!is_zero_vector(f, w.element), ref + " element is zero");
      t.require(is_zero_vector(f, w.image), ref + " image is nonzero");
      t.require(is_surjective(w.map), ref + " map not surjective");
      return 0;
    });
  });
  report(3, "noninjectivity of the degree -1 comparison over the exterior algebra", t, "dims 2 -> 1");
}

void criterion4() {
  Tally t;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t instances = 0;
  for_both_fields([&](const FieldSpec& spec) {
    with_field(spec, [&](const auto& f) {
      auto profile = profile_for(spec);
      for (std::size_t k = 0; k < profile.instance_count; ++k) {
        auto inst = generate_instance(f, profile, k);
        const std::string ref = to_string(spec) + "/instance/" + std::to_string(k);
        auto w = theta_der(inst.m, inst.n);
        t.require(w.evidence, ref + " theta_der");
        t.require(is_bijective(w.theta_der), ref + " theta_der bijective");
        t.require(check_derived_square(inst.m, inst.n), ref + " square with theta");
        t.require(check_depth_stabilization(inst.m, inst.n, {}), ref + " depth stabilization");
        t.require(check_resolution_independence(inst.m, inst.n, derive_seed(profile.seed, k, 102),
                                                derive_seed(profile.seed, k, 103)),
                  ref + " resolution independence");
        ++instances;
      }
      return 0;
    });
  });
  const double secs = seconds_since(t0);
  t.require(instances >= 100, "only " + std::to_string(instances) + " instances");
  t.require(secs < 120, "runtime " + std::to_string(secs) + " s exceeds 120 s");
  std::ostringstream extra;
  extra << instances << " instances, depths b+2..b+4, " << secs << " s";
  report(4, "theta_der bijective, square with theta commutes, stable in depth and seed", t, extra.str());
}

void criterion5() {
  Tally t;
  for_both_fields([&](const FieldSpec& spec) {
    with_field(spec, [&](const auto& f) {
      t.require(dual_numbers_oracle(f), to_string(spec) + " dual numbers");
      return 0;
    });
  });
  report(5, "dual numbers: dim H^0 = 1 and dim H^-1(P (x) N) = 1", t, {});
}

void criterion6() {
  Tally t;
  std::size_t pairs = 0, zeros = 0, composites = 0;
  for_both_fields([&](const FieldSpec& spec) {
    with_field(spec, [&](const auto& f) {
      auto profile = profile_for(spec);
      for (std::size_t k = 0; k < 60; ++k) {
        auto pair = generate_morphism_pair(f, profile, k);
        const std::string ref = to_string(spec) + "/pair/" + std::to_string(k);
        t.require(check_functoriality(pair.f, pair.g), ref + " theta naturality");
        t.require(check_theta_der_functoriality(pair.f, pair.g), ref + " theta_der naturality");
        ++pairs;
        zeros += pair.recipe == "zero";
        composites += pair.recipe == "composite";
      }
      return 0;
    });
  });
  t.require(pairs >= 50, "too few pairs");
  t.require(zeros > 0, "no zero morphisms");
  t.require(composites > 0, "no composites");
  report(6, "naturality of theta and theta_der", t,
         std::to_string(pairs) + " pairs, " + std::to_string(zeros) + " zero, " + std::to_string(composites) +
             " composite");
}

std::string without_timing(const std::filesystem::path& p) {
  std::ifstream in(p);
  auto j = json::parse(in);
  j.erase("timing");
  return j.dump(2);
}

void criterion7() {
  Tally t;
  const auto dir = std::filesystem::temp_directory_path() / ("dgk_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string dumps[2];
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("report" + std::to_string(run) + ".json");
    const std::string cmd = std::string(KUNNETH_BIN) + " suite --seed 1729 --out " + out.string() + " >/dev/null";
    const int status = std::system(cmd.c_str());
    t.require(status == 0, "suite run " + std::to_string(run) + " exited with status " + std::to_string(status));
    if (status == 0) dumps[run] = without_timing(out);
  }
  t.require(!dumps[0].empty() && dumps[0] == dumps[1], "reports differ outside the timing section");
  std::filesystem::remove_all(dir);
  report(7, "suite reports are byte-identical across runs apart from timing", t,
         std::to_string(dumps[0].size()) + " bytes");
}

}  // namespace

int main() {
  for (auto* c : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7}) {
    try {
      c();
    } catch (const std::exception& e) {
      std::cout << "criterion aborted: " << e.what() << std::endl;
      ++failures;
    }
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
