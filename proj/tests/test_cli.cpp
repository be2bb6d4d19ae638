#include "helpers.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dgk/serialize.hpp"
#include "dgk/suite.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dgk_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(KUNNETH_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CorpusProfile small_profile() {
  auto p = default_profile();
  p.instance_count = 6;
  return p;
}

SuiteOptions small_options() {
  SuiteOptions o;
  o.samples = 3;
  o.morphism_pairs = 5;
  o.jobs = 2;
  return o;
}

}  // namespace

TEST_CASE_TEMPLATE("documents round-trip bit-exactly", F, PrimeField, RationalField) {
  F f;
  auto profile = default_profile();
  for (std::size_t k = 0; k < 20; ++k) {
    auto inst = generate_instance(f, profile, k);
    auto a = to_json(*inst.algebra);
    CHECK(algebra_from_json(f, a) == *inst.algebra);
    auto m = to_json(inst.m);
    auto back = module_from_json(f, m);
    CHECK(back == inst.m);
    CHECK(to_json(back).dump() == m.dump());
    auto text = to_json(inst.n).dump();
    CHECK(to_json(module_from_json(f, json::parse(text))).dump() == text);
  }
  auto pair = generate_morphism_pair(f, profile, 3);
  auto g = to_json(pair.g);
  CHECK(to_json(morphism_from_json(f, g)).dump() == g.dump());
}

TEST_CASE("rational entries survive serialization") {
  RationalField q;
  auto m = ground_complex(q, Side::Left, -1, {1, 1});
  m.differential(-1)(0, 0) = q.parse("-7/3");
  auto back = module_from_json(q, to_json(m));
  CHECK(q.format(back.differential(-1)(0, 0)) == "-7/3");
}

TEST_CASE("malformed documents name the offending location") {
  PrimeField f;
  auto doc = to_json(free_rank_one(family(f, "exterior"), Side::Left));
  auto broken = doc;
  broken["differentials"][0]["matrix"][0][0] = "abc";
  try {
    module_from_json(f, broken);
    FAIL("expected a structural error");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("[0][0]") != std::string::npos);
  }
  auto wrong = doc;
  wrong.erase("dims");
  CHECK_THROWS_AS(module_from_json(f, wrong), StructuralError);
  CHECK_THROWS_AS(peek_field(json::object()), StructuralError);
  auto bad_field = doc;
  bad_field["algebra"]["field"] = {{"kind", "prime"}, {"p", 100}};
  CHECK_THROWS_AS(peek_field(bad_field), StructuralError);
}

TEST_CASE("validate_document") {
  PrimeField f;
  auto lam = family(f, "exterior");
  auto rep = validate_document(to_json(*lam), "lam.json");
  CHECK(rep.ok());

  auto m = free_rank_one(std::make_shared<const DGAlgebra<PrimeField>>(make_exterior(f, -1, true)), Side::Left);
  CHECK(validate_document(to_json(m), "m.json").ok());
  m.differential(-1).scale(f.neg(f.one()));
  auto bad = validate_document(to_json(m), "m.json");
  CHECK_FALSE(bad.ok());
  CHECK(bad.exit_code() == 1);
  bool named = false;
  for (const auto& c : bad.checks) named |= c.detail.find("(A^-1[0], M^0[0])") != std::string::npos;
  CHECK(named);

  auto empty = DGModule<PrimeField>::zero_structure(Side::Left, lam, -2, 0, {0, 0, 0});
  CHECK(validate_document(to_json(empty), "empty.json").ok());

  auto pair = generate_morphism_pair(f, default_profile(), 1);
  CHECK(validate_document(to_json(pair.f), "f.json").ok());
  CHECK_THROWS_AS(validate_document(json{{"type", "banana"}, {"field", {{"kind", "rational"}}}}, "x"),
                  StructuralError);
}

TEST_CASE("kunneth_report") {
  PrimeField f;
  auto k = kunneth_report(to_json(ground_complex(f, Side::Right, 0, {1})),
                          to_json(ground_complex(f, Side::Left, 0, {1})), {"m", "n"});
  CHECK(k.ok());
  CHECK(k.artifacts.at("theta") == json::array({json::array({"1"})}));

  auto lam = family(f, "exterior");
  auto mr = free_rank_one(lam, Side::Right), nl = free_rank_one(lam, Side::Left);
  auto rep = kunneth_report(to_json(mr), to_json(nl), {"m", "n"});
  CHECK(rep.ok());
  CHECK(rep.artifacts.at("source_dim") == 1);
  CHECK(rep.artifacts.at("target_dim") == 1);

  CHECK_THROWS_AS(kunneth_report(to_json(nl), to_json(nl), {"n", "n"}), StructuralError);
  auto other = free_rank_one(family(f, "dual_numbers"), Side::Left);
  CHECK_THROWS_AS(kunneth_report(to_json(mr), to_json(other), {"m", "n"}), StructuralError);
  RationalField q;
  auto nq = free_rank_one(family(q, "exterior"), Side::Left);
  CHECK_THROWS_AS(kunneth_report(to_json(mr), to_json(nq), {"m", "n"}), StructuralError);
}

TEST_CASE("derived_report on the dual numbers") {
  RationalField q;
  auto fam = make_family(q, "dual_numbers");
  auto m = trivial_module(fam.algebra, fam.augmentations[0], Side::Right);
  auto n = trivial_module(fam.algebra, fam.augmentations[0], Side::Left);
  auto rep = derived_report(to_json(m), to_json(n), {"m", "n"});
  CHECK(rep.ok());
  CHECK(rep.artifacts.at("target_dim") == 1);
  CHECK(rep.artifacts.at("below_top").at("dim") == 1);
  CHECK(rep.artifacts.at("below_top").at("degree") == -1);
}

TEST_CASE("run_suite is deterministic and reports every routine") {
  auto a = run_suite(small_profile(), small_options());
  CHECK(a.ok());
  auto b = run_suite(small_profile(), small_options());
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  CHECK(a.to_json().contains("timing"));
  CHECK_FALSE(a.to_json(false).contains("timing"));

  std::set<std::string> names;
  for (const auto& c : a.checks) names.insert(c.name);
  for (const char* n : {"kunneth.theta", "kunneth.exact_sequences", "kunneth.representative_independence",
                        "derived.theta_der", "derived.square", "derived.depth_stabilization",
                        "derived.resolution_independence", "functoriality.theta", "functoriality.theta_der",
                        "oracle.noninjectivity", "oracle.dual_numbers"})
    CHECK(names.count(n) == 1);

  auto q = small_profile();
  q.field = FieldSpec::rationals();
  CHECK(run_suite(q, small_options()).ok());

  auto none = small_profile();
  none.instance_count = 0;
  CHECK_THROWS_AS(run_suite(none, small_options()), StructuralError);
}

TEST_CASE("an injected failure is reported with a shrunk counterexample") {
  auto o = small_options();
  o.inject_failure = 2;
  auto rep = run_suite(small_profile(), o);
  CHECK_FALSE(rep.ok());
  CHECK(rep.exit_code() == 1);
  const CheckOutcome* hit = nullptr;
  for (const auto& c : rep.checks)
    if (!c.passed && c.name == "instance.valid") hit = &c;
  REQUIRE(hit != nullptr);
  CHECK(hit->instance.find("/instance/2") != std::string::npos);
  const auto& cx = hit->counterexample;
  REQUIRE(cx.contains("shrunk_module"));
  CHECK(cx.at("shrunk_nonzero_entries").get<std::size_t>() <= cx.at("nonzero_entries").get<std::size_t>());
  CHECK_FALSE(cx.at("shrunk_violations").empty());
}

TEST_CASE("reports round-trip through JSON and are written atomically") {
  auto rep = run_suite(small_profile(), small_options());
  auto path = scratch("report.json");
  write_atomically(path, rep.to_json().dump(2));
  auto back = json::parse(slurp(path));
  CHECK(back == rep.to_json());
  CHECK(back.at("summary").at("status") == "pass");
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  write_atomically(path, "{}");
  CHECK(slurp(path) == "{}");
}

TEST_CASE("command-line exit codes") {
  PrimeField f;
  auto lam = family(f, "exterior");
  auto mp = scratch("m.json"), np = scratch("n.json"), bad = scratch("bad.json"), out = scratch("out.json");
  write(mp, to_json(free_rank_one(lam, Side::Right)));
  write(np, to_json(free_rank_one(lam, Side::Left)));
  std::ofstream(bad) << "{ \"type\": ";

  CHECK(run("validate " + mp.string()) == 0);
  CHECK(run("kunneth " + mp.string() + " " + np.string() + " --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("command") == "kunneth");
  CHECK(run("derived " + mp.string() + " " + np.string()) == 0);
  CHECK(run("kunneth " + np.string() + " " + np.string()) == 2);
  CHECK(run("validate " + bad.string()) == 2);
  CHECK(run("validate " + scratch("missing.json").string()) == 2);
  CHECK(run("suite --instances 4 --pairs 3 --samples 2") == 0);
  CHECK(run("suite --instances 4 --pairs 3 --samples 2 --inject-fail 1") == 1);
  CHECK(run("suite --instances 0") == 2);
  CHECK(run("suite --field F100 --instances 2") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("gen --instances 2 --field Q --out " + out.string()) == 0);
  CHECK(json::parse(slurp(out)).at("instances").size() == 2);
  fs::remove_all(mp.parent_path());
}
