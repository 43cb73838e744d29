#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "hallforge/cache.hpp"
#include "hallforge/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace hallforge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string data_dir = HALLFORGE_DATA_DIR;
const std::string a1 = data_dir + "/quivers/a1.json";
const std::string a2 = data_dir + "/quivers/a2.json";

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / (name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct CacheEnv {
  explicit CacheEnv(const fs::path& dir) { ::setenv("HALLFORGE_CACHE", dir.c_str(), 1); }
  ~CacheEnv() { ::unsetenv("HALLFORGE_CACHE"); }
};

}  // namespace

TEST_CASE("period-1 product from the command line") {
  const Result r = run({"dha-mul", "--t", "1", "--q", "2", "--quiver", a1, "--lhs", "[k1@0]", "--rhs", "[k1@0]"});
  CHECK(r.code == cli::pass);
  const json rep = r.report();
  CHECK(rep.at("command") == "dha-mul");
  CHECK(rep.at("results").at("coefficients") == json{{"[k2@0]", "0 + 3/2*v"}, {"[]", "0 + 1*v"}});
  CHECK(rep.contains("fingerprint"));
  CHECK(rep.contains("timing_ms"));
  CHECK(rep.at("counterexamples").empty());
}

TEST_CASE("two classes of dimension (1,1) on 1 -> 2") {
  const Result r = run({"classes", "--quiver", a2, "--q", "2", "--dim", "1,1"});
  CHECK(r.code == cli::pass);
  CHECK(r.report().at("results").at("count") == 2);
}

TEST_CASE("Green sweeps pass, including the empty bound") {
  Result r = run({"green", "--quiver", a1, "--q", "2", "--max-dim", "2"});
  CHECK(r.code == cli::pass);
  CHECK(r.report().at("results").at("checked") == r.report().at("results").at("passed"));
  r = run({"green", "--quiver", a1, "--q", "2", "--max-dim", "0"});
  CHECK(r.code == cli::pass);
  CHECK(r.report().at("results").at("checked") == 1);
}

TEST_CASE("sweep subcommands") {
  CHECK(run({"relations", "--quiver", a1, "--q", "2", "--t", "0", "--max-dim", "2"}).code == cli::pass);
  CHECK(run({"relations", "--quiver", a1, "--q", "2", "--t", "1", "--max-dim", "2"}).code == cli::pass);
  CHECK(run({"relations", "--quiver", a1, "--q", "2", "--t", "5", "--family", "dht_r3"}).code == cli::pass);
  const Result assoc = run({"dha-assoc", "--quiver", a2, "--q", "2", "--t", "0", "--max-dim", "1", "--width", "2",
                            "--sample", "300", "--seed", "9"});
  CHECK(assoc.code == cli::pass);
  CHECK(assoc.report().at("results").at("checked") == 300);
  CHECK(run({"crosscheck", "--quiver", a2, "--q", "2", "--t", "0", "--max-dim", "1"}).code == cli::pass);
  const Result t1 = run({"crosscheck", "--quiver", a1, "--q", "2", "--t", "1", "--max-dim", "2"});
  CHECK(t1.code == cli::pass);
  CHECK(t1.report().at("results").at("alt_hom").at("checked") > 0);
}

TEST_CASE("table subcommands") {
  const Result h = run({"hall", "--quiver", a2, "--q", "2", "--lhs", "k1.0", "--rhs", "k0.1"});
  CHECK(h.code == cli::pass);
  CHECK(h.report().at("results").at("product") == json{{"k1.1", "1"}, {"k1.1#1", "1"}});
  const Result g = run({"gamma", "--quiver", a1, "--q", "2", "--lhs", "k1", "--rhs", "k1"});
  CHECK(g.code == cli::pass);
  CHECK(g.report().at("results").at("table").size() == 2);
  CHECK(run({"hall", "--quiver", a1, "--q", "3", "--max-dim", "3"}).code == cli::pass);
}

TEST_CASE("reports are byte-identical without timing") {
  const std::vector<std::string> args{"dha-assoc", "--quiver", a1, "--q", "2", "--t", "3", "--max-dim", "1",
                                      "--no-timing"};
  const Result first = run(args);
  const Result second = run(args);
  CHECK(first.code == cli::pass);
  CHECK(first.out == second.out);
  CHECK(first.report().at("timing_ms") == 0);
  auto other = args;
  other[4] = "3";
  CHECK(run(other).report().at("fingerprint") != first.report().at("fingerprint"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::usage);
  CHECK(run({"frobnicate"}).code == cli::usage);
  CHECK(run({"classes", "--q", "2"}).code == cli::usage);
  CHECK(run({"classes", "--quiver", "/nonexistent.json"}).code == cli::usage);
  CHECK(run({"classes", "--quiver", a1, "--q", "4"}).code == cli::usage);
  CHECK(run({"dha-mul", "--quiver", a1, "--t", "2", "--lhs", "[]", "--rhs", "[]"}).code == cli::usage);
  CHECK(run({"dha-mul", "--quiver", a1, "--lhs", "[k1@0, k1@0]", "--rhs", "[]"}).code == cli::usage);
  CHECK(run({"dha-mul", "--quiver", a1, "--lhs", "[k1@0]"}).code == cli::usage);
  CHECK(run({"classes", "--quiver", a2, "--dim", "1"}).code == cli::usage);
  CHECK(run({"relations", "--quiver", a1, "--family", "nope"}).code == cli::usage);
  CHECK(run({"crosscheck", "--quiver", a1, "--t", "3"}).code == cli::usage);
  CHECK(run({"--help"}).code == cli::pass);
}

TEST_CASE("resource bounds exit with 3 and name the bound") {
  const Result r = run({"classes", "--quiver", a2, "--q", "3", "--dim", "4,4"});
  CHECK(r.code == cli::resource_bound);
  CHECK(r.report().at("bound") == "max_variety");
}

TEST_CASE("the installed binary reports the same exit codes") {
  const std::string cli = HALLFORGE_CLI;
  CHECK(WEXITSTATUS(std::system((cli + " classes --quiver " + a1 + " --q 2 > /dev/null").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system((cli + " classes --quiver " + a1 + " --q 6 > /dev/null 2>&1").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system((cli + " classes --quiver " + a2 + " --q 3 --dim 4,4 > /dev/null 2>&1").c_str())) == 3);
}

TEST_CASE("CSV export") {
  TempDir dir("hallforge_csv");
  const std::string path = (dir.path / "classes.csv").string();
  CHECK(run({"classes", "--quiver", a2, "--q", "2", "--dim", "1,1", "--csv", path}).code == cli::pass);
  std::ifstream in(path);
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "id,dims,aut,orbit_size");
  CHECK(row1.rfind("k1.1,", 0) == 0);
  CHECK(row2.rfind("k1.1#1,", 0) == 0);
  CHECK_FALSE(std::getline(in, extra));
  const std::string mul = (dir.path / "mul.csv").string();
  run({"dha-mul", "--t", "1", "--quiver", a1, "--lhs", "[k1@0]", "--rhs", "[k1@0]", "--csv", mul});
  std::ifstream m(mul);
  std::stringstream all;
  all << m.rdbuf();
  CHECK(all.str() == "object,coefficient\n[],0 + 1*v\n[k2@0],0 + 3/2*v\n");
}

TEST_CASE("cache store and load reproduce classes and Hall numbers") {
  TempDir dir("hallforge_cache_rt");
  const repcat::RepCategory cat(support::a2(), falg::FieldSpec(2));
  repcat::ClassRegistry reg(cat);
  hall::HallEngine engine(reg);
  for (const auto& d : repcat::sub_dimvecs(repcat::DimVec({2, 2})))
    for (const auto& info : reg.classes(d)) engine.subobject_table(info.id);
  const std::string key = cache::fingerprint(cat.quiver(), 2, 0);
  const cache::CacheStore store(dir.path);
  store.store(engine, key);

  repcat::ClassRegistry reg2(cat);
  hall::HallEngine engine2(reg2);
  CHECK(store.load(reg2, engine2, key));
  CHECK(reg2.covered() == reg.covered());
  for (const auto& d : reg.covered()) {
    REQUIRE(reg2.classes(d).size() == reg.classes(d).size());
    for (std::size_t i = 0; i < reg.classes(d).size(); ++i) {
      const auto& x = reg.classes(d)[i];
      const auto& y = reg2.classes(d)[i];
      CHECK(x.id == y.id);
      CHECK(x.rep == y.rep);
      CHECK(x.aut == y.aut);
      CHECK(reg2.classify(x.rep) == x.id);
    }
  }
  CHECK(engine2.tabulated() == engine.tabulated());
  for (const auto& c : engine.tabulated()) CHECK(engine2.subobject_table(c) == engine.subobject_table(c));

  repcat::ClassRegistry reg3(cat);
  hall::HallEngine engine3(reg3);
  const std::string other = cache::fingerprint(support::a3(), 2, 0);
  CHECK_FALSE(store.load(reg3, engine3, other));
  fs::copy_file(store.path_for(key), store.path_for(other));
  CHECK_THROWS_AS(store.load(reg3, engine3, other), CacheInvalid);
  CHECK(cache::fingerprint(cat.quiver(), 2, 0) != cache::fingerprint(cat.quiver(), 3, 0));
  CHECK(cache::fingerprint(cat.quiver(), 2, 0) != cache::fingerprint(cat.quiver(), 2, 1));
}

TEST_CASE("concurrent stores of one key leave one loadable file") {
  TempDir dir("hallforge_cache_mt");
  const repcat::RepCategory cat(support::a1(), falg::FieldSpec(2));
  repcat::ClassRegistry reg(cat);
  hall::HallEngine engine(reg);
  engine.subobject_table(repcat::parse_class_id("k3", 1));
  const std::string key = cache::fingerprint(cat.quiver(), 2, 0);
  const cache::CacheStore store(dir.path);
  std::vector<std::thread> workers;
  for (int i = 0; i < 8; ++i) workers.emplace_back([&] { store.store(engine, key); });
  for (auto& w : workers) w.join();
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++files;
  CHECK(files == 1);
  repcat::ClassRegistry reg2(cat);
  hall::HallEngine engine2(reg2);
  CHECK(store.load(reg2, engine2, key));
  CHECK(engine2.hall_number(repcat::parse_class_id("k1", 1), repcat::parse_class_id("k2", 1),
                            repcat::parse_class_id("k3", 1)) == 7);
}

TEST_CASE("the command line uses the cache directory and survives corruption") {
  TempDir dir("hallforge_cache_cli");
  CacheEnv env(dir.path);
  const std::vector<std::string> args{"green", "--quiver", a2, "--q", "2", "--dim", "2,2", "--no-timing"};
  const Result first = run(args);
  CHECK(first.code == cli::pass);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir.path)) files.push_back(e.path());
  REQUIRE(files.size() == 1);
  const Result second = run(args);
  CHECK(second.out == first.out);
  CHECK(second.err.empty());

  { std::ofstream(files[0]) << "{ not json"; }
  const Result third = run(args);
  CHECK(third.code == cli::pass);
  CHECK(third.out == first.out);
  CHECK(third.err.find("warning") != std::string::npos);

  // A well-formed cache with a wrong Hall number is trusted, and the sweep
  // reports the resulting mismatch.
  std::ifstream in(files[0]);
  json state = json::parse(in);
  in.close();
  bool tampered = false;
  for (auto& t : state.at("subobjects")) {
    if (t.at("class") == "k1.1" && !t.at("entries").empty()) {
      for (auto& e : t.at("entries"))
        if (e.at(0) == "k1.0" && e.at(1) == "k0.1") {
          e.at(2) = "5";
          tampered = true;
        }
    }
  }
  REQUIRE(tampered);
  { std::ofstream(files[0]) << state.dump(); }
  const Result fourth = run(args);
  CHECK(fourth.code == cli::mismatch);
  CHECK_FALSE(fourth.report().at("counterexamples").empty());
}
