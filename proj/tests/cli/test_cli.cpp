// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = NPFORGE_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = npforge::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("npforge_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string data(const std::string& f) { return (kData / f).string(); }

}  // namespace

TEST_CASE("help and version exit cleanly") {
  CHECK(invoke({"--help"}).code == npforge::cli::kOk);
  const auto v = invoke({"--version"});
  CHECK(v.code == npforge::cli::kOk);
  CHECK(v.out.find("npforge") != std::string::npos);
}

TEST_CASE("usage errors map to exit code 2") {
  CHECK(invoke({}).code == npforge::cli::kBadInput);
  CHECK(invoke({"frobnicate"}).code == npforge::cli::kBadInput);
  CHECK(invoke({"encode", data("does_not_exist.cnf")}).code == npforge::cli::kBadInput);
  const auto dir = scratch("usage");
  CHECK(invoke({"encode", data("sat3.cnf"), "--method", "deg5", "-o", (dir / "x.json").string()}).code ==
        npforge::cli::kBadInput);
}

TEST_CASE("malformed input names the file and line") {
  const auto dir = scratch("malformed");
  const auto r = invoke({"encode", data("bad_literal.cnf"), "-o", (dir / "x.json").string()});
  CHECK(r.code == npforge::cli::kBadInput);
  CHECK(r.err.find("bad_literal.cnf") != std::string::npos);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "x.json"));
}

TEST_CASE("oversized instances map to exit code 1") {
  const auto dir = scratch("large");
  CHECK(invoke({"census", "--dim", "13", "-o", (dir / "c.json").string()}).code ==
        npforge::cli::kTooLarge);
}

TEST_CASE("encode writes polynomial and sidecar for every applicable method") {
  const auto dir = scratch("encode");
  const std::vector<std::pair<std::string, int>> methods = {
      {"deg14", 14}, {"deg8", 8}, {"deg6", 6}, {"deg4", 4}, {"quadratic", 2}};
  for (const auto& [m, bound] : methods) {
    CAPTURE(m);
    const auto poly = dir / ("sat3." + m + ".json");
    const auto r = invoke({"encode", data("sat3.cnf"), "--method", m, "--oracle", "-o", poly.string()});
    REQUIRE(r.code == npforge::cli::kOk);
    const auto j = load(poly);
    CHECK(j["schema"] == "npforge.encoding/1");
    CHECK(j["encoding"] == m);
    CHECK(j["degree"].get<int>() <= bound);
    const auto meta = load(dir / ("sat3." + m + ".meta.json"));
    CHECK(meta["schema"] == "npforge.encoding-meta/1");
    CHECK(meta["oracle"]["satisfiable"] == true);
    CHECK(meta["oracle"]["lattice_minimum"] == "0");
  }
}

TEST_CASE("encode degree 4 on an unsatisfiable formula has a positive lattice minimum") {
  const auto dir = scratch("encode_unsat");
  const auto r = invoke({"encode", data("unsat2.cnf"), "--oracle", "-o", (dir / "u.json").string()});
  REQUIRE(r.code == npforge::cli::kOk);
  const auto meta = load(dir / "u.meta.json");
  CHECK(meta["oracle"]["satisfiable"] == false);
  CHECK(meta["oracle"]["lattice_minimum"] != "0");
  CHECK(load(dir / "u.json")["degree"] == 4);
}

TEST_CASE("default report path sits next to the input") {
  const auto dir = scratch("default_path");
  fs::copy_file(data("house.edges"), dir / "house.edges");
  REQUIRE(invoke({"hamilton", (dir / "house.edges").string()}).code == npforge::cli::kOk);
  CHECK(fs::exists(dir / "house.hamilton.json"));
}

TEST_CASE("geometric pipeline agrees with the hypercube oracle") {
  const auto dir = scratch("geometry");
  for (const std::string f : {"sat3.cnf", "unsat2.cnf"}) {
    CAPTURE(f);
    const bool sat = f == "sat3.cnf";
    const auto plane = dir / (f + ".plane.json");
    REQUIRE(invoke({"reduce-plane", data(f), "--oracle", "-o", plane.string()}).code == npforge::cli::kOk);
    CHECK(load(plane)["oracle"]["boolean_zero"] == sat);
    const auto sphere = dir / (f + ".sphere.json");
    REQUIRE(invoke({"reduce-sphere", data(f), "--oracle", "-o", sphere.string()}).code == npforge::cli::kOk);
    CHECK(load(sphere)["oracle"]["sphere_hits_hypercube"] == sat);
    const auto packed = dir / (f + ".packed.json");
    REQUIRE(invoke({"pack-ss", data(f), "--oracle", "-o", packed.string()}).code == npforge::cli::kOk);
    CHECK(load(packed)["oracle"]["subset_sum_solvable"] == sat);
  }
}

TEST_CASE("packed instances round-trip through subsetsum") {
  const auto dir = scratch("pack_roundtrip");
  const auto packed = dir / "p.json";
  REQUIRE(invoke({"pack-ss", data("sat3.cnf"), "-o", packed.string()}).code == npforge::cli::kOk);
  REQUIRE(fs::exists(dir / "p.ss"));
  const auto rep = dir / "p.subsetsum.json";
  REQUIRE(invoke({"subsetsum", (dir / "p.ss").string(), "--oracle", "-o", rep.string()}).code ==
          npforge::cli::kOk);
  CHECK(load(rep)["solvable"] == true);
}

TEST_CASE("subsetsum reports witness and zero patterns") {
  const auto dir = scratch("subsetsum");
  const auto yes = dir / "yes.json";
  REQUIRE(invoke({"subsetsum", data("small.ss"), "--oracle", "-o", yes.string()}).code == npforge::cli::kOk);
  const auto j = load(yes);
  CHECK(j["solvable"] == true);
  std::int64_t sum = 0;
  const std::vector<std::int64_t> values = {3, 5, 8, 2, 7};
  for (auto i : j["witness"]) sum += values[i.get<std::size_t>()];
  CHECK(sum == 10);
  // 3+7, 8+2, 3+5+2 and their complements in sign form.
  CHECK(j["zero_sign_patterns"] == 6);

  const auto no = dir / "no.json";
  REQUIRE(invoke({"subsetsum", data("nosol.ss"), "--oracle", "-o", no.string()}).code == npforge::cli::kOk);
  CHECK(load(no)["solvable"] == false);
  CHECK(load(no)["witness"].is_null());
}

TEST_CASE("hamilton matches explicit cycle counts") {
  const auto dir = scratch("hamilton");
  const auto house = dir / "house.json";
  REQUIRE(invoke({"hamilton", data("house.edges"), "--oracle", "-o", house.string()}).code == npforge::cli::kOk);
  auto j = load(house);
  // Two undirected Hamilton cycles, four directed, trace n times that.
  CHECK(j["directed_cycles"] == 4);
  CHECK(j["trace"] == 20);
  CHECK(j["cycle"].size() == 5);
  CHECK(j["oracle"]["derivative_trace"] == "20");

  const auto star = dir / "star.json";
  REQUIRE(invoke({"hamilton", data("star.edges"), "--oracle", "-o", star.string()}).code == npforge::cli::kOk);
  j = load(star);
  CHECK(j["trace"] == 0);
  CHECK(j["has_hamilton"] == false);
  CHECK(j["cycle"].is_null());
}

TEST_CASE("optimize reports are byte-identical across runs and thread counts") {
  const auto dir = scratch("determinism");
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  const auto c = dir / "c.json";
  REQUIRE(invoke({"optimize", data("sat3.cnf"), "--seed", "7", "--threads", "1", "-o", a.string()}).code == 0);
  REQUIRE(invoke({"optimize", data("sat3.cnf"), "--seed", "7", "--threads", "1", "-o", b.string()}).code == 0);
  REQUIRE(invoke({"optimize", data("sat3.cnf"), "--seed", "7", "--threads", "4", "-o", c.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  const auto d = dir / "d.json";
  REQUIRE(invoke({"optimize", data("sat3.cnf"), "--seed", "8", "-o", d.string()}).code == 0);
  CHECK(slurp(a) != slurp(d));
}

TEST_CASE("optimize oracle accepts every method on both formulas") {
  const auto dir = scratch("optimize_oracle");
  for (const std::string m : {"deg6", "deg4", "quadratic"}) {
    for (const std::string f : {"sat3.cnf", "unsat2.cnf"}) {
      CAPTURE(m);
      CAPTURE(f);
      const auto out = dir / (m + f + ".json");
      CHECK(invoke({"optimize", data(f), "--method", m, "--oracle", "-o", out.string()}).code == 0);
    }
  }
  const auto out = dir / "unsat.json";
  REQUIRE(invoke({"optimize", data("unsat2.cnf"), "--oracle", "-o", out.string()}).code == 0);
  CHECK(load(out)["oracle"]["vertex_zeros"] == 0);
}

TEST_CASE("optimize reads the config file and the seed flag overrides it") {
  const auto dir = scratch("config");
  const auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"step": 0.02, "max_iters": 800, "seed": 5})";
  const auto out = dir / "o.json";
  const auto logf = dir / "best.csv";
  REQUIRE(invoke({"optimize", data("sat3.cnf"), "--config", cfg.string(), "--seed", "9", "--starts", "4",
                  "--log", logf.string(), "-o", out.string()})
              .code == 0);
  const auto j = load(out);
  CHECK(j["config"]["step"] == 0.02);
  CHECK(j["config"]["max_iters"] == 800);
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["summary"]["runs"].size() == 4);
  CHECK(slurp(logf).rfind("iter,value,grad_norm", 0) == 0);

  std::ofstream(cfg) << R"({"step": -1})";
  CHECK(invoke({"optimize", data("sat3.cnf"), "--config", cfg.string(), "-o", out.string()}).code ==
        npforge::cli::kBadInput);
}

TEST_CASE("census of the boolean penalty finds every vertex") {
  const auto dir = scratch("census");
  for (int d = 1; d <= 3; ++d) {
    const auto out = dir / ("c" + std::to_string(d) + ".json");
    REQUIRE(invoke({"census", "--dim", std::to_string(d), "--oracle", "-o", out.string()}).code == 0);
    CHECK(load(out)["census"]["count"] == (1 << d));
  }
}

TEST_CASE("srg compares the two 16-vertex fixtures") {
  const auto dir = scratch("srg");
  const auto out = dir / "s.json";
  const auto csv = dir / "s.csv";
  REQUIRE(invoke({"srg", "--fixture", "rook", "--fixture", "shrikhande", "--oracle", "--csv", csv.string(),
                  "-o", out.string()})
              .code == 0);
  const auto j = load(out);
  CHECK(j["comparison"]["verdict"] == "DISTINCT");
  for (const auto& g : j["graphs"]) {
    CHECK(g["params"]["m"] == 16);
    CHECK(g["params"]["k"] == 6);
    CHECK(g["params"]["nu"] == 2);
    CHECK(g["params"]["mu"] == 2);
    CHECK(g["oracle"]["three_angle_residual"].get<double>() < 1e-8);
  }
  CHECK(slurp(csv).rfind("graph,label,value\n", 0) == 0);

  CHECK(invoke({"srg", data("house.edges"), "-o", out.string()}).code == npforge::cli::kBadInput);
}

TEST_CASE("misc subcommands cross-check their oracles") {
  const auto dir = scratch("misc");
  auto out = (dir / "f.json").string();
  REQUIRE(invoke({"misc", "factor", "--n", "91", "--oracle", "-o", out}).code == 0);
  CHECK(load(out)["nontrivial_factor"] == 7);
  REQUIRE(invoke({"misc", "factor", "--n", "97", "-o", out}).code == 0);
  CHECK(load(out)["nontrivial_factor"].is_null());

  out = (dir / "m.json").string();
  REQUIRE(invoke({"misc", "monomials", data("unsat2.cnf"), "--oracle", "-o", out}).code == 0);
  CHECK(load(out)["product_sum"] == "0");

  out = (dir / "k.json").string();
  REQUIRE(invoke({"misc", "clique", data("house.edges"), "--k", "3", "--oracle", "-o", out}).code == 0);
  CHECK(load(out)["has_clique"] == true);
  REQUIRE(invoke({"misc", "clique", data("star.edges"), "--k", "3", "-o", out}).code == 0);
  CHECK(load(out)["has_clique"] == false);

  out = (dir / "v.json").string();
  REQUIRE(invoke({"misc", "cover", data("star.edges"), "--set", "0", "--oracle", "-o", out}).code == 0);
  CHECK(load(out)["incidence_feasible"] == true);
  REQUIRE(invoke({"misc", "cover", data("star.edges"), "--set", "1,2", "--oracle", "-o", out}).code == 0);
  CHECK(load(out)["incidence_feasible"] == false);
  CHECK(invoke({"misc", "cover", data("star.edges"), "--set", "9", "-o", out}).code == npforge::cli::kBadInput);

  out = (dir / "c.json").string();
  REQUIRE(invoke({"misc", "coloring", data("house.edges"), "--oracle", "-o", out}).code == 0);
  CHECK(load(out)["zeros"].get<int>() > 0);

  const auto poly = (dir / "p.json").string();
  REQUIRE(invoke({"encode", data("sat3.cnf"), "-o", poly}).code == 0);
  out = (dir / "s.json").string();
  for (const std::string kind : {"logistic", "arctan"}) {
    REQUIRE(invoke({"misc", "sigmoid", poly, "--kind", kind, "--starts", "8", "--oracle", "-o", out}).code == 0);
    CHECK(load(out)["kind"] == kind);
  }
  CHECK(invoke({"misc", "sigmoid", poly, "--kind", "tanh", "-o", out}).code == npforge::cli::kBadInput);
}
