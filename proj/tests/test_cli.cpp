#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using trapqm::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"trapqm"};
  argv.insert(argv.end(), args);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string column(const std::vector<std::vector<std::string>>& rows, std::size_t row, const std::string& name) {
  const auto& header = rows.at(0);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return rows.at(row).at(i);
  }
  FAIL("missing column " << name);
  return {};
}

double number(const std::vector<std::vector<std::string>>& rows, std::size_t row, const std::string& name) {
  return std::stod(column(rows, row, name));
}

}  // namespace

TEST_CASE("largen subcommand") {
  const Outcome printed = invoke({"largen", "quartic", "--dimension", "1", "--mode", "paper"});
  REQUIRE(printed.code == 0);
  const auto rows = parse_csv(printed.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(number(rows, 1, "total") - 0.61) < 0.005);

  const Outcome harm = invoke({"largen", "harmonic", "--dimension", "3"});
  REQUIRE(harm.code == 0);
  CHECK(number(parse_csv(harm.out), 1, "total") == 1.5);

  const Outcome three = invoke({"largen", "quartic", "--dimension", "3", "--mode", "paper"});
  CHECK(number(parse_csv(three.out), 1, "total") == doctest::Approx(1.7394).epsilon(1e-4));

  const Outcome derived = invoke({"largen", "quartic", "--mode", "derived"});
  CHECK(number(parse_csv(derived.out), 1, "total") == doctest::Approx(0.476018).epsilon(1e-5));

  CHECK(invoke({"largen"}).code == 2);
  CHECK(invoke({"largen", "cubic"}).code == 2);
  CHECK(invoke({"largen", "quartic", "--dimension", "0"}).code == 2);
  CHECK(invoke({"largen", "quartic", "--mode", "guess"}).code == 2);
}

TEST_CASE("gpe1d subcommand") {
  const Outcome r = invoke({"gpe1d", "--lambda", "1"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(column(rows, 1, "method") == "tf");
  CHECK(number(rows, 1, "energy") == doctest::Approx(0.655185).epsilon(1e-6));
  CHECK(column(rows, 2, "method") == "variational");
  CHECK(number(rows, 2, "energy") == doctest::Approx(0.866).epsilon(1e-3));
  CHECK(number(rows, 3, "energy") == doctest::Approx(0.81672).epsilon(1e-5));
  CHECK(column(rows, 3, "status") == "ok");

  CHECK(invoke({"gpe1d", "--lambda", "1", "--methods", "nope"}).code == 2);
  CHECK(invoke({"gpe1d"}).code == 2);
  CHECK(invoke({"gpe1d", "--lambda", "0", "--methods", "tf"}).code == 2);

  const Outcome kept = invoke({"--keep-going", "gpe1d", "--lambda", "0", "--methods", "tf,variational"});
  REQUIRE(kept.code == 0);
  const auto krows = parse_csv(kept.out);
  REQUIRE(krows.size() == 3);
  CHECK(column(krows, 1, "status") != "ok");
  CHECK(column(krows, 2, "status") == "ok");
}

TEST_CASE("gpend subcommand") {
  const Outcome g = invoke({"gpend", "--gamma", "0.217648"});
  REQUIRE(g.code == 0);
  CHECK(number(parse_csv(g.out), 1, "e_bar") == doctest::Approx(1.774).epsilon(3e-4));

  const Outcome phys = invoke({"gpend", "--atoms", "200", "--mass-amu", "133", "--omega", "62.83185307179586",
                               "--scattering-length-m", "3e-9"});
  REQUIRE(phys.code == 0);
  CHECK(number(parse_csv(phys.out), 1, "gamma") == doctest::Approx(0.21765).epsilon(1e-4));

  CHECK(invoke({"gpend"}).code == 2);
  CHECK(invoke({"gpend", "--gamma", "1", "--atoms", "200", "--mass-amu", "133", "--omega", "1",
                "--scattering-length-m", "3e-9"}).code == 2);
  CHECK(invoke({"gpend", "--atoms", "200"}).code == 2);
  CHECK(invoke({"gpend", "--dimension", "2", "--gamma", "1"}).code == 2);
  CHECK(invoke({"gpend", "--gamma", "-1"}).code == 2);

  const Outcome frac = invoke({"gpend", "--dimension", "2.5", "--gamma", "1"});
  REQUIRE(frac.code == 0);
  CHECK(number(parse_csv(frac.out), 1, "e_bar") == doctest::Approx(2.25944831).epsilon(1e-8));
}

TEST_CASE("table1 subcommand") {
  const Outcome all = invoke({"table1"});
  REQUIRE(all.code == 0);
  CHECK(parse_csv(all.out).size() == 14);

  const Outcome r = invoke({"table1", "--atoms", "6000,16000"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(number(rows, 1, "e_bar_tf_largen") - 3.571) < 0.005);
  CHECK(std::abs(number(rows, 2, "e_bar_tf_largen") - 4.954) < 0.005);

  const Outcome oracle = invoke({"table1", "--oracle", "--atoms", "200"});
  REQUIRE(oracle.code == 0);
  CHECK(number(parse_csv(oracle.out), 1, "mu_oracle") == doctest::Approx(1.65675).epsilon(1e-5));

  CHECK(invoke({"table1", "--atoms", "0"}).code == 2);
}

TEST_CASE("sweep subcommand") {
  const Outcome r = invoke({"sweep", "--lambda", "0.5:20:40", "--methods", "tf,variational,tf-wkb"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows.size() == 121);
  for (std::size_t i = 1; i + 2 < rows.size(); i += 3) {
    CHECK(number(rows, i, "energy") < number(rows, i + 2, "energy"));
  }

  const Outcome g = invoke({"sweep", "--gamma", "0.01:10:5", "--log", "--methods", "tf-largen"});
  REQUIRE(g.code == 0);
  const auto grows = parse_csv(g.out);
  CHECK(grows.size() == 6);
  CHECK(number(grows, 2, "gamma") == doctest::Approx(0.01 * std::pow(1000.0, 0.25)).epsilon(1e-8));

  CHECK(invoke({"sweep", "--lambda", "0.5:20:40", "--methods", ""}).code == 2);
  CHECK(invoke({"sweep", "--lambda", "0.5:20"}).code == 2);
  CHECK(invoke({"sweep", "--lambda", "a:b:c"}).code == 2);
  CHECK(invoke({"sweep"}).code == 2);
  CHECK(invoke({"sweep", "--lambda", "1:2:3", "--gamma", "1:2:3"}).code == 2);
}

TEST_CASE("output formats") {
  const Outcome csv = invoke({"gpe1d", "--lambda", "2"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("lambda,method,energy,status\n", 0) == 0);
  CHECK(csv.out.back() == '\n');

  const Outcome json = invoke({"--format", "json", "gpe1d", "--lambda", "2"});
  REQUIRE(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  REQUIRE(doc.contains("rows"));
  REQUIRE(doc.contains("meta"));
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["meta"]["command"] == "gpe1d");
  CHECK(doc["meta"]["tolerance"]["abs_tol"].get<double>() == 1e-13);
  CHECK(doc["rows"][0]["energy"].get<double>() == doctest::Approx(0.655185 * std::cbrt(4.0)).epsilon(1e-6));

  CHECK(invoke({"--format", "xml", "gpe1d", "--lambda", "2"}).code == 2);
  CHECK(invoke({"--precision", "2", "gpe1d", "--lambda", "2"}).code == 2);
  CHECK(invoke({"--precision", "18", "gpe1d", "--lambda", "2"}).code == 2);

  const Outcome p3 = invoke({"--precision", "3", "gpe1d", "--lambda", "1", "--methods", "tf"});
  CHECK(column(parse_csv(p3.out), 1, "energy") == "0.655");
  const Outcome p17 = invoke({"--precision", "17", "gpe1d", "--lambda", "1", "--methods", "tf"});
  CHECK(number(parse_csv(p17.out), 1, "energy") == doctest::Approx(0.5 * std::pow(1.5, 2.0 / 3.0)).epsilon(1e-16));
}

TEST_CASE("determinism") {
  const Outcome a = invoke({"--format", "json", "table1", "--oracle", "--atoms", "200,2000"});
  const Outcome b = invoke({"--format", "json", "table1", "--oracle", "--atoms", "200,2000"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("config file and output path") {
  const auto dir = std::filesystem::temp_directory_path() / "trapqm_cli_test";
  std::filesystem::create_directories(dir);
  const auto config = dir / "run.ini";
  {
    std::ofstream f(config);
    f << "precision = 4\nformat = csv\n";
  }
  const std::string config_str = config.string();
  const Outcome r = invoke({"--config", config_str.c_str(), "gpe1d", "--lambda", "1", "--methods", "tf"});
  REQUIRE(r.code == 0);
  CHECK(column(parse_csv(r.out), 1, "energy") == "0.6552");

  // command line wins over the file
  const Outcome cl = invoke({"--config", config_str.c_str(), "--precision", "6", "gpe1d", "--lambda", "1",
                             "--methods", "tf"});
  CHECK(column(parse_csv(cl.out), 1, "energy") == "0.655185");

  {
    std::ofstream f(config);
    f << "no_such_option = 1\n";
  }
  CHECK(invoke({"--config", config_str.c_str(), "gpe1d", "--lambda", "1"}).code == 2);

  const auto target = dir / "out.csv";
  const std::string target_str = target.string();
  const Outcome file = invoke({"--output", target_str.c_str(), "gpe1d", "--lambda", "1", "--methods", "tf"});
  REQUIRE(file.code == 0);
  CHECK(file.out.empty());
  std::ifstream in(target);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().rfind("lambda,method,energy,status\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("numerical failure exit code") {
  CHECK(invoke({"--max-steps", "2", "gpe1d", "--lambda", "5", "--methods", "exact"}).code == 3);
}

TEST_CASE("version") {
  const Outcome v = invoke({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("1.0.0") != std::string::npos);
}
