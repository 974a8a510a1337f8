#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "trapqm/constants.hpp"
#include "trapqm/gpe1d.hpp"
#include "trapqm/gpend.hpp"
#include "trapqm/largen.hpp"
#include "trapqm/oracle.hpp"

namespace trapqm::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct GlobalOptions {
  std::string format = "csv";
  std::string output = "-";
  int precision = 9;
  double abs_tol = 1e-13;
  double rel_tol = 0.0;
  int max_iterations = 400;
  double time_step = oracle::FlowParams{}.time_step;
  long max_steps = oracle::FlowParams{}.max_steps;
  double mu_tol = oracle::FlowParams{}.mu_tol;
  long grid_points = 4001;
  bool keep_going = false;

  Tolerance tolerance() const {
    Tolerance t{abs_tol, rel_tol, max_iterations};
    t.validate();
    return t;
  }
  oracle::FlowParams flow() const {
    oracle::FlowParams f{time_step, max_steps, mu_tol};
    f.validate();
    return f;
  }
};

std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, precision);
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(const Cell& cell, int precision) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d, precision);
  if (const auto* l = std::get_if<long>(&cell)) return std::to_string(*l);
  std::string s = std::get<std::string>(cell);
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

nlohmann::json json_value(const Cell& cell, int precision) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    const std::string text = format_double(*d, precision);
    double rounded = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), rounded);
    return rounded;
  }
  if (const auto* l = std::get_if<long>(&cell)) return *l;
  return std::get<std::string>(cell);
}

nlohmann::json meta(const GlobalOptions& g, const std::string& command) {
  nlohmann::json m;
  m["version"] = kVersion;
  m["command"] = command;
  m["tolerance"] = {{"abs_tol", g.abs_tol}, {"rel_tol", g.rel_tol}, {"max_iterations", g.max_iterations}};
  m["flow"] = {{"time_step", g.time_step}, {"max_steps", g.max_steps}, {"mu_tol", g.mu_tol}};
  m["grid"] = {{"points", g.grid_points}};
  m["constants"] = {{"hbar", constants::hbar}, {"amu", constants::amu}};
  return m;
}

std::string render(const Table& table, const GlobalOptions& g, const std::string& command) {
  if (g.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = json_value(row[i], g.precision);
      rows.push_back(std::move(obj));
    }
    nlohmann::json doc = {{"rows", rows}, {"meta", meta(g, command)}};
    return doc.dump(2) + "\n";
  }
  std::string text;
  for (std::size_t i = 0; i < table.columns.size(); ++i) text += (i ? "," : "") + table.columns[i];
  text += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_field(row[i], g.precision);
    text += "\n";
  }
  return text;
}

void emit(const std::string& text, const GlobalOptions& g, std::ostream& out) {
  if (g.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + g.output);
  file << text;
}

// min:max:points, inclusive ends.
std::vector<double> parse_range(const std::string& text, bool geometric) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("range must be min:max:points, got '" + text + "'");

  auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw UsageError("malformed number '" + s + "' in range");
    }
    return v;
  };
  const double lo = number(parts[0]);
  const double hi = number(parts[1]);
  long points = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), points);
  if (res.ec != std::errc{} || res.ptr != parts[2].data() + parts[2].size()) {
    throw UsageError("malformed point count in range");
  }
  if (!(lo < hi) || points < 2) throw UsageError("range needs min < max and points >= 2");
  if (geometric && !(lo > 0.0)) throw UsageError("--log range needs min > 0");

  std::vector<double> values(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    values[static_cast<std::size_t>(i)] = geometric ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
  }
  values.back() = hi;
  return values;
}

std::vector<gpe1d::Method> parse_gpe1d_methods(const std::vector<std::string>& names) {
  if (names.empty()) throw UsageError("no methods given");
  std::vector<gpe1d::Method> methods;
  for (const auto& name : names) {
    const auto m = gpe1d::method_from_string(name);
    if (!m) throw UsageError("unknown method '" + name + "' (tf, variational, tf-wkb, tf-wkb-numeric, exact)");
    methods.push_back(*m);
  }
  return methods;
}

gpe1d::SweepOptions sweep_options(const GlobalOptions& g) {
  if (g.grid_points < 3) throw UsageError("--grid-points must be >= 3");
  return {g.flow(), g.grid_points, std::nullopt};
}

Table cmd_largen(const std::string& kind_name, int dimension, const std::string& mode_name) {
  const largen::PotentialKind kind =
      kind_name == "harmonic" ? largen::PotentialKind{largen::Harmonic{}} : largen::PotentialKind{largen::Quartic{}};
  const auto mode = mode_name == "derived" ? largen::CurvatureMode::Derived : largen::CurvatureMode::PaperPrinted;
  const EnergyEstimate e = largen::two_term_energy(kind, dimension, mode);
  Table t{{"kind", "dimension", "mode", "leading", "correction", "total", "xi0", "v_min", "v_second",
           "eps_correction"},
          {}};
  t.rows.push_back({kind_name, static_cast<long>(dimension), mode_name, e.leading, e.correction, e.value,
                    e.metadata.at("xi0"), e.metadata.at("v_min"), e.metadata.at("v_second"),
                    e.metadata.at("eps_correction")});
  return t;
}

Table cmd_gpe1d(double lambda, const std::vector<std::string>& names, const GlobalOptions& g) {
  const auto methods = parse_gpe1d_methods(names);
  const auto options = sweep_options(g);
  Table t{{"lambda", "method", "energy", "status"}, {}};
  for (gpe1d::Method m : methods) {
    try {
      t.rows.push_back({lambda, gpe1d::to_string(m), gpe1d::method_energy(m, lambda, options), std::string("ok")});
    } catch (const Error& e) {
      if (!g.keep_going) throw;
      t.rows.push_back({lambda, gpe1d::to_string(m), std::nan(""), std::string("error: ") + e.what()});
    }
  }
  return t;
}

struct PhysicalFlags {
  std::optional<long> atoms;
  std::optional<double> mass_amu;
  std::optional<double> omega;
  std::optional<double> scattering_length;

  int given() const {
    return int(atoms.has_value()) + int(mass_amu.has_value()) + int(omega.has_value()) +
           int(scattering_length.has_value());
  }
};

Table cmd_gpend(double dimension, std::optional<double> gamma_flag, const PhysicalFlags& phys, const GlobalOptions& g) {
  const int physical = phys.given();
  if (gamma_flag && physical > 0) throw UsageError("give either --gamma or the physical flags, not both");
  if (!gamma_flag && physical == 0) throw UsageError("give --gamma or --atoms/--mass-amu/--omega/--scattering-length-m");
  if (physical > 0 && physical < 4) {
    throw UsageError("physical coupling needs all of --atoms --mass-amu --omega --scattering-length-m");
  }
  if (!(dimension > 2.0)) throw UsageError("--dimension must be > 2");

  double gamma = 0.0;
  if (gamma_flag) {
    gamma = *gamma_flag;
  } else {
    if (dimension != 3.0) throw UsageError("physical flags only define a dimensionless coupling for --dimension 3");
    gamma = gpend::gamma_from_physical(
        gpend::PhysicalTrap(*phys.mass_amu * constants::amu, *phys.omega, *phys.scattering_length, *phys.atoms));
  }
  if (!(gamma >= 0.0)) throw UsageError("--gamma must be >= 0");

  const Tolerance tol = g.tolerance();
  const gpend::NdTfSolution s = dimension == 3.0
                                    ? gpend::solve_ebar_3d(gamma, tol)
                                    : gpend::solve_eps_general(dimension, 4.0 * std::numbers::pi * gamma, tol);
  Table t{{"dimension", "gamma", "eps", "e_bar", "r1", "r2", "residual"}, {}};
  t.rows.push_back({dimension, gamma, s.eps, s.e_bar, s.r1, s.r2, s.residual});
  return t;
}

Table cmd_table1(bool with_oracle, const std::vector<long>& atoms, double mass_amu, double omega, double a,
                 const GlobalOptions& g) {
  const gpend::PhysicalTrap base(mass_amu * constants::amu, omega, a, 1);
  const auto flow = g.flow();
  Table t{{"n", "gamma", "e_bar_tf_largen"}, {}};
  if (with_oracle) t.columns.push_back("mu_oracle");
  t.columns.push_back("status");
  for (long n : atoms) {
    const double gamma = gpend::gamma_from_physical(base.with_particle_count(n));
    std::vector<Cell> row{n, gamma};
    try {
      row.push_back(gpend::solve_ebar_3d(gamma, g.tolerance()).e_bar);
      if (with_oracle) {
        row.push_back(
            oracle::gpe_ground_radial3d(gamma, oracle::default_grid_radial3d(gamma, g.grid_points), flow).energy);
      }
      row.push_back(std::string("ok"));
    } catch (const NumericalFailure& e) {
      if (!g.keep_going) throw;
      while (row.size() + 1 < t.columns.size()) row.push_back(std::nan(""));
      row.push_back(std::string("error: ") + e.what());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_sweep(const std::optional<std::string>& lambda_range, const std::optional<std::string>& gamma_range,
                bool geometric, const std::vector<std::string>& names, const GlobalOptions& g) {
  if (lambda_range.has_value() == gamma_range.has_value()) throw UsageError("give exactly one of --lambda or --gamma");
  if (names.empty()) throw UsageError("no methods given");

  if (lambda_range) {
    const auto lambdas = parse_range(*lambda_range, geometric);
    const auto methods = parse_gpe1d_methods(names);
    Table t{{"lambda", "method", "energy", "status"}, {}};
    for (const auto& row : gpe1d::sweep_methods(lambdas, methods, sweep_options(g))) {
      t.rows.push_back({row.lambda, gpe1d::to_string(row.method), row.energy,
                        row.error ? "error: " + *row.error : std::string("ok")});
    }
    return t;
  }

  const auto gammas = parse_range(*gamma_range, geometric);
  for (const auto& name : names) {
    if (name != "tf-largen" && name != "oracle3d") {
      throw UsageError("unknown coupling-sweep method '" + name + "' (tf-largen, oracle3d)");
    }
  }
  const auto flow = g.flow();
  const Tolerance tol = g.tolerance();
  Table t{{"gamma", "method", "energy", "status"}, {}};
  for (double gamma : gammas) {
    for (const auto& name : names) {
      try {
        const double e = name == "tf-largen"
                             ? gpend::solve_ebar_3d(gamma, tol).e_bar
                             : oracle::gpe_ground_radial3d(gamma, oracle::default_grid_radial3d(gamma, g.grid_points),
                                                           flow)
                                   .energy;
        t.rows.push_back({gamma, name, e, std::string("ok")});
      } catch (const Error& e) {
        t.rows.push_back({gamma, name, std::nan(""), std::string("error: ") + e.what()});
      }
    }
  }
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground-state energies of trapped quantum systems: large-N, Thomas-Fermi and reference solvers",
               "trapqm"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read flat 'key = value' options (keys are the long flag names)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", g.output, "Output path, '-' for standard output")->capture_default_str();
  app.add_option("--precision", g.precision, "Significant digits")->check(CLI::Range(3, 17))->capture_default_str();
  app.add_option("--abs-tol", g.abs_tol, "Absolute tolerance of root solves")->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "Relative tolerance")->capture_default_str();
  app.add_option("--max-iterations", g.max_iterations, "Iteration cap for root solves")->capture_default_str();
  app.add_option("--time-step", g.time_step, "Gradient-flow time step")->capture_default_str();
  app.add_option("--max-steps", g.max_steps, "Gradient-flow step cap")->capture_default_str();
  app.add_option("--mu-tol", g.mu_tol, "Gradient-flow chemical-potential tolerance")->capture_default_str();
  app.add_option("--grid-points", g.grid_points, "Points of the reference-solver grids")->capture_default_str();
  app.add_flag("--keep-going", g.keep_going, "Mark failed rows instead of aborting");

  std::string kind_name;
  int dimension = 1;
  std::string mode_name = "paper";
  auto* largen_cmd = app.add_subcommand("largen", "Two-term 1/N energy of the harmonic or quartic oscillator");
  largen_cmd->add_option("kind", kind_name, "Potential")->required()->check(CLI::IsMember({"harmonic", "quartic"}));
  largen_cmd->add_option("--dimension", dimension, "Spatial dimension N")->check(CLI::PositiveNumber)->capture_default_str();
  largen_cmd->add_option("--mode", mode_name, "Curvature constants")->check(CLI::IsMember({"paper", "derived"}))->capture_default_str();

  double lambda = 0.0;
  std::vector<std::string> gpe_methods{"tf", "variational", "tf-wkb"};
  auto* gpe1d_cmd = app.add_subcommand("gpe1d", "1D GPE energies at one coupling");
  gpe1d_cmd->add_option("--lambda", lambda, "Dimensionless coupling")->required();
  gpe1d_cmd->add_option("--methods", gpe_methods, "tf, variational, tf-wkb, tf-wkb-numeric, exact")->delimiter(',');

  double nd_dimension = 3.0;
  std::optional<double> gamma_flag;
  PhysicalFlags phys;
  auto* gpend_cmd = app.add_subcommand("gpend", "Large-N Thomas-Fermi chemical potential in N dimensions");
  gpend_cmd->add_option("--dimension", nd_dimension, "Spatial dimension (> 2, real)")->capture_default_str();
  gpend_cmd->add_option("--gamma", gamma_flag, "Coupling n a / a_osc");
  gpend_cmd->add_option("--atoms", phys.atoms, "Atom count");
  gpend_cmd->add_option("--mass-amu", phys.mass_amu, "Atom mass in amu");
  gpend_cmd->add_option("--omega", phys.omega, "Trap angular frequency in rad/s");
  gpend_cmd->add_option("--scattering-length-m", phys.scattering_length, "Scattering length in metres");

  bool with_oracle = false;
  std::vector<long> atoms(constants::table1_atom_counts.begin(), constants::table1_atom_counts.end());
  double t1_mass = constants::cs_mass_amu;
  double t1_omega = constants::cs_omega;
  double t1_a = constants::cs_scattering_length;
  auto* table1_cmd = app.add_subcommand("table1", "Caesium trap table: large-N Thomas-Fermi vs reference solver");
  table1_cmd->add_flag("--oracle", with_oracle, "Also run the radial GPE reference solver");
  table1_cmd->add_option("--atoms", atoms, "Atom counts")->delimiter(',');
  table1_cmd->add_option("--mass-amu", t1_mass, "Atom mass in amu")->capture_default_str();
  table1_cmd->add_option("--omega", t1_omega, "Trap angular frequency in rad/s")->capture_default_str();
  table1_cmd->add_option("--scattering-length-m", t1_a, "Scattering length in metres")->capture_default_str();

  std::optional<std::string> lambda_range;
  std::optional<std::string> gamma_range;
  bool geometric = false;
  std::vector<std::string> sweep_methods;
  auto* sweep_cmd = app.add_subcommand("sweep", "Energy curves over a coupling range");
  sweep_cmd->add_option("--lambda", lambda_range, "1D coupling range min:max:points");
  sweep_cmd->add_option("--gamma", gamma_range, "3D coupling range min:max:points");
  sweep_cmd->add_flag("--log", geometric, "Geometric spacing");
  sweep_cmd->add_option("--methods", sweep_methods, "Methods (1D: as gpe1d; 3D: tf-largen, oracle3d)")
      ->delimiter(',')
      ->required();

  for (auto* sub : {largen_cmd, gpe1d_cmd, gpend_cmd, table1_cmd, sweep_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Table table;
    std::string command;
    if (*largen_cmd) {
      command = "largen";
      table = cmd_largen(kind_name, dimension, mode_name);
    } else if (*gpe1d_cmd) {
      command = "gpe1d";
      table = cmd_gpe1d(lambda, gpe_methods, g);
    } else if (*gpend_cmd) {
      command = "gpend";
      table = cmd_gpend(nd_dimension, gamma_flag, phys, g);
    } else if (*table1_cmd) {
      command = "table1";
      if (atoms.empty()) throw UsageError("--atoms needs at least one count");
      table = cmd_table1(with_oracle, atoms, t1_mass, t1_omega, t1_a, g);
    } else {
      command = "sweep";
      table = cmd_sweep(lambda_range, gamma_range, geometric, sweep_methods, g);
    }
    emit(render(table, g, command), g, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace trapqm::cli
