#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "shiftfem/shiftfem.hpp"

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output path '" + path + "'");
  out << text;
}

shiftfem::MeshVariant parse_variant(const std::string& name) {
  return name == "coarse" ? shiftfem::MeshVariant::Coarse : shiftfem::MeshVariant::Standard;
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, s.find_last_not_of(" \t\r") - begin + 1);
}

// flat key=value file; '#' starts a comment line
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line without '=': " + line);
    kv[trimmed(line.substr(0, eq))] = trimmed(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(std::stod(item));
  return values;
}

// config keys fill whatever the command line left untouched
void apply_study_config(const std::string& path, const CLI::App& study,
                        shiftfem::StudyConfig& cfg, std::string& variant,
                        std::string& format, std::string& output,
                        std::string& rate_basis) {
  const auto kv = read_config(path);
  const auto fresh = [&](const char* flag) { return study.count(flag) == 0; };
  const auto member = [](const std::string& value, std::initializer_list<const char*> set,
                         const char* key) {
    for (const char* s : set)
      if (value == s) return value;
    throw std::runtime_error("invalid config value '" + value + "' for key '" + key + "'");
  };
  for (const auto& [key, value] : kv) {
    if (key == "problem") {
      if (fresh("--problem")) cfg.problem = value;
    } else if (key == "variant") {
      if (fresh("--variant")) variant = member(value, {"standard", "coarse"}, "variant");
    } else if (key == "degree") {
      if (fresh("--degree")) cfg.degree = std::stoi(value);
    } else if (key == "epsilon") {
      if (fresh("--epsilon")) cfg.epsilon = std::stod(value);
    } else if (key == "H") {
      if (fresh("--H")) cfg.H_list = parse_double_list(value);
    } else if (key == "reference-degree") {
      if (fresh("--reference-degree")) cfg.reference_degree = std::stoi(value);
    } else if (key == "reference-H") {
      if (fresh("--reference-H")) cfg.reference_H = std::stod(value);
    } else if (key == "quad-points") {
      if (fresh("--quad-points")) cfg.quad_points = std::stoi(value);
    } else if (key == "theta") {
      if (fresh("--theta")) cfg.omission_theta = std::stod(value);
    } else if (key == "rate-basis") {
      if (fresh("--rate-basis")) rate_basis = member(value, {"cells", "H"}, "rate-basis");
    } else if (key == "format") {
      if (fresh("--format")) format = member(value, {"csv", "text"}, "format");
    } else if (key == "output") {
      if (fresh("--output")) output = value;
    } else {
      throw std::runtime_error("unknown config key '" + key + "'");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "1D arbitrary-order Galerkin solver for singularly perturbed\n"
      "convection-diffusion problems with a unit shift, on graded meshes"};
  app.require_subcommand(1);

  // study: H sweep against a fine-mesh reference solution
  shiftfem::StudyConfig cfg;
  std::string variant = "standard";
  std::string format = "text";
  std::string output;
  std::string rate_basis = "cells";
  CLI::App* study = app.add_subcommand("study", "run an H sweep and emit a convergence table");
  study->add_option("--problem", cfg.problem, "registry problem name")
      ->capture_default_str();
  study->add_option("--variant", variant, "mesh family")
      ->check(CLI::IsMember({"standard", "coarse"}))
      ->capture_default_str();
  study->add_option("--degree", cfg.degree, "polynomial degree k")->capture_default_str();
  study->add_option("--epsilon", cfg.epsilon, "perturbation parameter")
      ->capture_default_str();
  study->add_option("--H", cfg.H_list, "comma list of grading parameters, decreasing")
      ->delimiter(',');
  study->add_option("--reference-degree", cfg.reference_degree)->capture_default_str();
  study->add_option("--reference-H", cfg.reference_H)->capture_default_str();
  study->add_option("--quad-points", cfg.quad_points,
                    "Gauss points per (sub)interval; 0 = degree+2");
  study->add_option("--theta", cfg.omission_theta, "final-cell omission threshold")
      ->capture_default_str();
  study->add_option("--rate-basis", rate_basis, "rate column denominator")
      ->check(CLI::IsMember({"cells", "H"}))
      ->capture_default_str();
  study->add_option("--format", format)->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
  study->add_option("--output", output, "write the table here instead of stdout");
  std::string config_path;
  study->add_option("--config", config_path, "flat key=value file; command line wins");

  // verify: named invariant suites
  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "mesh|quadrature|assembly|interpolation|coercivity|all")
      ->required();

  // mesh: build and export one mesh
  double mesh_H = 0.1;
  double mesh_eps = 1e-6;
  double mesh_theta = shiftfem::MeshParams{}.omission_theta;
  int mesh_degree = 1;
  std::string mesh_variant = "standard";
  std::string mesh_format = "plain";
  std::string mesh_output;
  CLI::App* meshcmd = app.add_subcommand("mesh", "generate a mesh and export its nodes");
  meshcmd->add_option("--H", mesh_H)->capture_default_str();
  meshcmd->add_option("--epsilon", mesh_eps)->capture_default_str();
  meshcmd->add_option("--degree", mesh_degree)->capture_default_str();
  meshcmd->add_option("--variant", mesh_variant)
      ->check(CLI::IsMember({"standard", "coarse"}))
      ->capture_default_str();
  meshcmd->add_option("--theta", mesh_theta)->capture_default_str();
  meshcmd->add_option("--format", mesh_format, "plain = one coordinate per line")
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();
  meshcmd->add_option("--output", mesh_output);

  // matrix: coordinate-format dump of the assembled system
  std::string mat_problem = "paper-example";
  std::string mat_variant = "standard";
  std::string mat_output;
  double mat_H = 0.5;
  double mat_eps = 1e-2;
  int mat_degree = 1;
  int mat_quad = 0;
  CLI::App* matrix = app.add_subcommand("matrix", "dump the assembled matrix (row col value)");
  matrix->add_option("--problem", mat_problem)->capture_default_str();
  matrix->add_option("--variant", mat_variant)
      ->check(CLI::IsMember({"standard", "coarse"}))
      ->capture_default_str();
  matrix->add_option("--degree", mat_degree)->capture_default_str();
  matrix->add_option("--epsilon", mat_eps)->capture_default_str();
  matrix->add_option("--H", mat_H)->capture_default_str();
  matrix->add_option("--quad-points", mat_quad);
  matrix->add_option("--output", mat_output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*study) {
      if (!config_path.empty())
        apply_study_config(config_path, *study, cfg, variant, format, output, rate_basis);
      cfg.variant = parse_variant(variant);
      cfg.rate_basis = rate_basis == "cells" ? shiftfem::RateBasis::Cells
                                             : shiftfem::RateBasis::GradingParameter;
      const shiftfem::StudyResult result = shiftfem::run_study(cfg);
      if (!result.coarse_assumption_ok)
        std::cerr << "warning: exp(-eps^{-1/k}) <= H^{k-1} fails for some H; "
                     "the coarse mesh may lose accuracy there\n";
      emit(format == "csv" ? shiftfem::to_csv(result.table)
                           : shiftfem::to_text(result.table),
           output);
      return 0;
    }
    if (*verify) {
      const shiftfem::VerifyReport report = shiftfem::run_suite(suite);
      for (const std::string& line : report.lines) std::cout << line << '\n';
      std::cout << report.suite << ": " << (report.passed ? "PASS" : "FAIL") << '\n';
      return report.passed ? 0 : 1;
    }
    if (*meshcmd) {
      const shiftfem::MeshParams params{mesh_H, mesh_eps, mesh_degree,
                                        parse_variant(mesh_variant), mesh_theta};
      const shiftfem::Mesh1D mesh = shiftfem::build_mesh(params);
      std::ostringstream os;
      if (mesh_format == "csv")
        shiftfem::write_csv(mesh, os);
      else
        shiftfem::write_nodes(mesh, os);
      emit(os.str(), mesh_output);
      return 0;
    }
    if (*matrix) {
      const shiftfem::ProblemSpec spec = shiftfem::registry_get(mat_problem, mat_eps);
      const shiftfem::MeshParams params{mat_H, mat_eps, mat_degree,
                                        parse_variant(mat_variant),
                                        shiftfem::MeshParams{}.omission_theta};
      const shiftfem::FeSpace space(shiftfem::build_mesh(params), mat_degree);
      const shiftfem::LinearSystem sys = shiftfem::assemble(spec, space, mat_quad);
      std::ostringstream os;
      sys.write_coo(os);
      emit(os.str(), mat_output);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
