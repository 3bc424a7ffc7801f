#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "smale/cli_io.hpp"

namespace {

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw smale::ValidationError("cannot write " + temp.string());
    out << text;
    out.flush();
    if (!out) throw smale::ValidationError("cannot write " + temp.string());
  }
  fs::rename(temp, target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral triples on heteroclinic groupoids of shifts of finite type"};
  app.set_version_flag("--version", "smale-spectra 1.0.0");

  std::string command;
  std::string config;
  std::string out_path;
  std::string window;
  smale::Overrides o;
  smale::Coord n_max = 0;
  double t = 0, s = 0, tol = 0;

  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(smale::command_names()));
  app.add_option("--config", config, "Shift configuration (JSON)")->required()->check(CLI::ExistingFile);
  auto* n_opt = app.add_option("--n-max", n_max, "Largest shell index")->check(CLI::PositiveNumber);
  auto* t_opt = app.add_option("--t", t, "Heat parameter");
  auto* s_opt = app.add_option("--s", s, "Zeta exponent");
  auto* tol_opt = app.add_option("--tol", tol, "Absolute tolerance");
  auto* w_opt = app.add_option("--window", window, "Regression window A:B");
  app.add_option("--out", out_path, "Write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*n_opt) o.n_max = n_max;
    if (*t_opt) o.t = t;
    if (*s_opt) o.s = s;
    if (*tol_opt) o.tol = tol;
    if (*w_opt) o.window = smale::parse_window(window);

    const smale::ShiftConfig cfg = smale::load_config(config);
    const smale::RunReport report = smale::run(command, cfg, o);
    std::cerr << "inputs " << report.inputs_digest << "\n";
    const std::string csv = report.to_csv();
    if (out_path.empty())
      std::cout << csv;
    else
      write_atomically(out_path, csv);
    return report.success ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
