#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trilat/commands.hpp"

namespace {

int emit(const trilat::cli::CommandResult& r) {
  std::cout << r.out;
  if (!r.err.empty()) std::cerr << "trilat: " << r.err << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace trilat::cli;
  CLI::App app{"trilat: global minimizers of the three-sensor trilateration objective"};
  app.require_subcommand(1);

  std::string path;
  std::optional<std::uint64_t> seed;
  bool json_out = false, csv_out = false, oracle_check = false;
  double tol = 1e-9;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", path, "instance JSON")->required();
  solve->add_flag("--oracle-check", oracle_check, "cross-check against the brute-force oracle");
  auto* fj = solve->add_flag("--json", json_out, "JSON output (default)");
  auto* fc = solve->add_flag("--csv", csv_out, "CSV output");
  fj->excludes(fc);
  solve->add_option("--tol", tol, "relative tie tolerance");
  solve->add_option("--seed", seed, "override the generator seed");

  std::string table;
  auto* tbl = app.add_subcommand("table", "regenerate a stored objective table as CSV");
  tbl->add_option("fixture", table, "table2 | table3 | table4")->required();

  SweepSpec sweep;
  std::vector<double> d1_range{0.1, 5.0}, d3_range{0.1, 6.0};
  auto* sw = app.add_subcommand("sweep", "multiplicity phase diagram over (d1, d3)");
  sw->add_option("--r", sweep.r)->required();
  sw->add_option("--s", sweep.s)->required();
  sw->add_option("--d1", d1_range, "d1 range: lo hi")->expected(2);
  sw->add_option("--d3", d3_range, "d3 range: lo hi")->expected(2);
  sw->add_option("--steps", sweep.steps, "cells per axis");
  sw->add_option("--tol", sweep.tol);

  int contour_res = 400;
  auto* ct = app.add_subcommand("contour", "objective samples as CSV (x, y, O)");
  ct->add_option("instance", path)->required();
  ct->add_option("--resolution", contour_res);
  ct->add_option("--seed", seed);

  auto* th = app.add_subcommand("thresholds", "threshold bundle of an isosceles instance");
  th->add_option("instance", path)->required();
  th->add_option("--tol", tol);

  OracleFlags oflags;
  auto* orc = app.add_subcommand("oracle", "brute-force global minimization only");
  orc->add_option("instance", path)->required();
  orc->add_option("--resolution", oflags.resolution);
  orc->add_option("--rounds", oflags.rounds);
  orc->add_option("--factor", oflags.factor);
  orc->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kSchema;
  }

  if (solve->parsed()) {
    SolveFlags f;
    f.oracle_check = oracle_check;
    f.format = csv_out ? Format::Csv : Format::Json;
    f.tol = tol;
    f.seed = seed;
    return emit(cmd_solve(path, f));
  }
  if (tbl->parsed()) return emit(cmd_table(table));
  if (sw->parsed()) {
    sweep.d1_lo = d1_range[0];
    sweep.d1_hi = d1_range[1];
    sweep.d3_lo = d3_range[0];
    sweep.d3_hi = d3_range[1];
    return emit(cmd_sweep(sweep));
  }
  if (ct->parsed()) return emit(cmd_contour(path, contour_res, seed));
  if (th->parsed()) return emit(cmd_thresholds(path, tol));
  oflags.seed = seed;
  return emit(cmd_oracle(path, oflags));
}
