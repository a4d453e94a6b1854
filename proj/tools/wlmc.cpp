// Batch front end for the worldline Casimir engine: ensemble generation,
// temperature sweeps, analytic reference curves, and comparison reports.
// Every command is a pure function of its configuration and input files,
// and output bytes do not depend on the worker-thread count.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wlmc/csv.hpp"
#include "wlmc/errors.hpp"
#include "wlmc/estimator.hpp"
#include "wlmc/geometry.hpp"
#include "wlmc/loopgen.hpp"
#include "wlmc/parallel.hpp"
#include "wlmc/reference.hpp"
#include "wlmc/thermal.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitCompareFail = 3;

/// Writes content through a temporary sibling file and renames it into
/// place, so a failed command never leaves a partial output behind.
void write_file_atomically(const std::string& path, const std::string& content) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw wlmc::IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw wlmc::IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw wlmc::IoError("cannot move output into place at '" + path + "'");
  }
}

/// Flat key=value configuration. Lines are `key=value`, blank, or
/// # comments; keys are long option names without the leading dashes.
/// Values from the file are injected before the command-line arguments,
/// so with take-last option semantics, later always wins.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wlmc::IoError("cannot open config '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw wlmc::ValidationError("config '" + path + "': expected key=value, got '" + line +
                                  "'");
    }
    std::string key = line.substr(first, eq - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);
    const auto vstart = value.find_first_not_of(" \t");
    value = vstart == std::string::npos ? "" : value.substr(vstart);
    if (key.empty()) {
      throw wlmc::ValidationError("config '" + path + "': empty key in '" + line + "'");
    }
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

/// Extracts `--config FILE` (or --config=FILE) from the raw arguments and
/// splices the file's tokens in right after the subcommand name.
std::vector<std::string> assemble_arguments(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw wlmc::ValidationError("--config needs a file argument");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (!config_path.empty()) {
    if (args.empty()) throw wlmc::ValidationError("--config requires a subcommand");
    const auto file_tokens = config_tokens(config_path);
    args.insert(args.begin() + 1, file_tokens.begin(), file_tokens.end());
  }
  return args;
}

std::vector<double> parse_at_values(const std::string& at_list, const std::string& at_range) {
  std::vector<double> values;
  if (!at_list.empty()) {
    for (const auto& field : wlmc::csv::split_line(at_list)) {
      values.push_back(wlmc::csv::parse_double(field));
    }
  }
  if (!at_range.empty()) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char sep1 = 0, sep2 = 0;
    std::istringstream in(at_range);
    in >> lo >> sep1 >> hi >> sep2 >> step;
    if (!in || sep1 != ':' || sep2 != ':' || !(step > 0.0) || hi < lo) {
      throw wlmc::ValidationError("--at-range expects lo:hi:step with step > 0 and hi >= lo");
    }
    for (double v = lo; v <= hi + 1e-9 * step; v += step) values.push_back(v);
  }
  if (values.empty()) {
    throw wlmc::ValidationError("no temperatures given: use --at-list or --at-range");
  }
  for (const double v : values) {
    if (!(v >= 0.0)) throw wlmc::ValidationError("aT values must be nonnegative");
  }
  return values;
}

unsigned resolve_threads(unsigned requested) {
  return requested == 0 ? wlmc::default_thread_count() : requested;
}

struct GenOptions {
  std::size_t loops = 1000;
  std::size_t points = 200000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenOptions& opt) {
  std::ostringstream buffer(std::ios::binary);
  wlmc::loopgen::generate_and_save_ensemble(opt.loops, opt.points, opt.seed, buffer);
  const std::string bytes = buffer.str();
  write_file_atomically(opt.out, bytes);
  std::cout << "wrote " << opt.loops << " loops x " << opt.points << " points (seed " << opt.seed
            << ", " << wlmc::loopgen::kAlgorithmId << ") to " << opt.out << " [" << bytes.size()
            << " bytes]\n";
  return kExitOk;
}

struct RunOptions {
  std::string geometry = "parallel_plates";
  std::string at_list;
  std::string at_range;
  std::size_t loops = 1000;
  std::size_t points = 200000;
  std::uint64_t seed = 1;
  std::size_t xi_nodes = 128;
  double trunc_eps = 1e-14;
  unsigned threads = 0;
  std::string ensemble_path;
  std::string out;
  bool have_gen_params = false;
};

int cmd_run(const RunOptions& opt) {
  const auto kind = wlmc::geometry::parse_kind(opt.geometry);
  const wlmc::geometry::Config config{kind};
  const auto at_values = parse_at_values(opt.at_list, opt.at_range);
  wlmc::thermal::Params::from_aT(0.0, opt.trunc_eps);  // validates trunc_eps early
  const unsigned threads = resolve_threads(opt.threads);

  wlmc::estimator::ObservableSet observables;
  const bool ensemble_given = !opt.ensemble_path.empty();
  if (ensemble_given && fs::exists(opt.ensemble_path)) {
    std::ifstream in(opt.ensemble_path, std::ios::binary);
    if (!in) throw wlmc::IoError("cannot open ensemble '" + opt.ensemble_path + "'");
    const auto ensemble = wlmc::loopgen::load_ensemble(in);
    observables = wlmc::estimator::compute_observables(ensemble, config, opt.xi_nodes, threads);
  } else {
    if (ensemble_given && !opt.have_gen_params) {
      throw wlmc::ValidationError("ensemble file '" + opt.ensemble_path +
                                  "' not found and no generation parameters given "
                                  "(--loops/--points/--seed)");
    }
    if (ensemble_given) {
      // Persist first so later runs can reuse the exact same ensemble.
      std::ostringstream buffer(std::ios::binary);
      wlmc::loopgen::generate_and_save_ensemble(opt.loops, opt.points, opt.seed, buffer);
      write_file_atomically(opt.ensemble_path, buffer.str());
    }
    observables = wlmc::estimator::compute_observables_streamed(opt.loops, opt.points, opt.seed,
                                                                config, opt.xi_nodes, threads);
  }

  const auto results = wlmc::estimator::sweep(observables, at_values, opt.trunc_eps, threads);

  std::ostringstream out;
  out << "geometry,aT,ratio_mean,ratio_stderr,coeff_mean,coeff_stderr,n_loops,n_points,n_xi,"
         "seed\n";
  for (const auto& r : results) {
    out << wlmc::geometry::kind_name(r.kind) << ',' << wlmc::csv::format_double(r.aT) << ','
        << wlmc::csv::format_double(r.ratio.mean) << ','
        << wlmc::csv::format_double(r.ratio.std_error) << ','
        << wlmc::csv::format_double(r.coefficient.mean) << ','
        << wlmc::csv::format_double(r.coefficient.std_error) << ',' << observables.count() << ','
        << observables.n_points << ',' << opt.xi_nodes << ',' << observables.seed << '\n';
  }
  write_file_atomically(opt.out, out.str());
  std::cout << "wrote " << results.size() << " rows (" << opt.geometry << ", "
            << observables.count() << " loops) to " << opt.out << "\n";
  return kExitOk;
}

struct ReferenceOptions {
  std::string at_list;
  std::string at_range;
  double rel_tol = 1e-12;
  std::string out;
};

int cmd_reference(const ReferenceOptions& opt) {
  const auto at_values = parse_at_values(opt.at_list, opt.at_range);
  wlmc::reference::SeriesControl ctrl;
  ctrl.rel_tol = opt.rel_tol;
  ctrl.validate();

  std::ostringstream out;
  out << "aT,parallel_ratio_analytic,parallel_leading,perpendicular_leading\n";
  for (const double aT : at_values) {
    out << wlmc::csv::format_double(aT) << ','
        << wlmc::csv::format_double(wlmc::reference::parallel_force_ratio_analytic(aT, ctrl))
        << ','
        << wlmc::csv::format_double(wlmc::reference::parallel_leading_correction(aT)) << ','
        << wlmc::csv::format_double(wlmc::reference::perpendicular_leading_correction(aT))
        << '\n';
  }
  write_file_atomically(opt.out, out.str());
  std::cout << "wrote " << at_values.size() << " reference rows to " << opt.out << "\n";
  return kExitOk;
}

struct CompareOptions {
  std::string run_path;
  std::string reference_path;
};

int cmd_compare(const CompareOptions& opt) {
  const auto run = wlmc::csv::read_table(opt.run_path);
  const auto ref = wlmc::csv::read_table(opt.reference_path);

  const auto geom_col = run.column("geometry");
  for (const auto& row : run.rows) {
    if (row[geom_col] != "parallel_plates") {
      throw wlmc::ValidationError("compare checks parallel_plates runs; found geometry '" +
                                  row[geom_col] + "' in " + opt.run_path);
    }
  }

  // The baseline may be an analytic reference CSV or another run CSV
  // (comparing a run against itself is a valid smoke check).
  const std::string ref_col_name =
      ref.has_column("parallel_ratio_analytic") ? "parallel_ratio_analytic" : "ratio_mean";
  const auto run_at = run.column("aT");
  const auto ref_at = ref.column("aT");
  const auto run_ratio = run.column("ratio_mean");
  const auto run_stderr = run.column("ratio_stderr");
  const auto ref_ratio = ref.column(ref_col_name);

  std::vector<double> run_grid, ref_grid;
  for (const auto& row : run.rows) run_grid.push_back(wlmc::csv::parse_double(row[run_at]));
  for (const auto& row : ref.rows) ref_grid.push_back(wlmc::csv::parse_double(row[ref_at]));
  if (run_grid != ref_grid) {
    std::ostringstream msg;
    msg << "aT grids differ between '" << opt.run_path << "' and '" << opt.reference_path
        << "':";
    for (const double v : run_grid) {
      if (std::find(ref_grid.begin(), ref_grid.end(), v) == ref_grid.end()) {
        msg << " run-only " << v;
      }
    }
    for (const double v : ref_grid) {
      if (std::find(run_grid.begin(), run_grid.end(), v) == run_grid.end()) {
        msg << " reference-only " << v;
      }
    }
    if (run_grid.size() == ref_grid.size()) msg << " (or same values in different order)";
    throw wlmc::ValidationError(msg.str());
  }

  double max_pull = 0.0;
  std::printf("%10s %22s %22s %10s\n", "aT", "ratio_mc", "ratio_ref", "pull");
  for (std::size_t i = 0; i < run.rows.size(); ++i) {
    const double mc = wlmc::csv::parse_double(run.rows[i][run_ratio]);
    const double err = wlmc::csv::parse_double(run.rows[i][run_stderr]);
    const double expected = wlmc::csv::parse_double(ref.rows[i][ref_ratio]);
    const double diff = mc - expected;
    const double pull = diff == 0.0 ? 0.0 : diff / err;
    max_pull = std::max(max_pull, std::abs(pull));
    std::printf("%10.4g %22.15g %22.15g %10.3f\n", run_grid[i], mc, expected, pull);
  }
  const bool pass = max_pull <= 3.0;
  std::printf("%s max |pull| = %.3f (criterion: <= 3)\n", pass ? "PASS" : "FAIL", max_pull);
  return pass ? kExitOk : kExitCompareFail;
}

void take_last(CLI::App* cmd) {
  for (auto* opt : cmd->get_options()) {
    if (opt->get_expected_max() >= 1) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worldline Monte Carlo engine for finite-temperature Casimir forces"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate and persist a loop ensemble");
  gen_cmd->add_option("--loops", gen.loops, "number of loops")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--points", gen.points, "points per loop")
      ->check(CLI::Range(std::size_t{4}, std::size_t{2000000000}));
  gen_cmd->add_option("--seed", gen.seed, "ensemble seed");
  gen_cmd->add_option("--out", gen.out, "output ensemble file")->required();

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "temperature sweep of the Casimir force ratio");
  run_cmd->add_option("--geometry", run.geometry, "parallel_plates or perpendicular_plates");
  run_cmd->add_option("--at-list", run.at_list, "comma-separated aT values (0 = T = 0)");
  run_cmd->add_option("--at-range", run.at_range, "aT range as lo:hi:step");
  auto* opt_loops =
      run_cmd->add_option("--loops", run.loops, "number of loops")->check(CLI::PositiveNumber);
  auto* opt_points = run_cmd->add_option("--points", run.points, "points per loop")
                         ->check(CLI::Range(std::size_t{4}, std::size_t{2000000000}));
  auto* opt_seed = run_cmd->add_option("--seed", run.seed, "ensemble seed");
  run_cmd->add_option("--xi-nodes", run.xi_nodes, "offset-quadrature nodes per loop")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  run_cmd->add_option("--trunc-eps", run.trunc_eps, "relative series truncation tolerance");
  run_cmd->add_option("--threads", run.threads, "worker threads (0 = hardware)");
  run_cmd->add_option("--ensemble", run.ensemble_path, "ensemble file to reuse (or create)");
  run_cmd->add_option("--out", run.out, "output CSV path")->required();

  ReferenceOptions reference;
  auto* ref_cmd = app.add_subcommand("reference", "analytic benchmark curves");
  ref_cmd->add_option("--at-list", reference.at_list, "comma-separated aT values");
  ref_cmd->add_option("--at-range", reference.at_range, "aT range as lo:hi:step");
  ref_cmd->add_option("--rel-tol", reference.rel_tol, "series tolerance");
  ref_cmd->add_option("--out", reference.out, "output CSV path")->required();

  CompareOptions compare;
  auto* cmp_cmd = app.add_subcommand("compare", "pull report of a run against a baseline");
  cmp_cmd->add_option("run_csv", compare.run_path, "CSV from the run command")->required();
  cmp_cmd->add_option("reference_csv", compare.reference_path,
                      "CSV from the reference command (or another run)")
      ->required();

  take_last(gen_cmd);
  take_last(run_cmd);
  take_last(ref_cmd);

  try {
    const auto args = assemble_arguments(argc, argv);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);  // CLI11 consumes in reverse order
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const wlmc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const wlmc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (run_cmd->parsed()) {
      run.have_gen_params =
          opt_loops->count() > 0 || opt_points->count() > 0 || opt_seed->count() > 0;
      return cmd_run(run);
    }
    if (ref_cmd->parsed()) return cmd_reference(reference);
    if (cmp_cmd->parsed()) return cmd_compare(compare);
  } catch (const wlmc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const wlmc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
