#include "inerton/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "inerton/cluster.hpp"
#include "inerton/config.hpp"
#include "inerton/dirac.hpp"
#include "inerton/dynamics.hpp"
#include "inerton/lattice.hpp"
#include "inerton/scales.hpp"

namespace inerton::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kUsage =
    "usage: inerton_lab <scales|simulate|dirac|phonon|cluster|sweep> --config PATH "
    "[--out DIR] [--format csv|json] [--seed N] [--jobs N]\n";

bool known_command(const std::string& c) {
  return c == "scales" || c == "simulate" || c == "dirac" || c == "phonon" || c == "cluster" ||
         c == "sweep";
}

std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw IoError("run", "cannot create output directory '" + dir_.string() + "'");
    }
  }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("run", "cannot open '" + path.string() + "' for writing");
    f << content;
    f.close();
    if (!f) throw IoError("run", "failed writing '" + path.string() + "'");
    return path;
  }

 private:
  fs::path dir_;
};

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string resolved_header(const RunConfig& rc, const std::string& command) {
  std::string s;
  s += "command = " + command + "\n";
  s += "format = " + format_name(rc.format) + "\n";
  s += "seed = " + std::to_string(rc.seed) + "\n";
  s += "jobs = " + std::to_string(rc.jobs) + "\n";
  return s;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

// ---------------------------------------------------------------- scales

struct ScalesJob {
  Constantsd consts;
  KinematicStated state;

  static ScalesJob read(KeyValueConfig& cfg) {
    ScalesJob j;
    j.consts = constants_from_config(cfg);
    j.state.M0 = cfg.get_double("M0", 1.0);
    j.state.v0 = cfg.get_double("v0", j.consts.units == UnitSystem::natural ? 0.5 : 1e6);
    return j;
  }
};

// ---------------------------------------------------------------- simulate

struct SimulateJob {
  ExchangeSystem system;
  double duration{0};
  double dt{0};

  static SimulateJob read(KeyValueConfig& cfg) {
    SimulateJob j;
    j.system = exchange_system_from_config(cfg);
    const double T = j.system.half_period();
    j.duration = cfg.get_double("duration", 8.0 * T);
    j.dt = cfg.get_double("dt", T / 200.0);
    return j;
  }

  Trajectory execute() const { return simulate(system, duration, dt); }
};

json cycles_json(const CycleStats& c, const ExchangeSystem& s) {
  json j;
  j["cycle_time"] = c.cycle_time;
  j["distance_per_cycle"] = c.distance_per_cycle;
  j["vmin"] = c.vmin;
  j["vmax"] = c.vmax;
  j["mean_speed"] = c.mean_speed;
  j["cycles_measured"] = c.peaks - 1;
  j["T"] = s.half_period();
  j["lambda"] = s.wavelength();
  return j;
}

// ---------------------------------------------------------------- dirac

struct DiracJob {
  SpinKinematics<double> kin;

  static DiracJob read(KeyValueConfig& cfg) {
    DiracJob j;
    const auto p = cfg.get_double_list("p", {0.0, 0.0, 0.0});
    const auto pi = cfg.get_double_list("pi", {0.0, 0.0, 0.0});
    if (p.size() != 3 || pi.size() != 3) {
      throw ConfigError("spin-dirac", "config", "p and pi need 3 components");
    }
    j.kin.p = Eigen::Vector3d(p[0], p[1], p[2]);
    j.kin.pi_spin = Eigen::Vector3d(pi[0], pi[1], pi[2]);
    const std::string spin = cfg.get_string("spin", "up");
    if (spin != "up" && spin != "down") {
      throw ConfigError("spin-dirac", "config", "spin must be 'up' or 'down'");
    }
    j.kin.spin = spin == "up" ? SpinLabel::up : SpinLabel::down;
    j.kin.M0 = cfg.get_double("M0", 1.0);
    j.kin.c = cfg.get_double("c", 1.0);
    return j;
  }

  struct Result {
    double h_total;
    std::array<double, 4> eigenvalues;
  };

  Result execute() const {
    const double h = total_hamiltonian(kin);
    const auto op = build_dirac<double>(kin.p, kin.M0, kin.c);
    return {h, dirac_spectrum(op)};
  }
};

// ---------------------------------------------------------------- phonon

struct PhononJob {
  LatticeSpec spec;
  std::vector<Eigen::VectorXd> path;

  static PhononJob read(KeyValueConfig& cfg) {
    PhononJob j;
    j.spec = lattice_spec_from_config(cfg);
    const auto n_k = cfg.get_int("n_k", 65);
    const auto dir = cfg.get_double_list("k_dir", std::vector<double>(j.spec.dim, 1.0));
    if (dir.size() != static_cast<std::size_t>(j.spec.dim)) {
      throw ConfigError("lattice", "config", "k_dir needs dim entries");
    }
    if (n_k < 2 || n_k > 1'000'000) {
      throw ConfigError("lattice", "config", "n_k must lie in [2, 1000000]");
    }
    j.path = zone_path(j.spec, Eigen::Map<const Eigen::VectorXd>(dir.data(), j.spec.dim),
                       static_cast<int>(n_k));
    return j;
  }
};

// ---------------------------------------------------------------- cluster

struct ClusterJob {
  ClusterPotentiald potential;
  int dim{3};
  int n_max{24};
  std::uint64_t seed{1};
  MinimizerSettings settings;

  static ClusterJob read(KeyValueConfig& cfg, std::uint64_t default_seed) {
    ClusterJob j;
    j.potential.epsilon = cfg.get_double("epsilon");
    j.potential.g = cfg.get_double("g");
    j.potential.gamma = cfg.get_double("gamma", 0.0);
    j.potential.validate();
    j.dim = static_cast<int>(cfg.get_int("dim", 3));
    j.n_max = static_cast<int>(cfg.get_int("N_max", 24));
    j.settings.restarts = static_cast<int>(cfg.get_int("restarts", 32));
    j.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<std::int64_t>(default_seed)));
    const std::string mode = cfg.get_string("elastic_mode", "centroid");
    if (mode == "centroid") {
      j.settings.elastic_mode = ElasticMode::centroid;
    } else if (mode == "pairwise") {
      j.settings.elastic_mode = ElasticMode::pairwise;
    } else {
      throw ConfigError("cluster", "config", "elastic_mode must be 'centroid' or 'pairwise'");
    }
    j.settings.max_iterations = static_cast<int>(cfg.get_int("max_iterations", 20000));
    j.settings.gradient_tolerance = cfg.get_double("gradient_tolerance", 1e-9);
    if (j.dim != 1 && j.dim != 3) throw ConfigError("cluster", "config", "dim must be 1 or 3");
    if (j.n_max < 1 || j.n_max > 64) throw ConfigError("cluster", "config", "N_max must lie in [1, 64]");
    if (j.settings.restarts < 1) throw ConfigError("cluster", "config", "restarts must be >= 1");
    return j;
  }

  std::string mode_name() const {
    return settings.elastic_mode == ElasticMode::centroid ? "centroid" : "pairwise";
  }

  std::optional<double> formula() const {
    if (potential.gamma > 0.0) return cluster_size_formula(potential);
    return std::nullopt;
  }

  ClusterSweep execute() const { return optimal_cluster_size(potential, n_max, dim, seed, settings); }
};

json cluster_summary(const ClusterJob& job, const ClusterSweep& sweep) {
  json j;
  const auto nf = job.formula();
  j["N_formula"] = nf ? json(*nf) : json(nullptr);
  j["N_formula_rounded"] = nf ? json(static_cast<std::int64_t>(std::llround(*nf))) : json(nullptr);
  j["N_numeric"] = sweep.n_numeric;
  j["gamma"] = job.potential.gamma;
  j["mode"] = job.mode_name();
  return j;
}

// ---------------------------------------------------------------- single runs

int run_single(const RunConfig& rc, std::ostream& out) {
  KeyValueConfig cfg = KeyValueConfig::from_file(rc.config_path);
  const std::string& cmd = rc.command;

  if (cmd == "scales") {
    const ScalesJob job = ScalesJob::read(cfg);
    cfg.require_all_consumed(cmd);
    const ScaleReportd r = scale_report(job.state, job.consts);
    const OutputDir dir(rc.output_dir);
    fs::path written;
    if (rc.format == OutputFormat::json) {
      written = dir.write("scales.json", to_json(r) + "\n");
    } else {
      written = dir.write("scales.csv",
                          csv_line({"lambda", "Lambda", "lambda_com", "T", "nu"}) +
                              csv_line({format_number(r.lambda), format_number(r.Lambda),
                                        format_number(r.lambda_com), format_number(r.T),
                                        format_number(r.nu)}));
    }
    dir.write("resolved_config.txt", resolved_header(rc, cmd) + cfg.resolved_text());
    out << "scales: lambda=" << format_number(r.lambda) << " Lambda=" << format_number(r.Lambda)
        << " lambda_com=" << format_number(r.lambda_com) << " -> " << written.string() << '\n';
    return kExitOk;
  }

  if (cmd == "simulate") {
    const SimulateJob job = SimulateJob::read(cfg);
    cfg.require_all_consumed(cmd);
    const Trajectory traj = job.execute();
    const OutputDir dir(rc.output_dir);
    std::ostringstream csv;
    write_trajectory_csv(csv, traj, job.system);
    dir.write("trajectory.csv", csv.str());
    const auto& c = traj.cycles;
    if (rc.format == OutputFormat::json) {
      dir.write("cycles.json", cycles_json(c, job.system).dump(2) + "\n");
    } else {
      dir.write("cycles.csv",
                csv_line({"cycle_time", "distance_per_cycle", "vmin", "vmax", "mean_speed"}) +
                    csv_line({format_number(c.cycle_time), format_number(c.distance_per_cycle),
                              format_number(c.vmin), format_number(c.vmax),
                              format_number(c.mean_speed)}));
    }
    dir.write("resolved_config.txt", resolved_header(rc, cmd) + cfg.resolved_text());
    out << "simulate: " << traj.samples.size() << " samples, " << (c.peaks - 1)
        << " cycles, cycle_time=" << format_number(c.cycle_time)
        << " distance_per_cycle=" << format_number(c.distance_per_cycle) << '\n';
    return kExitOk;
  }

  if (cmd == "dirac") {
    const DiracJob job = DiracJob::read(cfg);
    cfg.require_all_consumed(cmd);
    const auto r = job.execute();
    const OutputDir dir(rc.output_dir);
    if (rc.format == OutputFormat::json) {
      json j;
      j["p"] = vec_json(job.kin.p);
      j["M0"] = job.kin.M0;
      j["c"] = job.kin.c;
      j["H_total"] = r.h_total;
      j["eigenvalues"] = json::array({r.eigenvalues[0], r.eigenvalues[1], r.eigenvalues[2],
                                      r.eigenvalues[3]});
      dir.write("dirac.json", j.dump(2) + "\n");
    } else {
      std::vector<std::string> row{format_number(job.kin.p.x()), format_number(job.kin.p.y()),
                                   format_number(job.kin.p.z()), format_number(job.kin.M0),
                                   format_number(job.kin.c), format_number(r.h_total)};
      for (double e : r.eigenvalues) row.push_back(format_number(e));
      dir.write("dirac.csv",
                csv_line({"p1", "p2", "p3", "M0", "c", "H_total", "e1", "e2", "e3", "e4"}) +
                    csv_line(row));
    }
    dir.write("resolved_config.txt", resolved_header(rc, cmd) + cfg.resolved_text());
    out << "dirac: H_total=" << format_number(r.h_total)
        << " eigenvalues=" << format_number(r.eigenvalues[0]) << ','
        << format_number(r.eigenvalues[1]) << ',' << format_number(r.eigenvalues[2]) << ','
        << format_number(r.eigenvalues[3]) << '\n';
    return kExitOk;
  }

  if (cmd == "phonon") {
    const PhononJob job = PhononJob::read(cfg);
    cfg.require_all_consumed(cmd);
    const DispersionResult d = dispersion(job.spec, job.path);
    const OutputDir dir(rc.output_dir);
    std::ostringstream csv;
    write_dispersion_csv(csv, d, job.spec.dim);
    dir.write("dispersion.csv", csv.str());
    if (rc.format == OutputFormat::json) {
      json j = json::array();
      for (std::size_t i = 0; i < d.kpath.size(); ++i) {
        json row;
        row["k"] = std::vector<double>(d.kpath[i].data(), d.kpath[i].data() + d.kpath[i].size());
        row["omega"] = std::vector<double>(d.branches[i].data(),
                                           d.branches[i].data() + d.branches[i].size());
        j.push_back(std::move(row));
      }
      dir.write("dispersion.json", j.dump(2) + "\n");
    }
    dir.write("resolved_config.txt", resolved_header(rc, cmd) + cfg.resolved_text());
    out << "phonon: " << d.kpath.size() << " k-points, " << job.spec.dim
        << " branch(es), zone-edge omega_max=" << format_number(d.branches.back().maxCoeff())
        << '\n';
    return kExitOk;
  }

  // cluster
  const ClusterJob job = ClusterJob::read(cfg, rc.seed);
  cfg.require_all_consumed(cmd);
  const ClusterSweep sweep = job.execute();
  const OutputDir dir(rc.output_dir);
  std::ostringstream csv;
  write_cluster_csv(csv, sweep);
  dir.write("cluster_sweep.csv", csv.str());
  dir.write("cluster_summary.json", cluster_summary(job, sweep).dump(2) + "\n");
  dir.write("resolved_config.txt", resolved_header(rc, cmd) + cfg.resolved_text());
  const auto nf = job.formula();
  out << "cluster: N_numeric=" << sweep.n_numeric
      << " N_formula=" << (nf ? format_number(*nf) : std::string("n/a")) << " (gamma="
      << format_number(job.potential.gamma) << ", mode=" << job.mode_name() << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepTarget {
  std::vector<std::string> columns;
  std::function<std::vector<double>(KeyValueConfig&, std::uint64_t)> evaluate;
};

SweepTarget sweep_target(const std::string& command) {
  if (command == "scales") {
    return {{"lambda", "Lambda", "lambda_com", "T", "nu", "Lambda_v0sq_over_c2"},
            [](KeyValueConfig& cfg, std::uint64_t) {
              const ScalesJob job = ScalesJob::read(cfg);
              cfg.require_all_consumed("scales");
              const auto r = scale_report(job.state, job.consts);
              const double ratio = job.state.v0 / job.consts.c;
              return std::vector<double>{r.lambda, r.Lambda, r.lambda_com, r.T, r.nu,
                                         r.Lambda * ratio * ratio};
            }};
  }
  if (command == "simulate") {
    return {{"T", "lambda", "cycle_time", "distance_per_cycle", "vmin", "vmax", "mean_speed"},
            [](KeyValueConfig& cfg, std::uint64_t) {
              const SimulateJob job = SimulateJob::read(cfg);
              cfg.require_all_consumed("simulate");
              const auto c = job.execute().cycles;
              return std::vector<double>{job.system.half_period(), job.system.wavelength(),
                                         c.cycle_time, c.distance_per_cycle, c.vmin, c.vmax,
                                         c.mean_speed};
            }};
  }
  if (command == "dirac") {
    return {{"H_total", "e1", "e2", "e3", "e4"}, [](KeyValueConfig& cfg, std::uint64_t) {
              const DiracJob job = DiracJob::read(cfg);
              cfg.require_all_consumed("dirac");
              const auto r = job.execute();
              return std::vector<double>{r.h_total, r.eigenvalues[0], r.eigenvalues[1],
                                         r.eigenvalues[2], r.eigenvalues[3]};
            }};
  }
  if (command == "cluster") {
    return {{"N_formula", "N_formula_rounded", "N_numeric", "E_min_per_atom"},
            [](KeyValueConfig& cfg, std::uint64_t seed) {
              const ClusterJob job = ClusterJob::read(cfg, seed);
              cfg.require_all_consumed("cluster");
              const auto sweep = job.execute();
              const auto nf = job.formula();
              const double best = sweep.table[sweep.n_numeric - 1].energy_per_atom;
              return std::vector<double>{nf ? *nf : NAN, nf ? std::round(*nf) : NAN,
                                         static_cast<double>(sweep.n_numeric), best};
            }};
  }
  throw ConfigError("cli", "sweep",
                    "sweep_command must be one of scales, simulate, dirac, cluster");
}

std::string sanitize(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char ch) { return ch == ',' || ch == '\n' || ch == '"'; },
                  ';');
  return s;
}

struct RowOutcome {
  std::vector<double> values;
  std::optional<std::string> error;
  int exit_code{kExitOk};
  std::string resolved;
};

std::string cell(double v) { return std::isnan(v) ? std::string() : format_number(v); }

int run_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  KeyValueConfig base = KeyValueConfig::from_file(rc.config_path);
  const std::string target = base.get_string("sweep_command");
  const std::string param = base.get_string("sweep_param");
  std::vector<double> grid;
  if (base.contains("sweep_values")) {
    grid = base.get_double_list("sweep_values");
  } else {
    const double lo = base.get_double("sweep_min");
    const double hi = base.get_double("sweep_max");
    const auto steps = base.get_int("sweep_steps");
    if (steps < 1) throw ConfigError("cli", "sweep", "empty range: sweep_steps must be >= 1");
    if (steps == 1) {
      grid.push_back(lo);
    } else {
      for (std::int64_t i = 0; i < steps; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
      }
    }
    if (hi < lo) throw ConfigError("cli", "sweep", "empty range: sweep_max < sweep_min");
  }
  if (grid.empty()) throw ConfigError("cli", "sweep", "empty range");
  if (param.rfind("sweep_", 0) == 0) {
    throw ConfigError("cli", "sweep", "sweep_param cannot name a sweep_* key");
  }
  const SweepTarget spec = sweep_target(target);

  // Base parameters forwarded to every row.
  std::map<std::string, std::string> forwarded;
  for (const auto& [key, value] : base.raw()) {
    if (key.rfind("sweep_", 0) != 0) forwarded.emplace(key, value);
  }

  std::vector<RowOutcome> rows(grid.size());
  const auto evaluate_row = [&](std::size_t i) {
    KeyValueConfig cfg;
    for (const auto& [key, value] : forwarded) cfg.set(key, value);
    cfg.set(param, format_exact(grid[i]));
    RowOutcome& row = rows[i];
    try {
      row.values = spec.evaluate(cfg, rc.seed);
      row.resolved = cfg.resolved_text();
    } catch (const ConfigError& e) {
      row.error = e.module() + "/" + e.operation() + ": " + e.what();
      row.exit_code = kExitConfig;
    } catch (const Error& e) {
      row.error = e.module() + "/" + e.operation() + ": " + e.what();
      row.exit_code = kExitDomain;
    } catch (const std::exception& e) {
      row.error = std::string("cli/sweep: ") + e.what();
      row.exit_code = kExitDomain;
    }
  };

  const int workers = std::max(1, std::min<int>(rc.jobs, static_cast<int>(grid.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) evaluate_row(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<std::string> header{param};
  header.insert(header.end(), spec.columns.begin(), spec.columns.end());
  header.push_back("status");
  std::string csv = csv_line(header);
  int exit_code = kExitOk;
  int failed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> cells{format_number(grid[i])};
    const RowOutcome& row = rows[i];
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
      cells.push_back(row.error ? std::string() : cell(row.values[c]));
    }
    cells.push_back(row.error ? "error: " + sanitize(*row.error) : "ok");
    csv += csv_line(cells);
    if (row.error) {
      ++failed;
      if (exit_code == kExitOk) exit_code = row.exit_code;
      json rec;
      rec["module"] = "cli";
      rec["operation"] = "sweep";
      rec["message"] = "row " + std::to_string(i) + " (" + param + "=" + format_number(grid[i]) +
                       "): " + *row.error;
      err << rec.dump() << '\n';
    }
  }

  const OutputDir dir(rc.output_dir);
  dir.write("sweep.csv", csv);
  if (rc.format == OutputFormat::json) {
    json j = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      json row;
      row[param] = grid[i];
      for (std::size_t c = 0; c < spec.columns.size(); ++c) {
        const double v = rows[i].error ? NAN : rows[i].values[c];
        row[spec.columns[c]] = std::isnan(v) ? json(nullptr) : json(v);
      }
      row["status"] = rows[i].error ? *rows[i].error : std::string("ok");
      j.push_back(std::move(row));
    }
    dir.write("sweep.json", j.dump(2) + "\n");
  }
  std::string resolved = resolved_header(rc, "sweep") + base.resolved_text();
  const auto first_ok = std::find_if(rows.begin(), rows.end(), [](const RowOutcome& r) { return !r.error; });
  if (first_ok != rows.end()) {
    std::istringstream lines(first_ok->resolved);
    for (std::string line; std::getline(lines, line);) {
      if (line.rfind(param + " =", 0) != 0) resolved += line + "\n";
    }
  }
  dir.write("resolved_config.txt", resolved);

  out << "sweep: " << target << " over " << param << ", " << grid.size() << " rows, " << failed
      << " failed\n";
  return exit_code;
}

void report(std::ostream& err, const Error& e) {
  json rec;
  rec["module"] = e.module();
  rec["operation"] = e.operation();
  rec["message"] = e.what();
  err << rec.dump() << '\n';
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    report(err, e);
    return kExitConfig;
  } catch (const IoError& e) {
    report(err, e);
    return kExitIo;
  } catch (const Error& e) {
    report(err, e);
    return kExitDomain;
  } catch (const std::exception& e) {
    report(err, Error("cli", "run", e.what()));
    return kExitDomain;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!known_command(config.command)) {
    report(err, ConfigError("cli", "run", "unknown command '" + config.command + "'"));
    err << kUsage;
    return kExitConfig;
  }
  if (config.command == "sweep") return sweep(config, out, err);
  return guarded(err, [&] { return run_single(config, out); });
}

int sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return run_sweep(config, out, err); });
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle-inerton numerical laboratory", "inerton_lab"};
  RunConfig rc;
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "json";
  std::optional<int> jobs;
  app.add_option("command", rc.command, "scales | simulate | dirac | phonon | cluster | sweep")
      ->required();
  app.add_option("--config", config_path, "flat key = value configuration file")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", rc.seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads for sweeps (fallback: INERTON_LAB_JOBS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report(err, ConfigError("cli", "parse_args", e.what()));
    err << kUsage;
    return kExitConfig;
  }

  rc.config_path = config_path;
  rc.output_dir = out_dir;
  rc.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  if (jobs) {
    rc.jobs = *jobs;
  } else if (const char* env = std::getenv("INERTON_LAB_JOBS")) {
    try {
      rc.jobs = std::stoi(env);
    } catch (const std::exception&) {
      report(err, ConfigError("cli", "parse_args", "INERTON_LAB_JOBS is not an integer"));
      return kExitConfig;
    }
  }
  if (rc.jobs < 1) {
    report(err, ConfigError("cli", "parse_args", "--jobs must be >= 1"));
    return kExitConfig;
  }
  return run(rc, out, err);
}

}  // namespace inerton::cli
