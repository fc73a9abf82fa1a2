#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdiss/errors.hpp"
#include "qdiss/experiment.hpp"
#include "qdiss/propagator.hpp"

namespace {

using namespace qdiss;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

constexpr double kCrossCheckStep = 1e-4;
constexpr double kCrossCheckTolerance = 1e-8;

struct DisagreementError : NumericError {
  using NumericError::NumericError;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Options shared by the trajectory subcommands. Values given on the command
// line win over the config file.
struct RunFlags {
  RunConfig values;
  std::string config_path;
  CLI::Option* alpha = nullptr;
  CLI::Option* omega = nullptr;
  CLI::Option* t_start = nullptr;
  CLI::Option* t_end = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* fd_step = nullptr;
  CLI::Option* out = nullptr;

  void attach(CLI::App* app, bool with_alpha = true) {
    if (with_alpha) alpha = app->add_option("--alpha", values.alpha, "Kossakowski off-diagonal");
    omega = app->add_option("--omega", values.omega, "Hamiltonian frequency");
    t_start = app->add_option("--t-start", values.t_start, "First sample time");
    t_end = app->add_option("--t-end", values.t_end, "Last sample time");
    samples = app->add_option("--samples", values.samples, "Number of samples");
    fd_step = app->add_option("--fd-step", values.fd_step, "Entanglement-rate step");
    out = app->add_option("--out", values.output_path, "CSV output path");
    app->add_option("--config", config_path, "key=value config file");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    auto take = [](CLI::Option* opt, auto& dst, const auto& src) {
      if (opt && opt->count() > 0) dst = src;
    };
    take(alpha, cfg.alpha, values.alpha);
    take(omega, cfg.omega, values.omega);
    take(t_start, cfg.t_start, values.t_start);
    take(t_end, cfg.t_end, values.t_end);
    take(samples, cfg.samples, values.samples);
    take(fd_step, cfg.fd_step, values.fd_step);
    take(out, cfg.output_path, values.output_path);
    return cfg;
  }
};

// Closed-form state at t_end against an independent RK4 integration.
void cross_check(const RunConfig& cfg) {
  const FamilyState s0 = cfg.initial_state();
  const ModelParams params(cfg.alpha, cfg.omega);
  const DensityMatrix closed = family_to_matrix(evolve_family(s0, cfg.alpha, cfg.t_end));
  const DensityMatrix numeric =
      integrate_rk4(family_to_matrix(s0), params, cfg.t_end, kCrossCheckStep);
  const double err = (closed.matrix() - numeric.matrix()).cwiseAbs().maxCoeff();
  if (!(err <= kCrossCheckTolerance)) {
    throw DisagreementError("closed form and RK4 disagree by " + fmt(err) + " at t=" +
                            fmt(cfg.t_end) + ", alpha=" + fmt(cfg.alpha));
  }
}

void print_verdict(const Verdict& v, std::ostream& out) {
  out << "verdict=" << to_string(v) << '\n';
  out << "kind=" << to_string(v.kind) << '\n';
  out << "t_star=" << (v.first_violation ? fmt(*v.first_violation) : "none") << '\n';
  out << "sudden_death_at=" << (v.sudden_death_at ? fmt(*v.sudden_death_at) : "none") << '\n';
  out << "asymptotic_separable="
      << (v.asymptotic_separable ? (*v.asymptotic_separable ? "true" : "false") : "unknown")
      << '\n';
  if (v.asymptotic_concurrence) {
    out << "asymptotic_concurrence=" << fmt(*v.asymptotic_concurrence) << '\n';
  }
}

int run_and_emit(const RunConfig& cfg) {
  cfg.validate();
  cross_check(cfg);
  const std::vector<TrajectoryRecord> records = run_trajectory(cfg);
  for (const TrajectoryRecord& r : records) {
    if (r.ree_fallback) {
      throw DisagreementError("closed-form REE missed its constraints at t=" + fmt(r.t));
    }
  }
  if (cfg.output_path.empty()) {
    write_csv(records, std::cout);
  } else {
    emit_csv(records, cfg.output_path);
    print_verdict(verdict(records, cfg.alpha), std::cout);
  }
  return kExitOk;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size()) throw ConfigError("bad alpha list entry '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw ConfigError("empty alpha list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit dissipative dynamics: entropy and entanglement rates"};
  app.require_subcommand(1);

  RunFlags case_flags;
  int case_id = 1;
  CLI::App* case_cmd = app.add_subcommand("case", "Run one of the reference initial states");
  case_cmd->add_option("id", case_id, "Case id 1-5")->required();
  case_flags.attach(case_cmd);

  RunFlags evolve_flags;
  double wa = 0, wb = 0, wc = 0, wd = 0;
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Run an explicit diagonal-family state");
  evolve_cmd->add_option("--a", wa, "Weight on |00>")->required();
  evolve_cmd->add_option("--b", wb, "Weight on the triplet |3>")->required();
  evolve_cmd->add_option("--c", wc, "Weight on the singlet |4>")->required();
  evolve_cmd->add_option("--d", wd, "Weight on |11>")->required();
  evolve_flags.attach(evolve_cmd);

  RunFlags sweep_flags;
  int sweep_case = 1;
  std::string alpha_list;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Verdicts over a list of alpha values");
  sweep_cmd->add_option("--case", sweep_case, "Case id 1-5")->required();
  sweep_cmd->add_option("--alphas", alpha_list, "Comma-separated alpha values")->required();
  sweep_flags.attach(sweep_cmd, false);

  std::string in_path;
  std::optional<double> verdict_alpha;
  CLI::App* verdict_cmd = app.add_subcommand("verdict", "Classify a trajectory CSV");
  verdict_cmd->add_option("--in", in_path, "Trajectory CSV")->required();
  verdict_cmd->add_option("--alpha", verdict_alpha, "Alpha used for the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*case_cmd) {
      RunConfig cfg = case_flags.resolve();
      cfg.initial = case_id;
      return run_and_emit(cfg);
    }
    if (*evolve_cmd) {
      RunConfig cfg = evolve_flags.resolve();
      cfg.initial = FamilyState(wa, wb, wc, wd);
      return run_and_emit(cfg);
    }
    if (*sweep_cmd) {
      RunConfig cfg = sweep_flags.resolve();
      cfg.initial = sweep_case;
      const std::vector<double> alphas = parse_list(alpha_list);
      for (double alpha : alphas) {
        RunConfig local = cfg;
        local.alpha = alpha;
        local.validate();
        cross_check(local);
      }
      std::cout << "alpha,verdict,sudden_death_at,asymptotic_separable,asymptotic_concurrence\n";
      for (const SweepRow& row : sweep_alpha(cfg, alphas)) {
        const Verdict& v = row.verdict;
        std::cout << fmt(row.alpha) << ',' << to_string(v) << ','
                  << (v.sudden_death_at ? fmt(*v.sudden_death_at) : "none") << ','
                  << (v.asymptotic_separable.value_or(false) ? "true" : "false") << ','
                  << fmt(v.asymptotic_concurrence.value_or(0.0)) << '\n';
      }
      return kExitOk;
    }
    if (*verdict_cmd) {
      const std::vector<TrajectoryRecord> records = read_csv(in_path);
      if (records.size() < 2) throw ConfigError(in_path + ": need at least two records");
      if (verdict_alpha && !(std::abs(*verdict_alpha) < 1.0)) {
        throw ConfigError("alpha must satisfy |alpha| < 1");
      }
      print_verdict(verdict(records, verdict_alpha), std::cout);
      return kExitOk;
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
