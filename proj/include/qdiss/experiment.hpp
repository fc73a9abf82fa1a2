#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qdiss/state_model.hpp"

namespace qdiss {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Initial states of the five reference cases:
///   1: |1><1|                         2: (|3><3| + |4><4|)/2
///   3: (|1><1| + |2><2| + |3><3|)/10 + 7/10 |4><4|
///   4: |2><2|/2 + |3><3|/10 + 2/5 |4><4|
///   5: 3/10 |2><2| + |3><3|/10 + 3/5 |4><4|
FamilyState case_state(int id);

inline constexpr double kMinStartTime = 1e-3;
inline constexpr double kViolationTolerance = 1e-9;

struct RunConfig {
  double alpha = 0.5;
  double omega = 1.0;
  std::variant<int, FamilyState> initial = 1;  // case id or explicit weights
  double t_start = kMinStartTime;
  double t_end = 2.0;
  int samples = 400;
  double fd_step = 1e-5;
  std::string output_path;

  /// Throws ConfigError when an invariant fails.
  void validate() const;
  FamilyState initial_state() const;
};

/// Apply one `key=value` entry; keys are the RunConfig field names.
/// `initial` takes a case id (1-5) or four comma-separated weights a,b,c,d.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value text, one entry per line; blank lines and lines starting
/// with '#' are ignored. Entries are applied on top of `base`.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

struct TrajectoryRecord {
  double t;
  double a, b, c, d;
  double rel_entropy;  // S(rho_t || rho_inf), nats; +inf if supports mismatch
  double ree;          // relative entropy of entanglement, nats
  double sigma;        // entropy rate
  double sigma_e_abs;  // |entanglement rate|
  double concurrence;
  bool conjecture_ok;  // sigma_e_abs <= sigma + 1e-9

  // Diagnostics not written to CSV.
  double sigma_e = 0.0;
  double sigma_e_left = 0.0;
  double sigma_e_right = 0.0;
  bool at_kink = false;
  bool ree_fallback = false;
};

/// Evaluate every per-sample quantity at time t. For t < fd_step the
/// entanglement rate falls back to a forward difference.
TrajectoryRecord make_record(const FamilyState& s0, double alpha, double t,
                             double fd_step = 1e-5);

/// `samples` uniformly spaced records on [t_start, t_end].
std::vector<TrajectoryRecord> run_trajectory(const RunConfig& cfg);

enum class VerdictKind { kHoldsEverywhere, kViolatedFrom, kViolatedEverywhere };

struct Verdict {
  VerdictKind kind;
  std::optional<double> first_violation;  // t*, set for kViolatedFrom
  std::optional<double> sudden_death_at;
  // Unknown when the records were read back without alpha.
  std::optional<bool> asymptotic_separable;
  std::optional<double> asymptotic_concurrence;
};

/// Classify a trajectory. t* is the zero of sigma + 1e-9 - sigma_e_abs,
/// linearly interpolated between the last conforming and first violating
/// sample. Sudden death is the interpolated zero of |b - c| - 2 sqrt(ad)
/// after which it stays <= 0. Requires at least two records.
Verdict verdict(std::span<const TrajectoryRecord> records,
                std::optional<double> alpha = std::nullopt);

std::string to_string(VerdictKind kind);
std::string to_string(const Verdict& v);

struct SweepRow {
  double alpha;
  Verdict verdict;
};

/// Run `cfg` once per alpha (concurrently) and classify each trajectory.
std::vector<SweepRow> sweep_alpha(const RunConfig& cfg, std::span<const double> alphas);

inline constexpr const char* kCsvHeader =
    "t,a,b,c,d,rel_entropy,ree,sigma,sigma_e_abs,concurrence,conjecture_ok";

void write_csv(std::span<const TrajectoryRecord> records, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(std::span<const TrajectoryRecord> records, const std::string& path);

std::vector<TrajectoryRecord> read_csv(std::istream& in);
std::vector<TrajectoryRecord> read_csv(const std::string& path);

}  // namespace qdiss
