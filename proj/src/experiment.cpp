#include "qdiss/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "qdiss/entanglement_metrics.hpp"
#include "qdiss/entropy_metrics.hpp"
#include "qdiss/propagator.hpp"

namespace qdiss {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects a number, got '" + text + "'");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: " + key + " expects an integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double interpolate_zero(double t0, double g0, double t1, double g1) {
  if (!std::isfinite(g0) || !std::isfinite(g1) || g0 == g1) return t1;
  return t0 + (t1 - t0) * g0 / (g0 - g1);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

FamilyState case_state(int id) {
  switch (id) {
    case 1: return FamilyState(1.0, 0.0, 0.0, 0.0);
    case 2: return FamilyState(0.0, 0.5, 0.5, 0.0);
    case 3: return FamilyState(0.1, 0.1, 0.7, 0.1);
    case 4: return FamilyState(0.0, 0.1, 0.4, 0.5);
    case 5: return FamilyState(0.0, 0.1, 0.6, 0.3);
    default: break;
  }
  throw ConfigError("case id must be in 1..5 (got " + std::to_string(id) + ")");
}

void RunConfig::validate() const {
  if (!std::isfinite(alpha) || !(std::abs(alpha) < 1.0)) {
    throw ConfigError("config: |alpha| must be < 1 for the closed-form path");
  }
  if (!std::isfinite(omega)) throw ConfigError("config: omega must be finite");
  if (!(t_start >= kMinStartTime)) {
    throw ConfigError("config: t_start must be >= 1e-3");
  }
  if (!(t_end > t_start) || !std::isfinite(t_end)) {
    throw ConfigError("config: t_end must be finite and > t_start");
  }
  if (samples < 2) throw ConfigError("config: samples must be >= 2");
  if (!(fd_step > 0.0) || fd_step > t_start) {
    throw ConfigError("config: fd_step must lie in (0, t_start]");
  }
  if (const int* id = std::get_if<int>(&initial)) case_state(*id);
}

FamilyState RunConfig::initial_state() const {
  if (const int* id = std::get_if<int>(&initial)) return case_state(*id);
  return std::get<FamilyState>(initial);
}

void apply_config_entry(RunConfig& cfg, const std::string& key_raw,
                        const std::string& value_raw) {
  const std::string key = trim(key_raw);
  const std::string value = trim(value_raw);
  if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "omega") {
    cfg.omega = parse_double(key, value);
  } else if (key == "initial") {
    const auto parts = split(value, ',');
    if (parts.size() == 1) {
      cfg.initial = parse_int(key, parts[0]);
    } else if (parts.size() == 4) {
      try {
        cfg.initial = FamilyState(parse_double(key, parts[0]), parse_double(key, parts[1]),
                                  parse_double(key, parts[2]), parse_double(key, parts[3]));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: initial: ") + e.what());
      }
    } else {
      throw ConfigError("config: initial expects a case id or a,b,c,d");
    }
  } else if (key == "t_start") {
    cfg.t_start = parse_double(key, value);
  } else if (key == "t_end") {
    cfg.t_end = parse_double(key, value);
  } else if (key == "samples") {
    cfg.samples = parse_int(key, value);
  } else if (key == "fd_step") {
    cfg.fd_step = parse_double(key, value);
  } else if (key == "output_path") {
    cfg.output_path = value;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_config_entry(base, body.substr(0, eq), body.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in, std::move(base));
}

TrajectoryRecord make_record(const FamilyState& s0, double alpha, double t,
                             double fd_step) {
  const FamilyState st = evolve_family(s0, alpha, t);
  const FamilyState inf = asymptotic_state(s0.c(), alpha);
  const ReeResult ent = closest_separable(st);

  TrajectoryRecord r{};
  r.t = t;
  r.a = st.a();
  r.b = st.b();
  r.c = st.c();
  r.d = st.d();
  r.rel_entropy = relative_entropy(st, inf).value;
  r.ree = ent.value;
  r.ree_fallback = ent.used_fallback;
  r.sigma = entropy_rate(s0, alpha, t);
  r.concurrence = concurrence_family(st);

  if (t >= fd_step) {
    const EntanglementRate rate = entanglement_rate(s0, alpha, t, fd_step);
    r.sigma_e = rate.value;
    r.sigma_e_left = rate.left;
    r.sigma_e_right = rate.right;
    r.at_kink = rate.at_kink;
  } else {
    const double fwd = (ree(evolve_family(s0, alpha, t + fd_step)) - ent.value) / fd_step;
    r.sigma_e = r.sigma_e_right = r.sigma_e_left = fwd;
  }
  r.sigma_e_abs = std::abs(r.sigma_e);
  r.conjecture_ok = r.sigma_e_abs <= r.sigma + kViolationTolerance;
  return r;
}

std::vector<TrajectoryRecord> run_trajectory(const RunConfig& cfg) {
  cfg.validate();
  const FamilyState s0 = cfg.initial_state();
  std::vector<TrajectoryRecord> out;
  out.reserve(static_cast<std::size_t>(cfg.samples));
  const double span = cfg.t_end - cfg.t_start;
  for (int i = 0; i < cfg.samples; ++i) {
    const double t = i + 1 == cfg.samples ? cfg.t_end
                                          : cfg.t_start + span * i / (cfg.samples - 1);
    out.push_back(make_record(s0, cfg.alpha, t, cfg.fd_step));
  }
  return out;
}

Verdict verdict(std::span<const TrajectoryRecord> records, std::optional<double> alpha) {
  if (records.size() < 2) throw std::invalid_argument("verdict: need at least two records");

  Verdict v{VerdictKind::kHoldsEverywhere, std::nullopt, std::nullopt, std::nullopt,
            std::nullopt};

  auto margin = [](const TrajectoryRecord& r) {
    return r.sigma + kViolationTolerance - r.sigma_e_abs;
  };
  const auto first_bad = std::find_if(records.begin(), records.end(),
                                      [](const auto& r) { return !r.conjecture_ok; });
  const bool all_bad = std::none_of(records.begin(), records.end(),
                                    [](const auto& r) { return r.conjecture_ok; });
  if (all_bad) {
    v.kind = VerdictKind::kViolatedEverywhere;
  } else if (first_bad != records.end()) {
    v.kind = VerdictKind::kViolatedFrom;
    if (first_bad == records.begin()) {
      v.first_violation = first_bad->t;
    } else {
      const auto& prev = *(first_bad - 1);
      v.first_violation =
          interpolate_zero(prev.t, margin(prev), first_bad->t, margin(*first_bad));
    }
  }

  std::vector<double> signed_conc;
  signed_conc.reserve(records.size());
  for (const auto& r : records) {
    signed_conc.push_back(std::abs(r.b - r.c) - 2.0 * std::sqrt(std::max(r.a * r.d, 0.0)));
  }
  // Last entangled sample that is followed only by separable ones.
  std::size_t last_pos = records.size();
  for (std::size_t i = records.size(); i-- > 0;) {
    if (signed_conc[i] > 0.0) {
      last_pos = i;
      break;
    }
  }
  if (last_pos + 1 < records.size()) {
    v.sudden_death_at = interpolate_zero(records[last_pos].t, signed_conc[last_pos],
                                         records[last_pos + 1].t, signed_conc[last_pos + 1]);
  }

  if (alpha) {
    const FamilyState inf = asymptotic_state(records.front().c, *alpha);
    v.asymptotic_concurrence = concurrence_family(inf);
    v.asymptotic_separable = concurrence_signed_family(inf) <= 0.0;
  }
  return v;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kHoldsEverywhere: return "holds_everywhere";
    case VerdictKind::kViolatedFrom: return "violated_from";
    case VerdictKind::kViolatedEverywhere: return "violated_everywhere";
  }
  return "unknown";
}

std::string to_string(const Verdict& v) {
  std::string s = to_string(v.kind);
  if (v.first_violation) s += "(" + format_number(*v.first_violation) + ")";
  return s;
}

std::vector<SweepRow> sweep_alpha(const RunConfig& cfg, std::span<const double> alphas) {
  std::vector<std::future<SweepRow>> jobs;
  jobs.reserve(alphas.size());
  for (double alpha : alphas) {
    RunConfig local = cfg;
    local.alpha = alpha;
    local.validate();
    jobs.push_back(std::async(std::launch::async, [local] {
      const auto records = run_trajectory(local);
      return SweepRow{local.alpha, verdict(records, local.alpha)};
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(jobs.size());
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

void write_csv(std::span<const TrajectoryRecord> records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.t) << ',' << format_number(r.a) << ',' << format_number(r.b)
        << ',' << format_number(r.c) << ',' << format_number(r.d) << ','
        << format_number(r.rel_entropy) << ',' << format_number(r.ree) << ','
        << format_number(r.sigma) << ',' << format_number(r.sigma_e_abs) << ','
        << format_number(r.concurrence) << ',' << (r.conjecture_ok ? "true" : "false")
        << '\n';
  }
}

void emit_csv(std::span<const TrajectoryRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  write_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

std::vector<TrajectoryRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw std::runtime_error("read_csv: missing or unexpected header");
  }
  std::vector<TrajectoryRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) {
      throw std::runtime_error("read_csv: line " + std::to_string(lineno) +
                               ": expected 11 fields");
    }
    TrajectoryRecord r{};
    double* cols[] = {&r.t,   &r.a,     &r.b,     &r.c,           &r.d,
                      &r.rel_entropy, &r.ree, &r.sigma, &r.sigma_e_abs, &r.concurrence};
    for (int i = 0; i < 10; ++i) {
      try {
        *cols[i] = std::stod(f[i]);
      } catch (const std::exception&) {
        throw std::runtime_error("read_csv: line " + std::to_string(lineno) +
                                 ": bad number '" + f[i] + "'");
      }
    }
    if (f[10] != "true" && f[10] != "false") {
      throw std::runtime_error("read_csv: line " + std::to_string(lineno) +
                               ": conjecture_ok must be true or false");
    }
    r.conjecture_ok = f[10] == "true";
    r.sigma_e = r.sigma_e_left = r.sigma_e_right = r.sigma_e_abs;
    out.push_back(r);
  }
  return out;
}

std::vector<TrajectoryRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace qdiss
