#include "lyapgate/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lyapgate/gate_family.hpp"
#include "lyapgate/io.hpp"
#include "lyapgate/models.hpp"
#include "lyapgate/seed.hpp"
#include "lyapgate/solver_clock.hpp"
#include "lyapgate/solver_fixed.hpp"
#include "lyapgate/sweeps.hpp"
#include "lyapgate/threading.hpp"

namespace lyapgate {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::runtime_error("config: " + (path.empty() ? std::string("$") : path) + ": " + msg);
}

// Strict reader: every key must be consumed; strays are reported with their
// field path before anything runs.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail(path_, "expected an object");
  }

  std::string key_path(const char* key) const { return path_ + "." + key; }

  const json* take(const char* key) {
    used_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const char* key, std::optional<double> def = std::nullopt) {
    const json* v = take(key);
    if (!v) {
      if (def) return *def;
      fail(key_path(key), "required number missing");
    }
    if (!v->is_number()) fail(key_path(key), "expected a number");
    return v->get<double>();
  }

  int integer(const char* key, std::optional<int> def = std::nullopt) {
    const json* v = take(key);
    if (!v) {
      if (def) return *def;
      fail(key_path(key), "required integer missing");
    }
    if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
    return v->get<int>();
  }

  bool boolean(const char* key, bool def) {
    const json* v = take(key);
    if (!v) return def;
    if (!v->is_boolean()) fail(key_path(key), "expected a boolean");
    return v->get<bool>();
  }

  std::string text(const char* key, std::optional<std::string> def = std::nullopt) {
    const json* v = take(key);
    if (!v) {
      if (def) return *def;
      fail(key_path(key), "required string missing");
    }
    if (!v->is_string()) fail(key_path(key), "expected a string");
    return v->get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const char* key) {
    const json* v = take(key);
    if (!v) return std::nullopt;
    if (!v->is_array()) fail(key_path(key), "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v->size());
    for (const auto& e : *v) {
      if (!e.is_number()) fail(key_path(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  const json* object(const char* key) {
    const json* v = take(key);
    if (v && !v->is_object()) fail(key_path(key), "expected an object");
    return v;
  }

  void finish() {
    for (const auto& item : j_.items())
      if (!used_.count(item.key())) fail(path_ + "." + item.key(), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config: " + std::string(e.what()));
  }
}

RealVector to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), Eigen::Index(v.size()));
}

std::vector<double> to_std(const RealVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

struct SeedPlan {
  bool present = false;
  std::optional<double> amplitude;      // absolute units
  std::optional<double> amplitude_rel;  // times |u_ad| of the run's horizon
  int harmonics = 3;
  std::optional<double> period;         // default: the run's initial horizon
  std::uint64_t rng_seed = 1;
};

struct ModelPlan {
  std::string preset;
  ZGatePreset zgate;
  CnotPreset cnot;
  bool diag_only = false;
  double ortho_tol = 1e-8;
  std::string output_dir;
};

struct RunPlan {
  ModelPlan common;
  std::string solver;  // "fixed_time" | "clock"
  FixedTimeConfig fixed;
  ClockConfig clock;
  SeedPlan seed;
};

struct SweepPlan {
  ModelPlan common;
  std::vector<double> Tf_values;
  int N_sim = 1000;
};

void parse_model_common(ObjectReader& r, ModelPlan& plan) {
  plan.preset = r.text("preset");
  if (plan.preset != "zgate" && plan.preset != "cnot")
    fail(r.key_path("preset"), "must be \"zgate\" or \"cnot\"");
  if (const json* mj = r.object("model")) {
    ObjectReader m(*mj, ".model");
    if (plan.preset == "zgate") {
      plan.zgate.alpha = m.number("alpha", plan.zgate.alpha);
      plan.zgate.n_levels = m.integer("n_levels", plan.zgate.n_levels);
      plan.zgate.kappa2 = m.number("kappa2", plan.zgate.kappa2);
      plan.zgate.kappa1 = m.number("kappa1", plan.zgate.kappa1);
    } else {
      plan.cnot.alpha2 = m.number("alpha2", plan.cnot.alpha2);
      plan.cnot.n_fock = m.integer("n_fock", plan.cnot.n_fock);
      plan.cnot.g2 = m.number("g2", plan.cnot.g2);
      plan.cnot.k2 = m.number("k2", plan.cnot.k2);
      plan.cnot.k1 = m.number("k1", plan.cnot.k1);
    }
    m.finish();
  }
  plan.diag_only = r.boolean("diag_only", false);
  // coherent-state logical bases are only quasi-orthogonal, so the cnot
  // preset needs a looser Gram tolerance by default
  plan.ortho_tol = r.number("ortho_tol", plan.preset == "cnot" ? 1e-2 : 1e-8);
  plan.output_dir = r.text("output_dir", std::string());
}

void parse_seed(ObjectReader& r, SeedPlan& seed) {
  const json* sj = r.object("seed");
  if (!sj) return;
  ObjectReader s(*sj, ".seed");
  seed.present = true;
  if (const json* a = s.take("amplitude")) {
    if (!a->is_number()) fail(s.key_path("amplitude"), "expected a number");
    seed.amplitude = a->get<double>();
  }
  if (const json* a = s.take("amplitude_rel")) {
    if (!a->is_number()) fail(s.key_path("amplitude_rel"), "expected a number");
    seed.amplitude_rel = a->get<double>();
  }
  if (seed.amplitude && seed.amplitude_rel)
    fail(".seed", "amplitude and amplitude_rel are mutually exclusive");
  if (!seed.amplitude && !seed.amplitude_rel)
    fail(".seed", "amplitude or amplitude_rel required");
  seed.harmonics = s.integer("harmonics", 3);
  if (const json* p = s.take("period")) {
    if (!p->is_number()) fail(s.key_path("period"), "expected a number");
    seed.period = p->get<double>();
  }
  if (const json* v = s.take("rng_seed")) {
    if (!v->is_number_integer()) fail(s.key_path("rng_seed"), "expected an integer");
    if (!v->is_number_unsigned() && v->get<std::int64_t>() < 0)
      fail(s.key_path("rng_seed"), "must be >= 0");
    seed.rng_seed = v->get<std::uint64_t>();
  }
  s.finish();
}

RunPlan parse_run_config(const json& root) {
  RunPlan plan;
  ObjectReader r(root, "");
  parse_model_common(r, plan.common);
  plan.solver = r.text("solver");
  if (plan.solver != "fixed_time" && plan.solver != "clock")
    fail(r.key_path("solver"), "must be \"fixed_time\" or \"clock\"");

  if (plan.solver == "fixed_time") {
    if (root.contains("clock")) fail(".clock", "present but solver is \"fixed_time\"");
    const json* sj = r.object("fixed_time");
    if (!sj) fail(".fixed_time", "required object missing");
    ObjectReader s(*sj, ".fixed_time");
    plan.fixed.Tf = s.number("Tf");
    const auto gains = s.numbers("gains");
    if (!gains) fail(s.key_path("gains"), "required array missing");
    plan.fixed.gains = to_eigen(*gains);
    plan.fixed.max_iters = s.integer("max_iters", plan.fixed.max_iters);
    plan.fixed.infidelity_tol = s.number("infidelity_tol", 0.0);
    const auto lo = s.numbers("u_min");
    const auto hi = s.numbers("u_max");
    if (lo.has_value() != hi.has_value())
      fail(".fixed_time", "u_min and u_max must be given together");
    if (lo) {
      if (lo->size() != gains->size() || hi->size() != gains->size())
        fail(".fixed_time", "u_min/u_max must match the gains length");
      RealMatrix b(2, Eigen::Index(lo->size()));
      b.row(0) = to_eigen(*lo).transpose();
      b.row(1) = to_eigen(*hi).transpose();
      plan.fixed.u_bounds = b;
    }
    plan.fixed.N_sim = s.integer("N_sim", plan.fixed.N_sim);
    plan.fixed.checkpoint_stride = s.integer("checkpoint_stride", 1);
    plan.fixed.stagnation_window = s.integer("stagnation_window", plan.fixed.stagnation_window);
    plan.fixed.stagnation_eps = s.number("stagnation_eps", plan.fixed.stagnation_eps);
    s.finish();
  } else {
    if (root.contains("fixed_time")) fail(".fixed_time", "present but solver is \"clock\"");
    const json* sj = r.object("clock");
    if (!sj) fail(".clock", "required object missing");
    ObjectReader s(*sj, ".clock");
    plan.clock.Tf0 = s.number("Tf0");
    plan.clock.g0 = s.number("g0", plan.clock.g0);
    const auto gains = s.numbers("gains");
    if (!gains) fail(s.key_path("gains"), "required array missing");
    plan.clock.gains = to_eigen(*gains);
    plan.clock.max_iters = s.integer("max_iters", plan.clock.max_iters);
    plan.clock.infidelity_tol = s.number("infidelity_tol", 0.0);
    plan.clock.saturate = s.boolean("saturate", true);
    plan.clock.bounds.u0_max = s.number("u0_max", plan.clock.bounds.u0_max);
    plan.clock.bounds.legacy_symmetric = s.boolean("legacy_symmetric_saturation", false);
    if (const auto umax = s.numbers("u_max")) {
      if (umax->size() != gains->size())
        fail(s.key_path("u_max"), "must match the gains length");
      plan.clock.bounds.u_max = to_eigen(*umax);
    } else if (plan.clock.saturate) {
      fail(s.key_path("u_max"), "required when saturate is true");
    }
    plan.clock.N_sim = s.integer("N_sim", plan.clock.N_sim);
    plan.clock.checkpoint_stride = s.integer("checkpoint_stride", 1);
    plan.clock.stagnation_window = s.integer("stagnation_window", plan.clock.stagnation_window);
    plan.clock.stagnation_eps = s.number("stagnation_eps", plan.clock.stagnation_eps);
    s.finish();
  }
  parse_seed(r, plan.seed);
  r.finish();
  return plan;
}

SweepPlan parse_sweep_config(const json& root) {
  SweepPlan plan;
  ObjectReader r(root, "");
  parse_model_common(r, plan.common);
  const json* sj = r.object("sweep");
  if (!sj) fail(".sweep", "required object missing");
  ObjectReader s(*sj, ".sweep");
  const auto values = s.numbers("Tf_values");
  const json* jmin = s.take("Tf_min");
  const json* jmax = s.take("Tf_max");
  const json* jcount = s.take("count");
  if (values && (jmin || jmax || jcount))
    fail(".sweep", "give either Tf_values or Tf_min/Tf_max/count");
  if (values) {
    plan.Tf_values = *values;
  } else {
    if (!jmin || !jmax || !jcount) fail(".sweep", "Tf_min, Tf_max and count required together");
    if (!jmin->is_number() || !jmax->is_number()) fail(".sweep", "Tf_min/Tf_max must be numbers");
    if (!jcount->is_number_integer()) fail(s.key_path("count"), "expected an integer");
    const double a = jmin->get<double>(), b = jmax->get<double>();
    const int count = jcount->get<int>();
    if (count < 1) fail(s.key_path("count"), "must be >= 1");
    if (!(a <= b)) fail(".sweep", "Tf_min must be <= Tf_max");
    for (int i = 0; i < count; ++i)
      plan.Tf_values.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
  }
  if (plan.Tf_values.empty()) fail(s.key_path("Tf_values"), "Tf grid must be nonempty");
  for (double tf : plan.Tf_values)
    if (!(tf > 0)) fail(s.key_path("Tf_values"), "every Tf must be > 0");
  plan.N_sim = s.integer("N_sim", 1000);
  if (plan.N_sim < 10) fail(s.key_path("N_sim"), "must be >= 10");
  s.finish();
  r.finish();
  return plan;
}

std::string resolve_output_dir(const CliOptions& opt, const std::string& cfg_dir) {
  if (!opt.output_dir.empty()) return opt.output_dir;
  if (!cfg_dir.empty()) return cfg_dir;
  if (const char* env = std::getenv("LYAPGATE_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

// Long-running profiles are gated: above dim 400 a run needs --profile full
// and gets an up-front single-core wall-time estimate either way.
bool dimension_allowed(int dim, int n_active, int N_sim, int passes, const std::string& profile) {
  if (dim <= 400) return true;
  const double min_per_pass = 20.0 * std::pow(double(dim) / 578.0, 3) * (double(N_sim) / 250.0) *
                              (double(n_active) / 4.0);
  const double hours = min_per_pass * double(passes) / 60.0;
  if (profile == "full") {
    std::fprintf(stderr,
                 "full profile: dimension %d, estimated %.1f min/iteration, ~%.1f h total on one "
                 "desk-class core\n",
                 dim, min_per_pass, hours);
    return true;
  }
  std::fprintf(stderr,
               "refusing dimension %d under the desk profile (estimated %.1f min/iteration, "
               "~%.1f h total); rerun with --profile full\n",
               dim, min_per_pass, hours);
  return false;
}

json model_json(const ModelPlan& plan) {
  if (plan.preset == "zgate")
    return json{{"alpha", plan.zgate.alpha},
                {"n_levels", plan.zgate.n_levels},
                {"kappa2", plan.zgate.kappa2},
                {"kappa1", plan.zgate.kappa1}};
  return json{{"alpha2", plan.cnot.alpha2},
              {"n_fock", plan.cnot.n_fock},
              {"g2", plan.cnot.g2},
              {"k2", plan.cnot.k2},
              {"k1", plan.cnot.k1}};
}

// Fully materialized config echo: a run is reproducible from summary.json
// alone, so every default is spelled out here.
json resolved_config_json(const RunPlan& plan, double seed_amplitude, double seed_period,
                          const std::string& outdir) {
  json j;
  j["preset"] = plan.common.preset;
  j["model"] = model_json(plan.common);
  j["diag_only"] = plan.common.diag_only;
  j["ortho_tol"] = plan.common.ortho_tol;
  j["solver"] = plan.solver;
  if (plan.solver == "fixed_time") {
    const auto& c = plan.fixed;
    json s{{"Tf", c.Tf},
           {"gains", to_std(c.gains)},
           {"max_iters", c.max_iters},
           {"infidelity_tol", c.infidelity_tol},
           {"N_sim", c.N_sim},
           {"checkpoint_stride", c.checkpoint_stride},
           {"stagnation_window", c.stagnation_window},
           {"stagnation_eps", c.stagnation_eps}};
    if (c.u_bounds) {
      s["u_min"] = to_std(c.u_bounds->row(0).transpose());
      s["u_max"] = to_std(c.u_bounds->row(1).transpose());
    } else {
      s["u_min"] = nullptr;
      s["u_max"] = nullptr;
    }
    j["fixed_time"] = s;
  } else {
    const auto& c = plan.clock;
    json s{{"Tf0", c.Tf0},
           {"g0", c.g0},
           {"gains", to_std(c.gains)},
           {"max_iters", c.max_iters},
           {"infidelity_tol", c.infidelity_tol},
           {"saturate", c.saturate},
           {"u0_max", c.bounds.u0_max},
           {"legacy_symmetric_saturation", c.bounds.legacy_symmetric},
           {"N_sim", c.N_sim},
           {"checkpoint_stride", c.checkpoint_stride},
           {"stagnation_window", c.stagnation_window},
           {"stagnation_eps", c.stagnation_eps}};
    if (c.bounds.u_max.size() > 0) s["u_max"] = to_std(c.bounds.u_max);
    else s["u_max"] = nullptr;
    j["clock"] = s;
  }
  if (plan.seed.present) {
    j["seed"] = json{{"amplitude", seed_amplitude},
                     {"harmonics", plan.seed.harmonics},
                     {"period", seed_period},
                     {"rng_seed", plan.seed.rng_seed}};
  } else {
    j["seed"] = nullptr;
  }
  j["output_dir"] = outdir;
  return j;
}

}  // namespace

int cmd_run(const std::string& config_path, const CliOptions& opt) {
  try {
    const json root = load_json(config_path);
    RunPlan plan = parse_run_config(root);
    const ModelPlan& mp = plan.common;

    BuiltModel built = mp.preset == "zgate" ? build_zgate(mp.zgate) : build_cnot(mp.cnot);
    const GateFamily family = build_family(built.gate, mp.diag_only, mp.ortho_tol);
    const int n_active = int(family.active_indices().size());

    const bool clock = plan.solver == "clock";
    const double horizon = clock ? plan.clock.Tf0 : plan.fixed.Tf;
    const int N = clock ? plan.clock.N_sim : plan.fixed.N_sim;
    const int iters = clock ? plan.clock.max_iters : plan.fixed.max_iters;
    if (!dimension_allowed(built.model.dim(), n_active, N, iters, opt.profile)) return 1;

    ThreadPool pool(ThreadPool::resolve_threads(opt.threads));
    const double alpha_gate =
        mp.preset == "zgate" ? mp.zgate.alpha : std::sqrt(mp.cnot.alpha2);
    ControlSignal u0 = adiabatic_control(horizon, alpha_gate, N);
    double seed_amp = 0.0, seed_period = horizon;
    if (plan.seed.present) {
      const double u_ad = std::abs(std::numbers::pi / (4.0 * horizon * alpha_gate));
      seed_amp = plan.seed.amplitude ? *plan.seed.amplitude : *plan.seed.amplitude_rel * u_ad;
      if (plan.seed.period) seed_period = *plan.seed.period;
      u0 = make_seed(u0, SeedConfig{seed_amp, plan.seed.harmonics, seed_period,
                                    plan.seed.rng_seed});
    }

    const std::string outdir = resolve_output_dir(opt, mp.output_dir);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<IterationReport> reports;
    ControlSignal final_control;
    StopReason stop = StopReason::MaxIters;
    double eps_num = 0.0;
    double tf_final = horizon;
    if (!clock) {
      FixedTimeConfig cfg = plan.fixed;
      cfg.pool = &pool;
      FixedTimeResult r = run(built.model, family, u0, cfg);
      reports = std::move(r.reports);
      final_control = std::move(r.final_control);
      stop = r.stop;
      eps_num = r.eps_num;
    } else {
      ClockConfig cfg = plan.clock;
      cfg.pool = &pool;
      ClockResult r = run_clock(built.model, family, u0, cfg);
      reports = std::move(r.reports);
      final_control = std::move(r.final_control);
      stop = r.stop;
      eps_num = r.eps_num;
      tf_final = r.Tf_history(r.Tf_history.size() - 1);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!clock && !reports.empty()) tf_final = reports.back().Tf;

    fs::create_directories(outdir);
    write_iterations_csv(outdir + "/iterations.csv", reports);
    write_control_csv(outdir + "/final_control.csv", final_control);

    json summary;
    summary["command"] = "run";
    summary["config"] = resolved_config_json(plan, seed_amp, seed_period, outdir);
    summary["threads"] = pool.size();
    const IterationReport& last = reports.back();
    summary["outcome"] = json{{"stop", to_string(stop)},
                              {"iterations", reports.size()},
                              {"eps_num", eps_num},
                              {"infidelity", last.infidelity},
                              {"corrected_infidelity", last.corrected_infidelity},
                              {"Tf", tf_final},
                              {"wall_time_seconds", wall}};
    std::ofstream(outdir + "/summary.json") << summary.dump(2) << "\n";

    std::printf("run: stop=%s iterations=%zu infidelity=%.6g corrected=%.6g Tf=%.6g "
                "eps_num=%.3g wall=%.1fs -> %s\n",
                to_string(stop), reports.size(), last.infidelity, last.corrected_infidelity,
                tf_final, eps_num, wall, outdir.c_str());
    return stop == StopReason::Tolerance ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int cmd_sweep_adiabatic(const std::string& config_path, const CliOptions& opt) {
  try {
    const json root = load_json(config_path);
    SweepPlan plan = parse_sweep_config(root);
    const ModelPlan& mp = plan.common;

    BuiltModel built = mp.preset == "zgate" ? build_zgate(mp.zgate) : build_cnot(mp.cnot);
    const GateFamily family = build_family(built.gate, mp.diag_only, mp.ortho_tol);
    const std::vector<int> active = family.active_indices();
    if (!dimension_allowed(built.model.dim(), int(active.size()), plan.N_sim,
                           int(plan.Tf_values.size()), opt.profile))
      return 1;

    ThreadPool pool(ThreadPool::resolve_threads(opt.threads));
    const double alpha_gate =
        mp.preset == "zgate" ? mp.zgate.alpha : std::sqrt(mp.cnot.alpha2);

    std::vector<SweepPoint> points;
    for (double tf : plan.Tf_values) {
      const ControlSignal u = adiabatic_control(tf, alpha_gate, plan.N_sim);
      std::vector<Matrix> finals(active.size());
      auto body = [&](int i) {
        const GateMember& mem = family.members[size_t(active[size_t(i)])];
        finals[size_t(i)] =
            integrate_lindblad_forward(built.model, u, mem.rho_init, plan.N_sim).at(plan.N_sim);
      };
      pool.parallel_for(0, int(active.size()), body);
      const double inf = gate_infidelity(finals, family, active);
      const double corr = corrected_infidelity_pass(built.model, family, u, inf, &pool);
      points.push_back({tf, inf, corr});
    }

    const std::string outdir = resolve_output_dir(opt, mp.output_dir);
    fs::create_directories(outdir);
    write_sweep_csv(outdir + "/sweep.csv", points);
    std::printf("sweep: %zu points -> %s/sweep.csv\n", points.size(), outdir.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int cmd_inspect(const std::string& control_path) {
  try {
    const ControlSignal u = read_control_csv(control_path);
    std::printf("channels: %d\n", u.channels());
    std::printf("grid: [%.10g, %.10g], %d steps, h = %.10g\n", u.grid.t_start, u.grid.t_end,
                u.grid.n_steps, u.grid.h());
    for (int k = 0; k < u.channels(); ++k) {
      const RealVector row = u.values.row(k).transpose();
      std::printf("u_%d: min %.10g, max %.10g, integral %.10g\n", k + 1, row.minCoeff(),
                  row.maxCoeff(), trapezoid(row, u.grid.h()));
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Lyapunov gate synthesis for open quantum systems"};
  app.require_subcommand(1);
  CliOptions opt;
  std::string config_path, control_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--profile", opt.profile, "desk (default) or full")
        ->check(CLI::IsMember({"desk", "full"}));
    sub->add_option("--threads", opt.threads, "sigma-copy worker cap (0 = hardware)");
    sub->add_option("--output-dir", opt.output_dir,
                    "output directory (overrides config and LYAPGATE_OUTPUT_DIR)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run a solver from a JSON config");
  run_cmd->add_option("config", config_path, "config file")->required();
  add_common(run_cmd);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep-adiabatic", "constant-pulse baseline over a Tf grid");
  sweep_cmd->add_option("config", config_path, "config file")->required();
  add_common(sweep_cmd);

  CLI::App* inspect_cmd = app.add_subcommand("inspect", "summarize a control CSV");
  inspect_cmd->add_option("control", control_path, "control CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (run_cmd->parsed()) return cmd_run(config_path, opt);
  if (sweep_cmd->parsed()) return cmd_sweep_adiabatic(config_path, opt);
  return cmd_inspect(control_path);
}

}  // namespace lyapgate
