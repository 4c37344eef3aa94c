#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vieta/angular.hpp"
#include "vieta/conservation.hpp"
#include "vieta/eliminant.hpp"
#include "vieta/errors.hpp"
#include "vieta/io.hpp"
#include "vieta/sturm.hpp"
#include "vieta/system.hpp"
#include "vieta/tracker.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vieta;

namespace {

struct Overrides {
  std::optional<long> steps;
  std::vector<std::string> t_range; // two rational strings when present
  bool exact_angular = false;
  // tolerance knobs, applied on top of the config file
  std::optional<double> tol_root, eps_real, eps_conj, eps_cluster, tol_pair,
      eps_deriv, delta_event, tol_conservation, tol_momentum, eps_imag;
};

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
  if (ov.steps) cfg.steps = *ov.steps;
  if (!ov.t_range.empty()) {
    cfg.t_start = Rational::parse(ov.t_range[0]);
    cfg.t_end = Rational::parse(ov.t_range[1]);
  }
  if (ov.exact_angular) cfg.exact_angular = true;
  auto set = [](double& field, const std::optional<double>& v) {
    if (v) field = *v;
  };
  set(cfg.tol.tol_root, ov.tol_root);
  set(cfg.tol.eps_real, ov.eps_real);
  set(cfg.tol.eps_conj, ov.eps_conj);
  set(cfg.tol.eps_cluster, ov.eps_cluster);
  set(cfg.tol.tol_pair, ov.tol_pair);
  set(cfg.tol.eps_deriv, ov.eps_deriv);
  set(cfg.tol.delta_event, ov.delta_event);
  set(cfg.tol.tol_conservation, ov.tol_conservation);
  set(cfg.tol.tol_momentum, ov.tol_momentum);
  set(cfg.tol.eps_imag, ov.eps_imag);
  if (cfg.steps < 2) throw ConfigError("steps must be at least 2");
  if (!(cfg.t_start < cfg.t_end))
    throw ConfigError("t_start must be less than t_end");
}

// Artifact path: per-file config override wins; otherwise a default name
// inside the --out directory.  Relative overrides resolve inside --out.
std::string artifact_path(const std::string& out_dir,
                          const std::optional<std::string>& override_path,
                          const char* default_name) {
  fs::path base(out_dir);
  if (override_path) {
    fs::path p(*override_path);
    return (p.is_absolute() ? p : base / p).string();
  }
  return (base / default_name).string();
}

std::string rat_str(const Rational& r) { return r.str(); }

json angular_exact_json(const AngularExactResult& ax) {
  json j;
  j["mz"] = {{"exact", rat_str(ax.mz)}, {"approx", ax.mz.to_double()}};
  j["degrees"] = {{"total", ax.deg_m_total},
                  {"proper", ax.deg_m_proper},
                  {"redundant", ax.deg_m_redundant}};
  j["alpha"] = ax.alpha.str("t");
  j["beta"] = ax.beta.str("t");
  j["lead_ratio"] = rat_str(ax.lead_ratio);
  j["alpha_matches_common_factor"] = ax.alpha_matches_common_factor;
  j["primes_used"] = ax.primes_used;
  return j;
}

int run_audit(const RunConfig& cfg, const std::string& out_dir) {
  PolySystem sys = load_system(cfg.f1_text, cfg.f2_text);
  Eliminants el = eliminants(sys);
  TrackResult tr = track(sys, cfg.t_start, cfg.t_end, cfg.steps, cfg.tol);

  std::optional<Rational> expected_mz;
  std::optional<AngularExactResult> ax;
  if (cfg.exact_angular) {
    ax = angular_momentum_exact(sys, el, cfg.tol);
    expected_mz = ax->mz;
  }

  std::vector<ConservationReport> reports;
  reports.push_back(check_com_motion(el, tr.samples, cfg.tol));
  reports.push_back(check_momentum(el, tr.samples, cfg.tol));
  reports.push_back(check_force(tr.samples, cfg.tol));
  reports.push_back(check_energy(el, tr.samples, cfg.tol));
  reports.push_back(angular_momentum_numeric(tr.samples, cfg.tol, expected_mz));
  const int maxp = std::min(sys.root_count(), cfg.higher_sums_max);
  for (int I = 3; I <= maxp; ++I)
    reports.push_back(check_higher_sums(el, tr.samples, I, cfg.tol));

  write_file(artifact_path(out_dir, cfg.out_report, "report.json"),
             report_json(reports));
  if (ax) {
    json j;
    j["exact"] = angular_exact_json(*ax);
    write_file(artifact_path(out_dir, std::nullopt, "angular.json"),
               j.dump(2) + "\n");
  }

  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.law;
    if (r.expected_exact) std::cout << "  expected=" << *r.expected_exact;
    std::cout << "  max_drift=" << format_double(r.max_drift) << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact conservation-law auditor for polynomial particle systems"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  Overrides ov;
  app.add_option("--config", config_path, "run configuration file")
      ->required();
  app.add_option("--out", out_dir, "output directory for artifacts");
  app.add_option("--steps", ov.steps, "number of samples (including both endpoints)");
  app.add_option("--t-range", ov.t_range,
                 "time range as two exact rationals, e.g. --t-range -2 7/2")
      ->expected(2);
  app.add_flag("--exact-angular", ov.exact_angular,
               "run the exact angular-momentum elimination pipeline");
  app.add_option("--tol-root", ov.tol_root, "root residual target");
  app.add_option("--tol-eps-real", ov.eps_real, "imaginary snap threshold");
  app.add_option("--tol-eps-conj", ov.eps_conj, "conjugate pairing distance");
  app.add_option("--tol-eps-cluster", ov.eps_cluster, "cluster radius");
  app.add_option("--tol-pair", ov.tol_pair, "assembly residual tolerance");
  app.add_option("--tol-eps-deriv", ov.eps_deriv,
                 "derivative denominator cutoff");
  app.add_option("--tol-delta-event", ov.delta_event,
                 "event refinement width");
  app.add_option("--tol-conservation", ov.tol_conservation,
                 "generic drift tolerance");
  app.add_option("--tol-momentum", ov.tol_momentum,
                 "momentum drift tolerance (absolute)");
  app.add_option("--tol-eps-imag", ov.eps_imag,
                 "residual imaginary tolerance");

  auto* cmd_parse =
      app.add_subcommand("parse", "echo the canonical form of the system");
  auto* cmd_elim = app.add_subcommand(
      "eliminate", "compute eliminants, discriminants and the event locus");
  auto* cmd_sim =
      app.add_subcommand("simulate", "sample the flow and write the trajectory CSV");
  auto* cmd_events =
      app.add_subcommand("events", "isolate creation/annihilation events");
  auto* cmd_audit =
      app.add_subcommand("audit", "check every conservation law over the run");
  auto* cmd_angular = app.add_subcommand(
      "angular", "angular momentum: numeric audit, optionally exact");
  bool angular_exact_flag = false;
  cmd_angular->add_flag("--exact", angular_exact_flag,
                        "run the exact elimination pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2; // bad invocation is a config error
  }

  try {
    RunConfig cfg = load_config_file(config_path);
    apply_overrides(cfg, ov);
    if (angular_exact_flag) cfg.exact_angular = true;

    if (cmd_parse->parsed()) {
      PolySystem sys = load_system(cfg.f1_text, cfg.f2_text);
      std::cout << "F1 = " << sys.f1.str() << "\n"
                << "F2 = " << sys.f2.str() << "\n"
                << "n = " << sys.n << ", m = " << sys.m
                << ", N = " << sys.root_count() << "\n"
                << "structure_ok = " << (sys.structure_ok ? "true" : "false")
                << "\n";
      return 0;
    }

    if (cmd_elim->parsed()) {
      PolySystem sys = load_system(cfg.f1_text, cfg.f2_text);
      Eliminants el = eliminants(sys);
      UPolyQ dx = discriminant(el.in_x);
      UPolyQ dy = discriminant(el.in_y);
      UPolyQ common = common_factor(dx, dy);
      write_file(artifact_path(out_dir, std::nullopt, "eliminants.json"),
                 eliminants_json(el, dx, dy, common));
      std::cout << "lead_x = " << el.in_x.lead.str()
                << ", lead_y = " << el.in_y.lead.str()
                << ", leading_form_resultant = " << el.f.str() << "\n"
                << "common factor degree = " << common.degree() << "\n";
      return 0;
    }

    if (cmd_sim->parsed()) {
      PolySystem sys = load_system(cfg.f1_text, cfg.f2_text);
      TrackResult tr = track(sys, cfg.t_start, cfg.t_end, cfg.steps, cfg.tol);
      write_file(artifact_path(out_dir, cfg.out_trajectory, "trajectory.csv"),
                 trajectory_csv(tr.samples));
      std::cout << tr.samples.size() << " samples, " << tr.events.size()
                << " event(s) in range\n";
      return 0;
    }

    if (cmd_events->parsed()) {
      PolySystem sys = load_system(cfg.f1_text, cfg.f2_text);
      Eliminants el = eliminants(sys);
      std::vector<Event> events =
          detect_events(el, cfg.t_start, cfg.t_end, cfg.tol);
      write_file(artifact_path(out_dir, cfg.out_events, "events.json"),
                 events_json(events));
      for (const auto& ev : events)
        std::cout << "event in (" << ev.t_lo.str() << ", " << ev.t_hi.str()
                  << ")\n";
      std::cout << events.size() << " event(s)\n";
      return 0;
    }

    if (cmd_audit->parsed()) return run_audit(cfg, out_dir);

    if (cmd_angular->parsed()) {
      PolySystem sys = load_system(cfg.f1_text, cfg.f2_text);
      Eliminants el = eliminants(sys);
      TrackResult tr = track(sys, cfg.t_start, cfg.t_end, cfg.steps, cfg.tol);
      std::optional<AngularExactResult> ax;
      if (cfg.exact_angular) ax = angular_momentum_exact(sys, el, cfg.tol);
      ConservationReport rep = angular_momentum_numeric(
          tr.samples, cfg.tol, ax ? std::optional<Rational>(ax->mz) : std::nullopt);
      json j;
      j["numeric"] = json::parse(report_json({rep}))[0];
      if (ax) j["exact"] = angular_exact_json(*ax);
      write_file(artifact_path(out_dir, std::nullopt, "angular.json"),
                 j.dump(2) + "\n");
      std::cout << (rep.pass ? "pass" : "FAIL") << "  " << rep.law
                << "  max_drift=" << format_double(rep.max_drift) << "\n";
      if (ax)
        std::cout << "exact M_z = " << ax->mz.str() << " ("
                  << format_double(ax->mz.to_double()) << "), degrees "
                  << ax->deg_m_proper << "+" << ax->deg_m_redundant << "\n";
      return rep.pass ? 0 : 1;
    }

    return 2; // no subcommand (require_subcommand should prevent this)
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateSystem& e) {
    std::cerr << "degenerate system: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
