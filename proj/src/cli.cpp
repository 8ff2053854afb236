#include "csf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "csf/diagnostics.hpp"
#include "csf/exact.hpp"
#include "csf/flow.hpp"
#include "csf/generators.hpp"
#include "csf/graph_flow.hpp"
#include "csf/io.hpp"
#include "csf/singularity.hpp"
#include "csf/text.hpp"

namespace csf {

namespace fs = std::filesystem;

namespace {

PlanePoint parse_point(const std::string& text) {
  const auto v = parse_numbers(text);
  if (v.size() != 2) throw Error(Errc::config, "expected a point 'x,y', got '" + text + "'");
  return {v[0], v[1]};
}

std::vector<double> parse_list(const std::string& text) {
  try {
    return parse_numbers(text);
  } catch (const Error& e) {
    throw Error(Errc::config, e.what());
  }
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

// `key = value` lines appended as `--key=value` unless the flag is already on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw Error(Errc::config, e.what());
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::config, path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value == "true") args.push_back(flag);
    else if (value != "false") args.push_back(flag + "=" + value);
  }
  return args;
}

DiscreteCurve load_input(const std::string& spec, Index n, bool n_given, std::uint64_t seed) {
  const auto [name, rest] = split_name(spec);
  if (name == "polygon") {
    if (rest.empty()) throw Error(Errc::config, "polygon input needs a path: polygon:<file>");
    DiscreteCurve c = read_closed_curve(std::string(rest));
    return n_given ? resample_smooth(c, n) : c;
  }
  if (name == "blob" && rest.empty()) return random_blob(seed, n);
  try {
    return named_curve(spec, n);
  } catch (const Error& e) {
    throw Error(e.code() == Errc::domain ? Errc::config : e.code(), e.what());
  }
}

std::size_t count_events(const Trajectory& t, EventKind kind) {
  return static_cast<std::size_t>(
      std::count_if(t.events.begin(), t.events.end(), [kind](const Event& e) { return e.kind == kind; }));
}

std::optional<SpacetimePoint> huisken_option(const std::string& x0, const std::optional<double>& t0) {
  if (x0.empty() && !t0) return std::nullopt;
  if (x0.empty() || !t0) throw Error(Errc::config, "--huisken-x0 and --huisken-t0 go together");
  return SpacetimePoint{parse_point(x0), *t0};
}

/// Records with blowup bookkeeping (argmax positions) for trajectories read from disk.
Trajectory with_snapshot_records(const Trajectory& traj) {
  Trajectory copy = traj;
  copy.records = snapshot_records(traj, {});
  return copy;
}

struct EvolveArgs {
  std::string input;
  Index n = 512;
  std::uint64_t seed = 1;
  StepControl control;
  std::string spacing = "auto";
  RecordPolicy policy;
  std::string huisken_x0;
  std::optional<double> huisken_t0;
  std::string output;
};

int cmd_evolve(const EvolveArgs& a, bool n_given, std::ostream& out) {
  StepControl control = a.control;
  if (a.spacing != "auto") {
    try {
      control.target_vertex_spacing = parse_double(a.spacing);
    } catch (const Error&) {
      throw Error(Errc::config, "--spacing must be 'auto' or a number");
    }
  }
  control.validate();
  RecordPolicy policy = a.policy;
  policy.huisken_center = huisken_option(a.huisken_x0, a.huisken_t0);
  const DiscreteCurve initial = load_input(a.input, a.n, n_given, a.seed);
  const Trajectory traj = evolve(initial, control, policy);
  write_trajectory(a.output, traj);
  const EventKind stop = *traj.stop_reason();
  out << "stop=" << to_string(stop) << " t=" << format_double(traj.t_end())
      << " steps=" << traj.snapshots.back().step << " snapshots=" << traj.snapshots.size()
      << " remeshes=" << count_events(traj, EventKind::remesh) << "\n";
  if (stop == EventKind::stop_embeddedness)
    throw Error(Errc::numerical, "curve lost embeddedness at t = " + format_double(traj.t_end()) +
                                     "; partial trajectory written to " + a.output);
  return 0;
}

struct GraphArgs {
  std::string input;
  Index n = 512;
  double t_end = 0.0;
  std::optional<double> dt;
  std::string u0 = "zero";
  std::size_t stride = 10;
  std::string output;
};

int cmd_graph_evolve(const GraphArgs& a, std::ostream& out) {
  const auto [name, rest] = split_name(a.input);
  BaseCurveData base;
  if (name == "circle") {
    const auto p = parse_list(std::string(rest));
    if (p.size() != 1) throw Error(Errc::config, "graph base circle:R takes one parameter");
    base = circle_base(p[0], a.n);
  } else if (name == "ellipse") {
    const auto p = parse_list(std::string(rest));
    if (p.size() != 2) throw Error(Errc::config, "graph base ellipse:a,b takes two parameters");
    base = ellipse_base(p[0], p[1], a.n);
  } else {
    base = polygon_base(load_input(a.input, a.n, true, 1), a.n);
  }

  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(base.size());
  const auto [u_name, u_rest] = split_name(a.u0);
  if (u_name == "cos") {
    const auto p = parse_list(std::string(u_rest));
    if (p.size() != 2) throw Error(Errc::config, "--u0 cos:m,amplitude takes two parameters");
    const double L = base.dx * static_cast<double>(base.size());
    for (Index j = 0; j < base.size(); ++j)
      u0(j) = p[1] * std::cos(p[0] * 2.0 * std::numbers::pi * static_cast<double>(j) * base.dx / L);
  } else if (u_name != "zero") {
    throw Error(Errc::config, "--u0 must be 'zero' or 'cos:m,amplitude'");
  }
  if (!(a.t_end > 0.0)) throw Error(Errc::config, "--t-end must be positive");
  const double dt = a.dt ? *a.dt : graph_stable_dt({u0, 0.0}, base);
  const GraphRun run = graph_evolve(base, u0, a.t_end, dt, a.stride);

  Trajectory traj;
  std::size_t step = 0;
  for (const GraphState& s : run.states) {
    const DiscreteCurve c = to_curve(s, base);
    traj.snapshots.push_back({step, {c, s.t}});
    traj.records.push_back(make_record(c, s.t));
    step += a.stride;
  }
  const double t_last = run.states.back().t;
  traj.events.push_back({t_last, run.validity_stop ? EventKind::stop_validity : EventKind::stop_tmax, step});
  write_trajectory(a.output, traj);
  out << "stop=" << to_string(traj.events.back().kind) << " t=" << format_double(t_last)
      << " dt=" << format_double(dt) << " states=" << run.states.size() << "\n";
  return 0;
}

struct DiagnoseArgs {
  std::string trajectory;
  std::string output;
  std::string huisken_x0;
  std::optional<double> huisken_t0;
  std::string kappa_min_form = "displayed";
};

int cmd_diagnose(const DiagnoseArgs& a, std::ostream& out) {
  const Trajectory traj = read_trajectory(a.trajectory);
  const fs::path dir = a.output.empty() ? fs::path(a.trajectory) / "diagnose" : fs::path(a.output);
  fs::create_directories(dir);

  std::optional<SpacetimePoint> center = huisken_option(a.huisken_x0, a.huisken_t0);
  const auto reason = traj.stop_reason();
  if (!center && (reason == EventKind::stop_curvature || reason == EventKind::stop_area)) {
    const Trajectory annotated = with_snapshot_records(traj);
    center = SpacetimePoint{detect_blowup_point(annotated), extinction_time_from_stop(annotated)};
  }

  RecordOptions opts;
  opts.distance_ratio = true;
  opts.huisken_center = center;
  opts.shrinker = true;
  Trajectory snap = traj;
  snap.records = snapshot_records(traj, opts);
  write_file_atomic(dir / "records.csv", records_csv(snap.records));

  Trajectory dense = traj;
  if (dense.records.empty()) dense.records = snap.records;

  std::vector<CheckReport> checks;
  checks.push_back(area_law_check(dense));
  checks.push_back(area_rate_check(dense));
  checks.push_back(length_dissipation_check(dense));
  checks.push_back(length_monotone_check(dense));
  checks.push_back(total_abs_curvature_check(dense));
  checks.push_back(distance_ratio_monotonicity_check(snap));
  if (snap.records.front().kappa_min > 0.0) {
    checks.push_back(harnack_check(snap));
    if (a.kappa_min_form != "displayed" && a.kappa_min_form != "ode")
      throw Error(Errc::config, "--kappa-min-form must be 'displayed' or 'ode'");
    checks.push_back(kappa_min_bound_check(
        dense, a.kappa_min_form == "ode" ? KappaMinBound::ode : KappaMinBound::displayed));
  }
  if (center && center->t0 > traj.t_end()) {
    HuiskenReport h = huisken_monotonicity_check(traj, *center);
    checks.push_back(std::move(h.monotone));
    checks.push_back(std::move(h.rate));
  }

  std::string csv = "name,status,worst_margin,checked,skipped\n";
  std::vector<std::string> failed;
  for (const CheckReport& c : checks) {
    csv += c.name + "," + (c.passed ? "pass" : "fail") + "," +
           (c.checked ? format_double(c.worst_margin) : std::string()) + "," + std::to_string(c.checked) + "," +
           std::to_string(c.skipped) + "\n";
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " worst_margin=" << format_double(c.worst_margin)
        << " checked=" << c.checked << " skipped=" << c.skipped << "\n";
    if (!c.passed) failed.push_back(c.name);
  }
  write_file_atomic(dir / "checks.csv", csv);
  if (!failed.empty()) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ",") + f;
    throw Error(Errc::check_failed, "checks failed: " + names);
  }
  return 0;
}

struct RescaleArgs {
  std::string trajectory;
  std::string output;
  std::string lambdas = "2,4,8,16";
  std::string t_rescaled = "-1";
  std::optional<double> T;
  std::string x0;
  std::string T_source = "area";
};

int cmd_rescale(const RescaleArgs& a, std::ostream& out) {
  const Trajectory traj = read_trajectory(a.trajectory);
  const Trajectory annotated = with_snapshot_records(traj);
  RescaleFrame frame;
  if (a.T) frame.T = *a.T;
  else if (a.T_source == "stop") frame.T = extinction_time_from_stop(traj.records.empty() ? annotated : traj);
  else if (a.T_source == "area") frame.T = traj.t_begin() + extinction_time_estimate(traj.snapshots.front().state.curve);
  else throw Error(Errc::config, "--T-source must be 'stop' or 'area'");
  frame.x0 = a.x0.empty() ? detect_blowup_point(annotated) : parse_point(a.x0);

  const fs::path dir = a.output;
  fs::create_directories(dir / "slices");
  std::string csv = "lambda,t_rescaled,fit_radius,deviation_ratio,shrinker_residual\n";
  int index = 0;
  for (double lambda : parse_list(a.lambdas)) {
    for (double tr : parse_list(a.t_rescaled)) {
      frame.lambda = lambda;
      const RescaledSlice slice = parabolic_rescale(traj, frame, tr);
      const RoundnessReport rr = roundness(slice.curve);
      const double sr = shrinker_residual(slice.curve);
      char name[32];
      std::snprintf(name, sizeof name, "slice_%03d.csv", index++);
      write_curve(dir / "slices" / name, slice.curve.vertices());
      csv += format_double(lambda) + "," + format_double(tr) + "," + format_double(rr.fit_radius) + "," +
             format_double(rr.deviation_ratio) + "," + format_double(sr) + "\n";
      if (slice.remesh_boundary)
        out << "warning: slice lambda=" << format_double(lambda) << " t=" << format_double(tr)
            << " straddles a remesh; nearest snapshot used\n";
    }
  }
  write_file_atomic(dir / "roundness.csv", csv);
  out << "x0=" << format_double(frame.x0.x()) << "," << format_double(frame.x0.y()) << " T=" << format_double(frame.T)
      << " slices=" << index << "\n";
  return 0;
}

struct ExactArgs {
  std::string kind;
  double t = 0.0;
  Index n = 512;
  double radius = 1.0;
  std::string center = "0,0";
  double clip = 1.45;
  double h = 1e-5;
  std::string output;
};

int cmd_exact(const ExactArgs& a, std::ostream& out) {
  ExactSolutionSpec spec;
  if (a.kind == "circle") spec.kind = ExactKind::circle;
  else if (a.kind == "grim-reaper" || a.kind == "grim_reaper") spec.kind = ExactKind::grim_reaper;
  else if (a.kind == "paperclip") spec.kind = ExactKind::paperclip;
  else if (a.kind == "hairclip") spec.kind = ExactKind::hairclip;
  else throw Error(Errc::config, "--kind must be circle, grim-reaper, paperclip or hairclip");
  spec.radius = a.radius;
  spec.center = parse_point(a.center);
  spec.clip = a.clip;
  spec.sample_count = a.n;
  const Polyline p = sample(spec, a.t);
  const double implicit = implicit_residual(spec, a.t, p.points);
  const double velocity = normal_velocity_residual(spec, a.t, a.h);
  const fs::path dir = a.output;
  fs::create_directories(dir);
  write_curve(dir / "curve.csv", p.points, p.topology);
  write_file_atomic(dir / "residuals.csv", "quantity,value\nimplicit_residual," + format_double(implicit) +
                                               "\nnormal_velocity_residual," + format_double(velocity) + "\n");
  out << "implicit_residual=" << format_double(implicit) << " normal_velocity_residual=" << format_double(velocity)
      << "\n";
  return 0;
}

// Built-in invariant suite, a few seconds in total.
int cmd_selftest(std::ostream& out) {
  constexpr double pi = std::numbers::pi;
  std::vector<std::pair<std::string, std::function<bool()>>> cases;
  cases.emplace_back("polygon_length", [] {
    return std::abs(length(regular_polygon(64)) - 128.0 * std::sin(pi / 64.0)) < 1e-12;
  });
  cases.emplace_back("square_length_area", [] {
    const DiscreteCurve s = unit_square(16);
    return std::abs(length(s) - 4.0) < 1e-14 && std::abs(enclosed_area(s) - 1.0) < 1e-14;
  });
  cases.emplace_back("circle_curvature_exact", [] {
    return (geometry_fields(regular_polygon(100, 2.0)).kappa.array() - 0.5).abs().maxCoeff() < 1e-12;
  });
  cases.emplace_back("gauss_bonnet", [] {
    const GeometryFields g = geometry_fields(ellipse_uniform_arclength(2.0, 1.0, 512));
    return std::abs(g.kappa.dot(g.ds) - 2.0 * pi) < 1e-3;
  });
  cases.emplace_back("resample_idempotent", [] {
    const DiscreteCurve once = resample(random_blob(7, 300), 256);
    return (resample(once, 256).vertices() - once.vertices()).colwise().norm().maxCoeff() < 1e-9;
  });
  cases.emplace_back("exact_circle_velocity", [] {
    ExactSolutionSpec s;
    s.sample_count = 1024;
    return normal_velocity_residual(s, 0.0) < 1e-3;
  });
  cases.emplace_back("exact_grim_reaper_velocity", [] {
    ExactSolutionSpec s;
    s.kind = ExactKind::grim_reaper;
    s.clip = 1.2;
    return normal_velocity_residual(s, 0.0) < 1e-3;
  });
  cases.emplace_back("exact_paperclip_velocity", [] {
    ExactSolutionSpec s;
    s.kind = ExactKind::paperclip;
    return normal_velocity_residual(s, -3.0) < 1e-2;
  });
  cases.emplace_back("circle_radius_law", [] {
    StepControl c;
    c.t_max = 0.1;
    const Trajectory t = evolve(regular_polygon(128), c, {});
    const double r = t.snapshots.back().state.curve.vertices().col(0).norm();
    return std::abs(r / std::sqrt(1.0 - 0.2) - 1.0) < 1e-3;
  });
  cases.emplace_back("ellipse_area_law_and_kappa_min", [] {
    StepControl c;
    c.t_max = 0.2;
    const Trajectory t = evolve(ellipse_uniform_arclength(2.0, 1.0, 128), c, {});
    return area_law_check(t).passed && kappa_min_bound_check(t).passed && length_monotone_check(t).passed;
  });
  cases.emplace_back("distance_ratio_circle", [] {
    return std::abs(distance_ratio(regular_polygon(256)).value - 1.0) < 1e-4;
  });
  cases.emplace_back("huisken_circle_value", [] {
    const double tau = 0.3;
    const double v = huisken_functional(regular_polygon(512, std::sqrt(2.0 * tau)), {PlanePoint::Zero(), tau}, 0.0);
    return std::abs(v - std::sqrt(2.0 * pi / std::exp(1.0))) < 1e-4;
  });
  cases.emplace_back("graph_rhs_circle", [] {
    const BaseCurveData b = circle_base(1.0, 64);
    return (graph_rhs({Eigen::VectorXd::Zero(64), 0.0}, b).array() - 1.0).abs().maxCoeff() < 1e-12;
  });
  cases.emplace_back("roundness_circle", [] {
    return roundness(regular_polygon(512, std::sqrt(2.0))).deviation_ratio < 1e-6;
  });

  int failures = 0;
  for (const auto& [name, fn] : cases) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "PASS " : "FAIL ") << name << detail << "\n";
    if (!ok) ++failures;
  }
  if (failures) throw Error(Errc::check_failed, std::to_string(failures) + " selftest case(s) failed");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curve shortening flow laboratory", "csflab"};
  app.require_subcommand(1);

  EvolveArgs ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a closed curve and write a trajectory directory");
  evolve_cmd->add_option("--input", ev.input, "circle:R, ellipse:a,b, square, rounded-square, flower:k,eps, blob[:seed], polygon:<file>")
      ->required();
  auto* n_opt = evolve_cmd->add_option("--n", ev.n, "Vertex count");
  evolve_cmd->add_option("--seed", ev.seed, "Seed for the blob generator");
  evolve_cmd->add_option("--cfl", ev.control.cfl);
  evolve_cmd->add_option("--dt-max", ev.control.dt_max);
  evolve_cmd->add_option("--remesh-ratio", ev.control.remesh_ratio);
  evolve_cmd->add_option("--spacing", ev.spacing, "Target vertex spacing or 'auto'");
  evolve_cmd->add_option("--kappa-stop", ev.control.kappa_stop);
  evolve_cmd->add_option("--area-stop", ev.control.area_stop);
  evolve_cmd->add_option("--t-max", ev.control.t_max);
  evolve_cmd->add_option("--record-stride", ev.policy.record_stride);
  evolve_cmd->add_option("--snapshot-stride", ev.policy.snapshot_stride);
  evolve_cmd->add_flag("--distance-ratio", ev.policy.distance_ratio_at_snapshots, "Record R at snapshots");
  evolve_cmd->add_flag("--harnack", ev.policy.harnack, "Record max F while convex");
  evolve_cmd->add_option("--huisken-x0", ev.huisken_x0, "x,y");
  evolve_cmd->add_option("--huisken-t0", ev.huisken_t0);
  evolve_cmd->add_option("--output", ev.output)->required();

  GraphArgs gr;
  auto* graph_cmd = app.add_subcommand("graph-evolve", "Evolve a normal graph over a fixed base curve");
  graph_cmd->add_option("--input", gr.input, "circle:R, ellipse:a,b or any closed curve input")->required();
  graph_cmd->add_option("--n", gr.n);
  graph_cmd->add_option("--t-end", gr.t_end)->required();
  graph_cmd->add_option("--dt", gr.dt);
  graph_cmd->add_option("--u0", gr.u0, "zero or cos:m,amplitude");
  graph_cmd->add_option("--stride", gr.stride);
  graph_cmd->add_option("--output", gr.output)->required();

  DiagnoseArgs dg;
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Recompute diagnostics and run checks on a trajectory directory");
  diagnose_cmd->add_option("--trajectory", dg.trajectory)->required();
  diagnose_cmd->add_option("--output", dg.output, "Defaults to <trajectory>/diagnose");
  diagnose_cmd->add_option("--huisken-x0", dg.huisken_x0);
  diagnose_cmd->add_option("--huisken-t0", dg.huisken_t0);
  diagnose_cmd->add_option("--kappa-min-form", dg.kappa_min_form, "displayed or ode");

  RescaleArgs rs;
  auto* rescale_cmd = app.add_subcommand("rescale", "Parabolic rescaling about the detected blowup point");
  rescale_cmd->add_option("--trajectory", rs.trajectory)->required();
  rescale_cmd->add_option("--output", rs.output)->required();
  rescale_cmd->add_option("--lambda", rs.lambdas, "Comma separated scales");
  rescale_cmd->add_option("--t-rescaled", rs.t_rescaled, "Comma separated negative rescaled times");
  rescale_cmd->add_option("--T", rs.T, "Singular time (default from --T-source)");
  rescale_cmd->add_option("--T-source", rs.T_source, "stop or area");
  rescale_cmd->add_option("--x0", rs.x0, "Blowup point x,y (default detected)");

  ExactArgs ex;
  auto* exact_cmd = app.add_subcommand("exact", "Sample an exact solution and report residuals");
  exact_cmd->add_option("--kind", ex.kind)->required();
  exact_cmd->add_option("--t", ex.t);
  exact_cmd->add_option("--n", ex.n);
  exact_cmd->add_option("--radius", ex.radius);
  exact_cmd->add_option("--center", ex.center);
  exact_cmd->add_option("--clip", ex.clip);
  exact_cmd->add_option("--fd-step", ex.h, "Time step of the normal-velocity residual");
  exact_cmd->add_option("--output", ex.output)->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in invariant suite");

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::vector<const char*> argv{"csflab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      throw Error(Errc::config, e.what());
    }
    if (evolve_cmd->parsed()) return cmd_evolve(ev, n_opt->count() > 0, out);
    if (graph_cmd->parsed()) return cmd_graph_evolve(gr, out);
    if (diagnose_cmd->parsed()) return cmd_diagnose(dg, out);
    if (rescale_cmd->parsed()) return cmd_rescale(rs, out);
    if (exact_cmd->parsed()) return cmd_exact(ex, out);
    if (selftest_cmd->parsed()) return cmd_selftest(out);
    throw Error(Errc::config, "no command given");
  } catch (const Error& e) {
    const int status = exit_status(e.code());
    err << "ERROR " << status << ": " << e.what() << "\n";
    return status;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ERROR 2: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ERROR 3: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace csf
