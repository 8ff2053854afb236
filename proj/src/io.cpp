#include "csf/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "csf/text.hpp"

namespace csf {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

EventKind parse_kind(std::string_view s) {
  for (EventKind k : {EventKind::remesh, EventKind::stop_curvature, EventKind::stop_area, EventKind::stop_tmax,
                      EventKind::stop_embeddedness, EventKind::stop_validity})
    if (to_string(k) == s) return k;
  throw Error(Errc::io, "unknown event kind '" + std::string(s) + "'");
}

std::string snapshot_name(std::size_t step) {
  char name[32];
  std::snprintf(name, sizeof name, "curve_%08zu.csv", step);
  return name;
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(Errc::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string curve_csv(const Points& points, Topology topology) {
  std::string out = "x,y\n";
  if (topology == Topology::open) out += "# open\n";
  for (Index i = 0; i < points.cols(); ++i) {
    out += format_double(points(0, i));
    out += ',';
    out += format_double(points(1, i));
    out += '\n';
  }
  return out;
}

Polyline parse_curve_csv(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "x,y") throw Error(Errc::io, "curve file must start with the header 'x,y'");
  Polyline out;
  std::vector<double> xs, ys;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (blank(line)) continue;
    if (line.front() == '#') {
      if (i == 1 && line.find("open") != std::string_view::npos) out.topology = Topology::open;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 2) throw Error(Errc::io, "curve row " + std::to_string(i + 1) + " must have two fields");
    xs.push_back(parse_double(f[0]));
    ys.push_back(parse_double(f[1]));
  }
  out.points.resize(2, static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) out.points.col(static_cast<Index>(i)) = PlanePoint(xs[i], ys[i]);
  return out;
}

void write_curve(const fs::path& path, const Points& points, Topology topology) {
  write_file_atomic(path, curve_csv(points, topology));
}

Polyline read_curve(const fs::path& path) { return parse_curve_csv(read_file(path)); }

DiscreteCurve read_closed_curve(const fs::path& path) {
  Polyline p = read_curve(path);
  if (p.is_open()) throw Error(Errc::invalid_curve, path.string() + " holds an open polyline");
  return DiscreteCurve(std::move(p.points));
}

std::string records_csv(const std::vector<DiagnosticRecord>& records) {
  std::string out =
      "t,L,A,int_kappa_sq,kappa_max,kappa_min,total_abs_curv,inflections,R_ratio,harnack_F_max,huisken_value,"
      "shrinker_residual\n";
  for (const DiagnosticRecord& r : records) {
    for (double v : {r.t, r.L, r.A, r.int_kappa_sq, r.kappa_max, r.kappa_min, r.total_abs_curv}) {
      out += format_double(v);
      out += ',';
    }
    out += std::to_string(r.inflections);
    for (const auto* o : {&r.R_ratio, &r.harnack_F_max, &r.huisken_value, &r.shrinker_residual}) {
      out += ',';
      out += optional_cell(*o);
    }
    out += '\n';
  }
  return out;
}

std::vector<DiagnosticRecord> parse_records_csv(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(Errc::io, "records file is empty");
  const auto header = split_fields(lines[0]);
  std::map<std::string, std::size_t, std::less<>> column;
  for (std::size_t c = 0; c < header.size(); ++c) column[std::string(header[c])] = c;
  if (!column.contains("t")) throw Error(Errc::io, "records file needs a 't' column");
  std::vector<DiagnosticRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const auto f = split_fields(lines[i]);
    const auto cell = [&](std::string_view name) -> std::optional<double> {
      const auto it = column.find(name);
      if (it == column.end() || it->second >= f.size() || blank(f[it->second])) return std::nullopt;
      return parse_double(f[it->second]);
    };
    DiagnosticRecord r;
    r.t = *cell("t");
    r.L = cell("L").value_or(0.0);
    r.A = cell("A").value_or(0.0);
    r.int_kappa_sq = cell("int_kappa_sq").value_or(0.0);
    r.kappa_max = cell("kappa_max").value_or(0.0);
    r.kappa_min = cell("kappa_min").value_or(0.0);
    r.total_abs_curv = cell("total_abs_curv").value_or(0.0);
    r.inflections = static_cast<int>(cell("inflections").value_or(0.0));
    r.R_ratio = cell("R_ratio");
    r.harnack_F_max = cell("harnack_F_max");
    r.huisken_value = cell("huisken_value");
    r.shrinker_residual = cell("shrinker_residual");
    out.push_back(r);
  }
  return out;
}

std::string events_csv(const std::vector<Event>& events) {
  std::string out = "t,kind\n";
  for (const Event& e : events) {
    out += format_double(e.t);
    out += ',';
    out += to_string(e.kind);
    out += '\n';
  }
  return out;
}

std::vector<Event> parse_events_csv(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].substr(0, 6) != "t,kind") throw Error(Errc::io, "events file must start with 't,kind'");
  std::vector<Event> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const auto f = split_fields(lines[i]);
    if (f.size() < 2) throw Error(Errc::io, "events row " + std::to_string(i + 1) + " needs t and kind");
    out.push_back({parse_double(f[0]), parse_kind(f[1]), 0});
  }
  return out;
}

void write_trajectory(const fs::path& dir, const Trajectory& trajectory) {
  std::error_code ec;
  fs::create_directories(dir / "snapshots", ec);
  if (ec) throw Error(Errc::io, "cannot create " + (dir / "snapshots").string() + ": " + ec.message());
  std::string index = "step,t\n";
  for (const Snapshot& s : trajectory.snapshots) {
    write_curve(dir / "snapshots" / snapshot_name(s.step), s.state.curve.vertices());
    index += std::to_string(s.step) + "," + format_double(s.state.t) + "\n";
  }
  write_file_atomic(dir / "snapshots" / "index.csv", index);
  write_file_atomic(dir / "records.csv", records_csv(trajectory.records));
  write_file_atomic(dir / "events.csv", events_csv(trajectory.events));
}

Trajectory read_trajectory(const fs::path& dir) {
  Trajectory traj;
  const fs::path index_path = dir / "snapshots" / "index.csv";
  if (!fs::exists(index_path)) throw Error(Errc::io, "missing " + index_path.string());
  const std::string index_text = read_file(index_path);
  const auto lines = split_lines(index_text);
  if (lines.empty() || lines[0] != "step,t") throw Error(Errc::io, "snapshot index must start with 'step,t'");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const auto f = split_fields(lines[i]);
    if (f.size() != 2) throw Error(Errc::io, "snapshot index row " + std::to_string(i + 1) + " needs step and t");
    const auto step = static_cast<std::size_t>(parse_double(f[0]));
    Polyline p = read_curve(dir / "snapshots" / snapshot_name(step));
    if (p.is_open()) throw Error(Errc::invalid_curve, "snapshot " + std::to_string(step) + " is an open polyline");
    traj.snapshots.push_back({step, {DiscreteCurve::assume_embedded(std::move(p.points)), parse_double(f[1])}});
  }
  if (traj.snapshots.empty()) throw Error(Errc::io, "trajectory has no snapshots");
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k)
    if (!(traj.snapshots[k].state.t > traj.snapshots[k - 1].state.t))
      throw Error(Errc::io, "snapshot times must be strictly increasing");
  traj.time_origin = traj.snapshots.front().state.t;

  if (fs::exists(dir / "events.csv")) {
    traj.events = parse_events_csv(read_file(dir / "events.csv"));
    for (Event& e : traj.events)
      for (const Snapshot& s : traj.snapshots)
        if (s.state.t == e.t) e.step = s.step;
  }
  if (fs::exists(dir / "records.csv")) {
    traj.records = parse_records_csv(read_file(dir / "records.csv"));
    for (std::size_t k = 1; k < traj.records.size(); ++k)
      traj.records[k].after_remesh = traj.remesh_between(traj.records[k - 1].t, traj.records[k].t);
  }
  return traj;
}

}  // namespace csf
