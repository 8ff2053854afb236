#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "csf/exact.hpp"
#include "csf/trajectory.hpp"

namespace csf {

/// Write `contents` to a temporary file next to `path`, then rename it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Curve CSV: header `x,y`, optional `# open` line, one vertex per row.
std::string curve_csv(const Points& points, Topology topology = Topology::closed);
Polyline parse_curve_csv(const std::string& text);
void write_curve(const std::filesystem::path& path, const Points& points, Topology topology = Topology::closed);
Polyline read_curve(const std::filesystem::path& path);
/// Closed curve from file, fully validated.
DiscreteCurve read_closed_curve(const std::filesystem::path& path);

/// records.csv; optional columns are empty cells when absent.
std::string records_csv(const std::vector<DiagnosticRecord>& records);
std::vector<DiagnosticRecord> parse_records_csv(const std::string& text);

/// events.csv with header `t,kind`.
std::string events_csv(const std::vector<Event>& events);
std::vector<Event> parse_events_csv(const std::string& text);

/// Trajectory directory:
///   snapshots/curve_<step:08d>.csv, snapshots/index.csv (`step,t`), records.csv, events.csv.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& trajectory);
/// Inverse of write_trajectory. records.csv is optional; snapshot curves are not re-checked for
/// embeddedness.
Trajectory read_trajectory(const std::filesystem::path& dir);

}  // namespace csf
