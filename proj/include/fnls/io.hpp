#pragma once

#include <iosfwd>
#include <string>

#include "fnls/diagnostics.hpp"
#include "fnls/evolution.hpp"
#include "fnls/solvers.hpp"

namespace fnls {

enum class FileFormat { csv, json };

/// Profile persistence. JSON round-trips doubles bit-exactly; CSV uses 17
/// significant digits (enough for binary64 round-trip).
void write_profile(const SolitonProfile& p, const std::string& path, FileFormat format);
SolitonProfile read_profile(const std::string& path, FileFormat format);

void write_profile_json(const SolitonProfile& p, std::ostream& os);
SolitonProfile read_profile_json(std::istream& is);
void write_profile_csv(const SolitonProfile& p, std::ostream& os);
SolitonProfile read_profile_csv(std::istream& is);

/// One row per observation; columns t, mass, energy, momentum, center,
/// shape_error.
void write_trajectory_csv(const TrajectoryReport& r, std::ostream& os);
void write_trajectory(const TrajectoryReport& r, const std::string& path);

void write_diagnostics_json(const DiagnosticsReport& r, std::ostream& os);
void write_diagnostics(const DiagnosticsReport& r, const std::string& path);

/// Shortest-exact decimal formatting used by the CSV writers.
std::string format_double(double v);

} // namespace fnls
