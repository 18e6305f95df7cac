#pragma once

#include <filesystem>
#include <string>

#include "bbpg/study.hpp"

namespace bbpg {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

/// CSV with the fixed column set
///   level, alpha, h, M,
///   err_{u,y,ypi,p}_{L1,L2,Linf}, eoc_{u,y,ypi,p}_{L1,L2,Linf}, iterations
/// one row per level; EOC cells of the first row hold "/".
void write_eoc_csv(const EocTable& table, const std::filesystem::path& path);
EocTable parse_eoc_csv(const std::filesystem::path& path);

void write_eoc_markdown(const EocTable& table, const std::filesystem::path& path);

/// Trajectory samples (t, u_kh(t), ubar(t)) at the union of all breakpoints
/// and `uniform_samples` equidistant times.
void write_trajectory_csv(const PiecewiseLinear& u,
                          const PiecewiseConstant& exact,
                          const std::filesystem::path& path,
                          int uniform_samples = 1000);

void write_measure_csv(const MeasureDiagnostic& diag,
                       const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& body);

}  // namespace bbpg
