#include "bbpg/emit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bbpg/errors.hpp"

namespace bbpg {

namespace {

const std::array<std::string, 12> kErrHeaders = {
    "err_u_L1", "err_u_L2",  "err_u_Linf",  "err_y_L1",  "err_y_L2",
    "err_y_Linf", "err_ypi_L1", "err_ypi_L2", "err_ypi_Linf", "err_p_L1",
    "err_p_L2", "err_p_Linf"};

const std::array<std::string, 12> kEocHeaders = {
    "eoc_u_L1", "eoc_u_L2",  "eoc_u_Linf",  "eoc_y_L1",  "eoc_y_L2",
    "eoc_y_Linf", "eoc_ypi_L1", "eoc_ypi_L2", "eoc_ypi_Linf", "eoc_p_L1",
    "eoc_p_L2", "eoc_p_Linf"};

std::string header_line() {
  std::string line = "level,alpha,h,M";
  for (const auto& h : kErrHeaders) line += "," + h;
  for (const auto& h : kEocHeaders) line += "," + h;
  line += ",iterations";
  return line;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

void assign_norms(LevelResult& r, const std::array<double, 12>& e) {
  r.control = {e[0], e[1], e[2]};
  r.state = {e[3], e[4], e[5]};
  r.projected_state = {e[6], e[7], e[8]};
  r.adjoint = {e[9], e[10], e[11]};
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("not a number: '" + text + "'");
  }
  return value;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << body;
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

void write_eoc_csv(const EocTable& table, const std::filesystem::path& path) {
  std::string body = header_line() + "\n";
  const auto eoc = table.eoc();
  for (std::size_t r = 0; r < table.levels.size(); ++r) {
    const LevelResult& lev = table.levels[r];
    body += std::to_string(lev.level) + "," + format_double(lev.alpha) + "," +
            format_double(lev.h) + "," + std::to_string(lev.time_steps);
    for (double e : lev.error_columns()) body += "," + format_double(e);
    for (const auto& cell : eoc[r]) {
      body += cell ? "," + format_double(*cell) : ",/";
    }
    body += "," + std::to_string(lev.iterations) + "\n";
  }
  write_text_file(path, body);
}

EocTable parse_eoc_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("empty table file: " + path.string());
  }
  if (line != header_line()) {
    throw DataError("unexpected table header in " + path.string());
  }
  EocTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 4 + 12 + 12 + 1) {
      throw DataError("malformed table row in " + path.string());
    }
    LevelResult r;
    r.level = static_cast<int>(parse_double(cells[0]));
    r.alpha = parse_double(cells[1]);
    r.h = parse_double(cells[2]);
    r.time_steps = static_cast<int>(parse_double(cells[3]));
    std::array<double, 12> errs;
    for (std::size_t c = 0; c < 12; ++c) errs[c] = parse_double(cells[4 + c]);
    assign_norms(r, errs);
    r.iterations = static_cast<int>(parse_double(cells.back()));
    table.levels.push_back(r);
  }
  return table;
}

void write_eoc_markdown(const EocTable& table,
                        const std::filesystem::path& path) {
  std::string body;
  const auto eoc = table.eoc();
  const char* groups[4] = {"control", "state", "projected state", "adjoint"};
  for (int g = 0; g < 4; ++g) {
    body += "## Errors and h-EOC in the " + std::string(groups[g]) + "\n\n";
    body += "| level | alpha | h | M | L1 | L2 | Linf | EOC L1 | EOC L2 | EOC Linf | iterations |\n";
    body += "|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (std::size_t r = 0; r < table.levels.size(); ++r) {
      const LevelResult& lev = table.levels[r];
      const auto errs = lev.error_columns();
      body += "| " + std::to_string(lev.level) + " | " +
              format_double(lev.alpha) + " | " + format_double(lev.h) + " | " +
              std::to_string(lev.time_steps);
      for (int c = 0; c < 3; ++c) {
        body += " | " + format_double(errs[3 * g + c]);
      }
      for (int c = 0; c < 3; ++c) {
        const auto& cell = eoc[r][3 * g + c];
        body += " | " + (cell ? format_double(*cell) : std::string("/"));
      }
      body += " | " + std::to_string(lev.iterations) + " |\n";
    }
    body += "\n";
  }
  write_text_file(path, body);
}

void write_trajectory_csv(const PiecewiseLinear& u,
                          const PiecewiseConstant& exact,
                          const std::filesystem::path& path,
                          int uniform_samples) {
  std::vector<double> times = u.t;
  times.insert(times.end(), exact.switches.begin(), exact.switches.end());
  for (int i = 0; i <= uniform_samples; ++i) {
    times.push_back(exact.t0 +
                    (exact.t1 - exact.t0) * static_cast<double>(i) / uniform_samples);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::string body = "t,u_kh,u_exact\n";
  for (double t : times) {
    body += format_double(t) + "," + format_double(u(t)) + "," +
            format_double(exact(t)) + "\n";
  }
  write_text_file(path, body);
}

void write_measure_csv(const MeasureDiagnostic& diag,
                       const std::filesystem::path& path) {
  std::string body = "alpha,measure\n";
  for (std::size_t i = 0; i < diag.alphas.size(); ++i) {
    body += format_double(diag.alphas[i]) + "," +
            format_double(diag.measures[i]) + "\n";
  }
  write_text_file(path, body);
}

}  // namespace bbpg
