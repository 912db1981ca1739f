#include "lyapgate/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lyapgate {

namespace {

struct File {
  std::FILE* f;
  explicit File(const std::string& path, const char* mode) : f(std::fopen(path.c_str(), mode)) {
    if (!f) throw std::runtime_error("cannot open " + path);
  }
  ~File() { if (f) std::fclose(f); }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

// NaN marks a not-available field and serializes to an empty cell.
void put_field(std::FILE* f, double v, char sep) {
  if (std::isnan(v)) std::fputc(sep, f);
  else std::fprintf(f, "%.17g%c", v, sep);
}

double parse_double(const std::string& cell, int row, int col) {
  const char* s = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw std::runtime_error("control CSV: row " + std::to_string(row) + ", column " +
                             std::to_string(col + 1) + ": not a number: '" + cell + "'");
  if (!std::isfinite(v))
    throw std::runtime_error("control CSV: row " + std::to_string(row) + ", column " +
                             std::to_string(col + 1) + ": non-finite sample");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

void write_iterations_csv(const std::string& path, const std::vector<IterationReport>& reports) {
  File out(path, "w");
  std::fputs("ell,V0,VTf,handoff_err,infidelity,corrected_infidelity,Tf,stat_residual,u_l2_change\n",
             out.f);
  for (const auto& r : reports) {
    std::fprintf(out.f, "%d,", r.ell);
    put_field(out.f, r.V_initial, ',');
    put_field(out.f, r.V_final, ',');
    put_field(out.f, r.handoff_err, ',');
    put_field(out.f, r.infidelity, ',');
    put_field(out.f, r.corrected_infidelity, ',');
    put_field(out.f, r.Tf, ',');
    put_field(out.f, r.stationarity_residual, ',');
    put_field(out.f, r.control_l2_change, '\n');
  }
}

void write_control_csv(const std::string& path, const ControlSignal& u) {
  File out(path, "w");
  std::fputs("time", out.f);
  for (int k = 1; k <= u.channels(); ++k) std::fprintf(out.f, ",u_%d", k);
  std::fputc('\n', out.f);
  for (int j = 0; j < u.grid.n_nodes(); ++j) {
    std::fprintf(out.f, "%.17g", u.grid.node(j));
    for (int k = 0; k < u.channels(); ++k) std::fprintf(out.f, ",%.17g", u.values(k, j));
    std::fputc('\n', out.f);
  }
}

ControlSignal read_control_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("control CSV: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "time")
    throw std::runtime_error("control CSV: header must be time,u_1,..,u_m");
  const int m = int(header.size()) - 1;

  std::vector<double> times;
  const size_t mcols = size_t(m);
  std::vector<std::vector<double>> cols(mcols);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (int(cells.size()) != m + 1)
      throw std::runtime_error("control CSV: row " + std::to_string(row) + ": expected " +
                               std::to_string(m + 1) + " fields, got " +
                               std::to_string(cells.size()));
    times.push_back(parse_double(cells[0], row, 0));
    for (int k = 0; k < m; ++k)
      cols[size_t(k)].push_back(parse_double(cells[size_t(k + 1)], row, k + 1));
  }
  const int n_nodes = int(times.size());
  if (n_nodes < 2) throw std::runtime_error("control CSV: need at least two rows");
  const double h0 = (times.back() - times.front()) / (n_nodes - 1);
  if (!(h0 > 0)) throw std::runtime_error("control CSV: time must be increasing");
  for (int j = 0; j + 1 < n_nodes; ++j)
    if (std::abs((times[size_t(j + 1)] - times[size_t(j)]) - h0) > 1e-9 * std::max(1.0, h0))
      throw std::runtime_error("control CSV: non-uniform grid near row " + std::to_string(j + 2));

  ControlSignal u;
  u.grid = TimeGrid(times.front(), times.back(), n_nodes - 1);
  u.values.resize(m, n_nodes);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < n_nodes; ++j) u.values(k, j) = cols[size_t(k)][size_t(j)];
  return u;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points) {
  File out(path, "w");
  std::fputs("Tf,infidelity,corrected_infidelity\n", out.f);
  for (const auto& p : points) {
    put_field(out.f, p.Tf, ',');
    put_field(out.f, p.infidelity, ',');
    put_field(out.f, p.corrected_infidelity, '\n');
  }
}

}  // namespace lyapgate
