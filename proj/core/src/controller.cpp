#include "atcs/controller.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "atcs/textio.hpp"

namespace atcs {

void validate_table(const LookupTable& table) {
  const auto& e = table.entries;
  if (e.empty()) throw std::invalid_argument("lookup table has no entries");
  if (e.front().v_low != 0.0)
    throw std::invalid_argument("lookup table must start at v = 0");
  if (!std::isinf(e.back().v_high))
    throw std::invalid_argument("lookup table's final interval must be open-ended");
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!(e[i].v_low < e[i].v_high))
      throw std::invalid_argument("lookup table interval is empty or inverted");
    if (e[i].n_f < 1) throw std::invalid_argument("lookup table N_F must be >= 1");
    if (i > 0) {
      if (e[i].v_low != e[i - 1].v_high)
        throw std::invalid_argument("lookup table intervals must partition [0, inf) "
                                    "with no gaps or overlaps");
      if (e[i].n_f > e[i - 1].n_f)
        throw std::invalid_argument("lookup table N_F must be non-increasing with velocity");
    }
  }
}

LookupTable default_table() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return LookupTable{{{0.0, 0.5, 16},
                      {0.5, 1.0, 12},
                      {1.0, 2.0, 8},
                      {2.0, 3.0, 6},
                      {3.0, 7.0, 4},
                      {7.0, inf, 2}}};
}

int lookup(const LookupTable& table, double v) {
  if (!(v >= 0.0) || std::isinf(v))
    throw std::invalid_argument("lookup: velocity must be finite and non-negative");
  for (const TableEntry& e : table.entries)
    if (v >= e.v_low && v < e.v_high) return e.n_f;
  throw std::invalid_argument("lookup: no interval contains v (invalid table?)");
}

ControllerState make_controller(int initial_n_f, int n_f_min, int n_f_max) {
  if (n_f_min < 1 || n_f_min > n_f_max)
    throw std::invalid_argument("controller bounds must satisfy 1 <= n_f_min <= n_f_max");
  if (initial_n_f < n_f_min || initial_n_f > n_f_max)
    throw std::invalid_argument("initial N_F outside [n_f_min, n_f_max]");
  ControllerState state;
  state.current_n_f = initial_n_f;
  state.pending_n_f = initial_n_f;
  state.n_f_min = n_f_min;
  state.n_f_max = n_f_max;
  return state;
}

ControllerState step(ControllerState state, const LookupTable& table, double v,
                     std::int64_t measurement_index) {
  state.history.push_back({measurement_index, v, state.current_n_f});
  state.pending_n_f = std::clamp(lookup(table, v), state.n_f_min, state.n_f_max);
  return state;
}

int advance_exposure(ControllerState& state) {
  state.current_n_f = state.pending_n_f;
  return state.current_n_f;
}

void save_table(const LookupTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs lookup-table v1\n";
  out << "v_low,v_high,n_f\n";
  for (const TableEntry& e : table.entries)
    out << format_double(e.v_low) << ',' << format_double(e.v_high) << ',' << e.n_f << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

LookupTable load_table(const std::filesystem::path& path) {
  LookupTable table;
  for (const auto& row : read_csv(path, "v_low,v_high,n_f")) {
    if (row.size() != 3)
      throw std::invalid_argument(path.string() + ": table rows need 3 columns");
    table.entries.push_back({parse_double(row[0]), parse_double(row[1]),
                             static_cast<int>(parse_integer(row[2]))});
  }
  validate_table(table);
  return table;
}

void save_history_csv(const std::vector<HistoryRecord>& history,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# atcs controller-history v1\n";
  out << "measurement_index,v,n_f\n";
  for (const HistoryRecord& h : history)
    out << h.measurement_index << ',' << format_double(h.v) << ',' << h.n_f << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace atcs
