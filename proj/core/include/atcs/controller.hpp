#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace atcs {

/// One velocity interval [v_low, v_high) -> N_F. The last interval of a
/// table is open-ended (v_high = +infinity).
struct TableEntry {
  double v_low = 0.0;
  double v_high = 0.0;
  int n_f = 0;
};

/// Ordered velocity intervals partitioning [0, inf) with non-increasing N_F.
struct LookupTable {
  std::vector<TableEntry> entries;
};

/// Throws std::invalid_argument unless the entries partition [0, inf) with
/// no gaps or overlaps, N_F is non-increasing with velocity, and every
/// N_F >= 1.
void validate_table(const LookupTable& table);

/// The table of the reference design:
/// [0,0.5)->16, [0.5,1)->12, [1,2)->8, [2,3)->6, [3,7)->4, [7,inf)->2.
LookupTable default_table();

/// N_F of the interval containing v (membership v_low <= v < v_high).
/// Throws std::invalid_argument for negative or non-finite v.
int lookup(const LookupTable& table, double v);

struct HistoryRecord {
  std::int64_t measurement_index = 0;
  double v = 0.0;
  int n_f = 0;  // N_F that was in effect when v was measured
};

/// Feedback state. current_n_f is the ratio of the exposure being captured;
/// pending_n_f takes effect at the next exposure.
struct ControllerState {
  int current_n_f = 0;
  int pending_n_f = 0;
  int n_f_min = 2;
  int n_f_max = 16;
  std::vector<HistoryRecord> history;
};

ControllerState make_controller(int initial_n_f, int n_f_min = 2, int n_f_max = 16);

/// Consumes the velocity measured at exposure `measurement_index`:
/// pending_n_f becomes clamp(lookup(table, v), n_f_min, n_f_max) and a
/// history record is appended. The new ratio reaches current_n_f only when
/// advance_exposure starts the next exposure, so a velocity measured at
/// exposure k influences exposure k+1, never exposure k (one integration
/// time of adaptation delay).
ControllerState step(ControllerState state, const LookupTable& table, double v,
                     std::int64_t measurement_index);

/// Starts the next exposure: current_n_f <- pending_n_f. Returns the ratio
/// the new exposure uses.
int advance_exposure(ControllerState& state);

/// CSV round trip, columns v_low, v_high, n_f ("inf" for the open end).
/// load_table enforces all table invariants.
void save_table(const LookupTable& table, const std::filesystem::path& path);
LookupTable load_table(const std::filesystem::path& path);

/// History export, columns measurement_index, v, n_f.
void save_history_csv(const std::vector<HistoryRecord>& history,
                      const std::filesystem::path& path);

}  // namespace atcs
