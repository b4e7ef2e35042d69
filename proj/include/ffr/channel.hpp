#pragma once

#include <cstdint>
#include <vector>

#include "ffr/band.hpp"
#include "ffr/geometry.hpp"
#include "ffr/spectrum.hpp"

namespace ffr {

struct RadioParams {
  double carrier_mhz = 1800.0;        // f_c
  double small_carrier_mhz = 1800.0;  // f
  double mbs_height_m = 50.0;
  double ue_height_m = 2.0;
  double wall_loss_db = 10.0;
  double small_loss_coefficient = 28.0;  // N
  double floor_loss_db = 0.0;            // L_f
  double edge_power_dbm = 46.0;
  double center_power_dbm = 35.0;
  double small_power_dbm = 7.0;
  double noise_density_dbm_hz = -174.0;
  Hz channel_bandwidth = 180'000;
  double gamma_db = 8.45;
  /// Small cells farther than this from the victim are ignored.
  double small_cell_range_m = 100.0;

  /// Center-to-edge power ratio, linear.
  double alpha() const;
  double gamma() const;
  /// Throws InvalidParameter on the first violated bound.
  void validate() const;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);
double db_to_linear(double db);
double linear_to_db(double x);

/// Okumura-Hata, urban, plus wall penetration. Throws DomainError for d <= 0.
double macro_path_loss(double d_km, const RadioParams& p);
/// Indoor small-cell loss. Throws DomainError for z <= 0.
double small_path_loss(double z_m, const RadioParams& p);
/// Thermal noise over one channel, mW.
double noise_power(const RadioParams& p);

struct LinkBudget {
  double tx_power_dbm = 0.0;
  double path_loss_db = 0.0;
  double fading_gain = 1.0;

  double rx_power_mw() const;
};

struct MacroInterferer {
  CellIndex cell = 0;
  PowerClass power = PowerClass::Edge;
  double rx_mw = 0.0;
};

struct SmallInterferer {
  int index = 0;
  double distance_m = 0.0;
  double rx_mw = 0.0;
};

struct InterferenceProfile {
  std::vector<MacroInterferer> co_channel_macros;  // first tier and, for sUE, the host MBS
  std::vector<SmallInterferer> co_channel_smalls;
  double second_tier_mw = 0.0;
  double noise_mw = 0.0;

  double interference_mw() const;
  double total_mw() const { return interference_mw() + noise_mw; }
};

/// What every transmitter in the network is doing at one instant.
struct RadioEnvironment {
  const ClusterLayout* layout = nullptr;
  /// Channels each cluster MBS currently transmits.
  std::array<BandSet, kClusterCells> in_use;
  TransmitSets sets;
  std::vector<SmallCellSite> small_cells;
  /// Per small cell, the band it transmits on (all of its allowed channels).
  std::vector<BandSet> small_bands;
  /// Channels forced to edge power regardless of the transmit sets.
  BandSet edge_power_override;

  PowerClass power_of(CellIndex cell, const BandSet& channel) const;
  double macro_tx_dbm(CellIndex cell, const BandSet& channel, const RadioParams& p) const;
};

/// Environment for the plan's current occupancy; small cells transmit on
/// their zone's allowed band.
RadioEnvironment make_environment(const FrequencyPlan& plan, const Reassignment* reassignment,
                                  const ClusterLayout& layout,
                                  std::vector<SmallCellSite> small_cells);

struct UserDescriptor {
  Point position;
  CellIndex host_cell = kReferenceCell;
  Zone zone = Zone::Center;
  /// Index into the environment's small cells when served by an sBS, else -1.
  int serving_small = -1;
};

/// Co-channel interferers on `channel` seen by `user`. Second-tier cells
/// replicate their mirror cluster cell.
InterferenceProfile build_interference_profile(const UserDescriptor& user, const BandSet& channel,
                                               const RadioEnvironment& env,
                                               const RadioParams& p);

/// Desired link: the host MBS at the power class its transmit sets give
/// `channel` (never the override), or the serving sBS.
LinkBudget serving_link(const UserDescriptor& user, const BandSet& channel,
                        const RadioEnvironment& env, const RadioParams& p);

double sinr(const LinkBudget& serving, const InterferenceProfile& profile);
/// Shannon rate, bits/s/Hz.
double rate(double sinr);
double area_spectral_efficiency(double n_center, double n_edge, double c_center, double c_edge,
                                double reuse_center, double reuse_edge);

/// Rayleigh-faded desired signal of mean `s_o_mw` against fixed interference.
double outage_analytic(double s_o_mw, const InterferenceProfile& profile, double gamma);

struct OutageEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
};

OutageEstimate outage_monte_carlo(double s_o_mw, const InterferenceProfile& profile, double gamma,
                                  std::int64_t samples, std::uint64_t seed);

}  // namespace ffr
