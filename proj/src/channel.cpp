#include "ffr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ffr/error.hpp"

namespace ffr {

namespace {

constexpr double kMinDistanceM = 1.0;

double macro_loss_to(Point a, Point b, const RadioParams& p) {
  return macro_path_loss(std::max(distance(a, b), kMinDistanceM) / 1000.0, p);
}

}  // namespace

double RadioParams::alpha() const { return db_to_linear(center_power_dbm - edge_power_dbm); }

double RadioParams::gamma() const { return db_to_linear(gamma_db); }

void RadioParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidParameter, what);
  };
  require(carrier_mhz > 0 && small_carrier_mhz > 0, "carrier frequencies must be positive");
  require(mbs_height_m > 0 && ue_height_m > 0, "antenna heights must be positive");
  require(channel_bandwidth > 0, "channel bandwidth must be positive");
  require(small_loss_coefficient > 0, "small-cell loss coefficient must be positive");
  require(small_cell_range_m >= 0, "small-cell range must be non-negative");
  const double a = alpha();
  require(a > 0.0 && a < 1.0, "alpha out of range: center power must be below edge power");
  require(std::isfinite(gamma_db), "gamma must be finite");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double macro_path_loss(double d_km, const RadioParams& p) {
  if (!(d_km > 0.0)) throw Error(ErrorCode::DomainError, "macro path loss needs d > 0");
  const double lf = std::log10(p.carrier_mhz);
  const double lh = std::log10(p.mbs_height_m);
  const double a_hm = 1.1 * (lf - 0.7) * p.ue_height_m - (1.56 * lf - 0.8);
  return 69.55 + 26.16 * lf - 13.82 * lh - a_hm + (44.9 - 6.55 * lh) * std::log10(d_km) +
         p.wall_loss_db;
}

double small_path_loss(double z_m, const RadioParams& p) {
  if (!(z_m > 0.0)) throw Error(ErrorCode::DomainError, "small-cell path loss needs z > 0");
  return 20.0 * std::log10(p.small_carrier_mhz) + p.small_loss_coefficient * std::log10(z_m) +
         p.floor_loss_db - 28.0;
}

double noise_power(const RadioParams& p) {
  return dbm_to_mw(p.noise_density_dbm_hz +
                   10.0 * std::log10(static_cast<double>(p.channel_bandwidth)));
}

double LinkBudget::rx_power_mw() const {
  return dbm_to_mw(tx_power_dbm - path_loss_db) * fading_gain;
}

double InterferenceProfile::interference_mw() const {
  double sum = second_tier_mw;
  for (const auto& m : co_channel_macros) sum += m.rx_mw;
  for (const auto& s : co_channel_smalls) sum += s.rx_mw;
  return sum;
}

PowerClass RadioEnvironment::power_of(CellIndex cell, const BandSet& channel) const {
  if (channel.intersects(edge_power_override)) return PowerClass::Edge;
  return sets.macro_of(cell).center.intersects(channel) ? PowerClass::Center : PowerClass::Edge;
}

double RadioEnvironment::macro_tx_dbm(CellIndex cell, const BandSet& channel,
                                      const RadioParams& p) const {
  return power_of(cell, channel) == PowerClass::Center ? p.center_power_dbm : p.edge_power_dbm;
}

RadioEnvironment make_environment(const FrequencyPlan& plan, const Reassignment* reassignment,
                                  const ClusterLayout& layout,
                                  std::vector<SmallCellSite> small_cells) {
  RadioEnvironment env;
  env.layout = &layout;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    env.in_use[static_cast<std::size_t>(c - 1)] = plan.cell_spectrum(c).in_use;
  }
  env.sets = transmit_sets(plan, reassignment);
  env.small_bands.reserve(small_cells.size());
  for (const auto& s : small_cells) {
    const auto& allowed = env.sets.small_of(s.host_cell);
    env.small_bands.push_back(s.zone == Zone::Center ? allowed.center : allowed.edge);
  }
  env.small_cells = std::move(small_cells);
  return env;
}

InterferenceProfile build_interference_profile(const UserDescriptor& user, const BandSet& channel,
                                               const RadioEnvironment& env,
                                               const RadioParams& p) {
  if (env.layout == nullptr) throw Error(ErrorCode::InvalidParameter, "environment has no layout");
  InterferenceProfile profile;
  profile.noise_mw = noise_power(p);
  const bool macro_user = user.serving_small < 0;

  for (const auto& site : env.layout->cells()) {
    if (site.index == user.host_cell && macro_user) continue;
    const CellIndex source = site.mirror;
    if (!env.in_use[static_cast<std::size_t>(source - 1)].intersects(channel)) continue;
    const PowerClass power = env.power_of(source, channel);
    const double tx = power == PowerClass::Center ? p.center_power_dbm : p.edge_power_dbm;
    const double rx = dbm_to_mw(tx - macro_loss_to(site.mbs, user.position, p));
    if (site.index <= kClusterCells) {
      profile.co_channel_macros.push_back({site.index, power, rx});
    } else {
      profile.second_tier_mw += rx;
    }
  }

  for (std::size_t i = 0; i < env.small_cells.size(); ++i) {
    if (static_cast<int>(i) == user.serving_small) continue;
    const double d = distance(env.small_cells[i].position, user.position);
    if (d > p.small_cell_range_m) continue;
    if (!env.small_bands[i].intersects(channel)) continue;
    const double loss = small_path_loss(std::max(d, kMinDistanceM), p) + p.wall_loss_db;
    profile.co_channel_smalls.push_back(
        {static_cast<int>(i), d, dbm_to_mw(p.small_power_dbm - loss)});
  }
  return profile;
}

LinkBudget serving_link(const UserDescriptor& user, const BandSet& channel,
                        const RadioEnvironment& env, const RadioParams& p) {
  if (user.serving_small >= 0) {
    const auto& sbs = env.small_cells.at(static_cast<std::size_t>(user.serving_small));
    const double z = std::max(distance(sbs.position, user.position), kMinDistanceM);
    return {p.small_power_dbm, small_path_loss(z, p), 1.0};
  }
  const Point mbs = env.layout->cell(user.host_cell).mbs;
  const bool center = env.sets.macro_of(user.host_cell).center.intersects(channel);
  return {center ? p.center_power_dbm : p.edge_power_dbm, macro_loss_to(mbs, user.position, p),
          1.0};
}

double sinr(const LinkBudget& serving, const InterferenceProfile& profile) {
  return serving.rx_power_mw() / profile.total_mw();
}

double rate(double sinr) {
  if (sinr < 0.0) throw Error(ErrorCode::DomainError, "negative SINR");
  return std::log2(1.0 + sinr);
}

double area_spectral_efficiency(double n_center, double n_edge, double c_center, double c_edge,
                                double reuse_center, double reuse_edge) {
  if (!(n_center + n_edge > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "ASE needs at least one user");
  }
  if (reuse_center < 1.0 || reuse_edge < 1.0) {
    throw Error(ErrorCode::InvalidParameter, "reuse factors must be at least 1");
  }
  const double n = n_center + n_edge;
  return n_center / n * (c_center / reuse_center) + n_edge / n * (c_edge / reuse_edge);
}

double outage_analytic(double s_o_mw, const InterferenceProfile& profile, double gamma) {
  if (!(s_o_mw > 0.0)) throw Error(ErrorCode::DomainError, "mean signal power must be positive");
  return 1.0 - std::exp(-gamma / s_o_mw * profile.total_mw());
}

OutageEstimate outage_monte_carlo(double s_o_mw, const InterferenceProfile& profile, double gamma,
                                  std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidParameter, "need at least one sample");
  if (!(s_o_mw > 0.0)) throw Error(ErrorCode::DomainError, "mean signal power must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> fading(1.0);
  const double denom = profile.total_mw();
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    if (s_o_mw * fading(rng) / denom < gamma) ++hits;
  }
  OutageEstimate est;
  est.samples = samples;
  est.probability = static_cast<double>(hits) / static_cast<double>(samples);
  est.standard_error =
      std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(samples));
  return est;
}

}  // namespace ffr
