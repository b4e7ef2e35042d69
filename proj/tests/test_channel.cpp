#include <doctest.h>

#include <cmath>
#include <random>

#include "ffr/channel.hpp"
#include "ffr/error.hpp"

using namespace ffr;

namespace {

// Hand-evaluated reference values (independent calculator).
constexpr double kHata1km = 139.88478887031258;
constexpr double kHata240m = 118.95344005944973;
constexpr double kHataSlope = 33.77174647159907;
constexpr double kSmall8m = 62.391969737840526;
constexpr double kNoise180k = -121.44727494896694;

constexpr Hz kMHz = 1'000'000;

void occupy(FrequencyPlan& plan, CellIndex cell, double fraction) {
  const BandInterval band = plan.edge_band(cell);
  const Hz width = std::llround(fraction * static_cast<double>(band.width()));
  plan.cell_spectrum(cell).in_use |= BandInterval{band.lo, band.lo + width};
}

struct Toy {
  ClusterLayout layout = build_cluster(1000, 250);
  FrequencyPlan plan = initial_plan(20 * kMHz, 0.4, 100'000, 0.0);
  Reassignment r;
  RadioEnvironment env;

  Toy() {
    occupy(plan, 2, 0.9);
    occupy(plan, 4, 0.7);
    occupy(plan, 6, 0.4);
    for (CellIndex c : {1, 3, 5}) occupy(plan, c, 1.0);
    for (CellIndex c = 1; c <= 7; ++c) plan.cell_spectrum(c).in_use |= plan.z_band();
    r = plan_reassignment(7, 1 * kMHz, plan);
    apply_reassignment(plan, r);
    plan.cell_spectrum(7).in_use |= r.x() | plan.band(BandLabel::C);
    env = make_environment(plan, &r, layout, place_small_cells(7, 100, 1, layout));
  }

  BandSet channel_at(Hz f) const {
    const Hz w = plan.grid().width;
    return BandSet(BandInterval{f / w * w, f / w * w + w});
  }
};

}  // namespace

TEST_CASE("path loss regression") {
  const RadioParams p;
  CHECK(std::abs(macro_path_loss(1.0, p) - kHata1km) < 1e-6);
  CHECK(std::abs(macro_path_loss(0.24, p) - kHata240m) < 1e-6);
  CHECK(std::abs(macro_path_loss(0.24, p) - (kHata1km - kHataSlope * std::log10(1 / 0.24))) <
        1e-9);
  CHECK(std::abs(macro_path_loss(0.6, p) - macro_path_loss(0.3, p) -
                 kHataSlope * std::log10(2.0)) < 1e-9);
  CHECK(std::abs(small_path_loss(8.0, p) - kSmall8m) < 1e-6);
  CHECK(small_path_loss(1.0, p) == doctest::Approx(20 * std::log10(1800.0) - 28));
  CHECK_THROWS_AS(macro_path_loss(0.0, p), Error);
  CHECK_THROWS_AS(small_path_loss(-1.0, p), Error);
  double prev_m = -1e9, prev_s = -1e9;
  for (double d = 0.01; d < 3.0; d *= 1.3) {
    CHECK(macro_path_loss(d, p) > prev_m);
    CHECK(small_path_loss(d * 100, p) > prev_s);
    prev_m = macro_path_loss(d, p);
    prev_s = small_path_loss(d * 100, p);
  }
}

TEST_CASE("noise and power conversions") {
  RadioParams p;
  CHECK(mw_to_dbm(noise_power(p)) == doctest::Approx(kNoise180k).epsilon(1e-12));
  p.channel_bandwidth = 1;
  CHECK(mw_to_dbm(noise_power(p)) == doctest::Approx(-174.0));
  p.channel_bandwidth = 10;
  CHECK(mw_to_dbm(noise_power(p)) == doctest::Approx(-164.0));
  CHECK(RadioParams{}.alpha() == doctest::Approx(std::pow(10.0, -1.1)));
  CHECK_NOTHROW(RadioParams{}.validate());
  RadioParams bad;
  bad.center_power_dbm = 46.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("rate and SINR basics") {
  CHECK(rate(0.0) == 0.0);
  CHECK(rate(1.0) == doctest::Approx(1.0));
  CHECK(rate(3.0) == doctest::Approx(2.0));
  const double h = 1e-3;
  for (double x = 0.01; x < 100; x *= 1.7) {
    CHECK(rate(x + h) > rate(x));
    CHECK(rate(x + h) - 2 * rate(x) + rate(x - h) < 0.0);
  }
  InterferenceProfile profile;
  profile.noise_mw = 1e-12;
  LinkBudget s{mw_to_dbm(1e-12), 0.0, 1.0};
  CHECK(sinr(s, profile) == doctest::Approx(1.0));
  const double before = sinr(s, profile);
  profile.co_channel_smalls.push_back({0, 10.0, 1e-15});
  CHECK(sinr(s, profile) < before);
}

TEST_CASE("area spectral efficiency") {
  CHECK(area_spectral_efficiency(5, 5, 3.0, 3.0, 1, 3) == doctest::Approx(2.0));
  CHECK(area_spectral_efficiency(7, 0, 2.5, 9.0, 1, 3) == doctest::Approx(2.5));
  CHECK_THROWS_AS(area_spectral_efficiency(0, 0, 1, 1, 1, 3), Error);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double nc = std::floor(u(rng) * 10) + 1, ne = std::floor(u(rng) * 10);
    const double cc = u(rng), ce = u(rng);
    const double hand = (nc * cc * 3 + ne * ce) / (3 * (nc + ne));
    CHECK(area_spectral_efficiency(nc, ne, cc, ce, 1, 3) == doctest::Approx(hand).epsilon(1e-12));
  }
}

TEST_CASE("analytic and Monte-Carlo outage agree") {
  InterferenceProfile profile;
  profile.noise_mw = 1.0;
  CHECK(outage_analytic(1.0, profile, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  profile.noise_mw = 1e-30;
  CHECK(outage_analytic(1.0, profile, 1.0) < 1e-20);
  CHECK(outage_monte_carlo(1.0, profile, 0.0, 1000, 3).probability == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    InterferenceProfile pr;
    pr.noise_mw = std::pow(10.0, u(rng));
    pr.second_tier_mw = std::pow(10.0, u(rng));
    pr.co_channel_macros.push_back({1, PowerClass::Edge, std::pow(10.0, u(rng))});
    const double gamma = std::pow(10.0, u(rng) + 1.0);
    const double s_o = 10.0;
    const double exact = outage_analytic(s_o, pr, gamma);
    const auto mc = outage_monte_carlo(s_o, pr, gamma, 100'000, 100 + i);
    const double sigma = std::sqrt(exact * (1 - exact) / 1e5);
    CHECK(std::abs(mc.probability - exact) <= 3 * sigma + 1e-12);
    const auto again = outage_monte_carlo(s_o, pr, gamma, 100'000, 100 + i);
    CHECK(again.probability == mc.probability);
  }
}

TEST_CASE("interference structure in the reference cell") {
  const Toy t;
  const RadioParams p;
  const Hz c_lo = t.plan.band(BandLabel::C).lo;

  // Edge user on C: nothing in the first tier, no small cell, only the second tier.
  const UserDescriptor edge{t.layout.point_at(7, 420, 0.4), 7, Zone::Edge, -1};
  const auto on_c = build_interference_profile(edge, t.channel_at(c_lo), t.env, p);
  CHECK(on_c.co_channel_macros.empty());
  CHECK(on_c.co_channel_smalls.empty());
  CHECK(on_c.second_tier_mw > 0.0);

  // Edge user on X - X_I: the lender no longer transmits it, the peers never occupied it.
  const auto clean = build_interference_profile(edge, t.channel_at(t.r.x_clean().lowest()), t.env, p);
  CHECK(clean.co_channel_macros.empty());
  CHECK(clean.co_channel_smalls.empty());

  // Center user on X_I: cell 2 transmits it at center power.
  const UserDescriptor center{t.layout.point_at(7, 240, 0.4), 7, Zone::Center, -1};
  const BandSet xi = t.channel_at(t.r.x_i.lowest());
  const auto on_xi = build_interference_profile(center, xi, t.env, p);
  REQUIRE(on_xi.co_channel_macros.size() == 1);
  CHECK(on_xi.co_channel_macros[0].cell == 2);
  CHECK(on_xi.co_channel_macros[0].power == PowerClass::Center);
  CHECK(serving_link(center, xi, t.env, p).tx_power_dbm == p.center_power_dbm);
  CHECK(serving_link(edge, t.channel_at(c_lo), t.env, p).tx_power_dbm == p.edge_power_dbm);

  // Unused channel: noise only.
  RadioEnvironment quiet = t.env;
  for (auto& b : quiet.in_use) b = BandSet{};
  for (auto& b : quiet.small_bands) b = BandSet{};
  const auto none = build_interference_profile(center, xi, quiet, p);
  CHECK(none.total_mw() == doctest::Approx(noise_power(p)));
}

TEST_CASE("X_I at center power never hurts") {
  const Toy t;
  const RadioParams p;
  RadioEnvironment boosted = t.env;
  boosted.edge_power_override = t.r.x_i;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> radius(10.0, 480.0);
  for (int i = 0; i < 200; ++i) {
    const Point pos = t.layout.point_at(7, radius(rng), angle(rng));
    if (!t.layout.contains(7, pos)) continue;
    const UserDescriptor u{pos, 7, classify_zone(pos, 7, t.layout), -1};
    for (Hz f : {t.r.x_i.lowest(), t.plan.z_band().lo, t.plan.band(BandLabel::C).lo}) {
      const BandSet ch = t.channel_at(f);
      const LinkBudget s = serving_link(u, ch, t.env, p);
      CHECK(serving_link(u, ch, boosted, p).tx_power_dbm == s.tx_power_dbm);
      CHECK(sinr(s, build_interference_profile(u, ch, t.env, p)) >=
            sinr(s, build_interference_profile(u, ch, boosted, p)));
    }
  }
}

TEST_CASE("small-cell interferers respect the range cut") {
  const Toy t;
  const RadioParams p;
  const UserDescriptor u{t.layout.point_at(7, 300, 1.0), 7, Zone::Edge, -1};
  const auto prof = build_interference_profile(u, t.channel_at(t.plan.z_band().lo), t.env, p);
  for (const auto& s : prof.co_channel_smalls) {
    CHECK(s.distance_m <= p.small_cell_range_m);
    CHECK(t.env.small_cells[static_cast<std::size_t>(s.index)].zone == Zone::Edge);
  }
}
