#include <stdexcept>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "islsim/constants.hpp"
#include "islsim/geometry.hpp"
#include "islsim/oracle/oracle.hpp"

using namespace islsim;
using std::numbers::pi;

TEST_SUITE("geometry") {

TEST_CASE("default configuration") {
  const ConstellationConfig cfg;
  CHECK(cfg.planes == 7);
  CHECK(cfg.sats_per_plane == 40);
  CHECK(cfg.altitude(1) == doctest::Approx(600e3));
  CHECK(cfg.altitude(7) == doctest::Approx(660e3));
  CHECK(cfg.longitude(1) == 0.0);
  CHECK(cfg.longitude(4) == doctest::Approx(3.0 * pi / 7.0));
  CHECK_THROWS_AS(cfg.altitude(0), std::out_of_range);
  CHECK_THROWS_AS(cfg.altitude(8), std::out_of_range);
}

TEST_CASE("validation rejects bad configurations") {
  ConstellationConfig cfg;
  cfg.planes = 1;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.sats_per_plane = 0;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.longitudes = {0.0, 0.1};
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.phase_offsets = {0.0};
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.base_altitude = -1e6;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("evenly spaced plane-major satellites") {
  const Constellation c{ConstellationConfig{}};
  REQUIRE(c.size() == 280);
  for (const auto& s : c.satellites()) {
    CHECK(s.phase >= 0.0);
    CHECK(s.phase < 2.0 * pi);
    CHECK(s.plane == s.id / 40 + 1);
  }
  CHECK(c[1].phase - c[0].phase == doctest::Approx(2.0 * pi / 40));
}

TEST_CASE("orbital period and step size") {
  CHECK(orbital_period(600e3) == doctest::Approx(5801).epsilon(2e-3));
  const double r = 6371e3 + 600e3;
  CHECK(orbital_period(600e3) == doctest::Approx(2.0 * pi * std::sqrt(r * r * r / 3.986004418e14)).epsilon(1e-14));
  const double step = 2.0 * pi * 30.0 / orbital_period(600e3);
  CHECK(step == doctest::Approx(0.0325).epsilon(5e-3));
  CHECK(step < 0.01 * pi * 1.05);
}

TEST_CASE("a full period returns every satellite home") {
  ConstellationConfig cfg;
  cfg.planes = 2;
  cfg.delta_altitude = 0.0;
  const Constellation c(cfg);
  const Constellation back = c.propagate(orbital_period(cfg.altitude(1)));
  for (int i = 0; i < c.size(); ++i) {
    double d = std::abs(back[i].phase - c[i].phase);
    d = std::min(d, 2.0 * pi - d);
    CHECK(d < 1e-9);
  }
  CHECK(back.epoch() == doctest::Approx(orbital_period(cfg.altitude(1))));
}

TEST_CASE("propagation preserves intra-plane spacing") {
  const Constellation c{ConstellationConfig{}};
  for (double dt : {1.0, 30.0, 1234.5, 86400.0}) {
    const Constellation n = c.propagate(dt);
    for (int p = 0; p < 7; ++p) {
      for (int j = 0; j < 40; ++j) {
        const double a = n[p * 40 + j].phase;
        const double b = n[p * 40 + (j + 1) % 40].phase;
        const double gap = std::fmod(b - a + 4.0 * pi, 2.0 * pi);
        CHECK(gap == doctest::Approx(2.0 * pi / 40).epsilon(1e-9));
      }
    }
  }
  CHECK_THROWS(c.propagate(-1.0));
}

TEST_CASE("antipodal same-plane satellites") {
  ConstellationConfig cfg;
  cfg.planes = 2;
  const Constellation c(cfg, {{0, 1, 0.0}, {1, 1, pi}});
  CHECK(distance(c, c[0], c[1]) == doctest::Approx(13942e3).epsilon(1e-9));
  CHECK(distance(c, c[0], c[1]) == doctest::Approx(oracle::cartesian_distance(c, 0, 1)).epsilon(1e-12));
}

TEST_CASE("distance agrees with Cartesian positions on random pairs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  const ConstellationConfig cfg;
  std::uniform_int_distribution<int> plane(1, cfg.planes);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Constellation c(cfg, {{0, plane(rng), phase(rng)}, {1, plane(rng), phase(rng)}});
    const double a = distance(c, c[0], c[1]);
    const double b = oracle::cartesian_distance(c, 0, 1);
    CHECK(a == doctest::Approx(distance(c, c[1], c[0])).epsilon(1e-13));
    if (b > 0.0) worst = std::max(worst, std::abs(a - b) / b);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("triangle inequality") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::uniform_int_distribution<int> plane(1, 7);
  for (int i = 0; i < 2000; ++i) {
    const Constellation c(ConstellationConfig{},
                          {{0, plane(rng), phase(rng)}, {1, plane(rng), phase(rng)}, {2, plane(rng), phase(rng)}});
    CHECK(distance(c, c[0], c[2]) <= distance(c, c[0], c[1]) + distance(c, c[1], c[2]) + 1e-6);
  }
}

TEST_CASE("direction matches the orbit-normal projection") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::uniform_int_distribution<int> plane(1, 7);
  for (int i = 0; i < 5000; ++i) {
    const Constellation c(ConstellationConfig{}, {{0, plane(rng), phase(rng)}, {1, plane(rng), phase(rng)}});
    CHECK(relative_direction(c, c[0], c[1]) == oracle::direction(c, 0, 1));
  }
}

TEST_CASE("direction rule on hand-placed satellites") {
  const Constellation c(ConstellationConfig{}, {{0, 1, pi / 2}, {1, 2, pi / 2}, {2, 2, pi / 4}, {3, 1, 0.0}});
  // Plane 2 lies at larger longitude; seen from plane 1 it is on the minus side.
  CHECK(relative_direction(c, c[0], c[1]) == Direction::minus);
  CHECK(relative_direction(c, c[1], c[0]) == Direction::plus);
  CHECK(relative_direction(c, c[3], c[1]) == Direction::minus);
  CHECK(relative_direction(c, c[1], c[3]) == Direction::zero);
  CHECK(relative_direction(c, c[1], c[2]) == Direction::zero);
}

TEST_CASE("directions are antisymmetric away from the poles") {
  const ConstellationConfig cfg;
  constexpr int kGrid = 90;
  for (int p = 1; p <= cfg.planes; ++p) {
    for (int q = 1; q <= cfg.planes; ++q) {
      if (p == q) continue;
      for (int i = 1; i < kGrid; ++i) {
        for (int j = 1; j < kGrid; j += 7) {
          const double tu = pi * i / kGrid;
          const double tv = pi * j / kGrid;
          const Constellation c(cfg, {{0, p, tu}, {1, q, tv}});
          if (relative_direction(c, c[0], c[1]) == Direction::plus) {
            CHECK(relative_direction(c, c[1], c[0]) == Direction::minus);
          }
        }
      }
    }
  }
}

TEST_CASE("line of sight uses the horizon range") {
  const ConstellationConfig cfg;
  const double h = cfg.altitude(1);
  CHECK(max_slant_range(cfg, 1, 1) == doctest::Approx(2.0 * std::sqrt(h * (h + 2.0 * constants::kEarthRadius))));
  ConstellationConfig same = cfg;
  same.delta_altitude = 0.0;
  // Two satellites 2*acos(R/r) apart on a great circle just graze the Earth.
  const double half = std::acos(constants::kEarthRadius / same.radius(1));
  const Constellation grazing(same, {{0, 1, 0.0}, {1, 1, 2.0 * half - 1e-6}});
  CHECK(has_los(grazing, grazing[0], grazing[1]));
  const Constellation hidden(same, {{0, 1, 0.0}, {1, 1, 2.0 * half + 1e-3}});
  CHECK_FALSE(has_los(hidden, hidden[0], hidden[1]));
}

TEST_CASE("maximum Doppler shifts") {
  ConstellationConfig cfg;
  cfg.planes = 5;
  CHECK(max_doppler(cfg, 1, 5, 2.4e9) == doctest::Approx(114.32e3).epsilon(0.02));
  CHECK(max_doppler(cfg, 1, 2, 2.4e9) == doctest::Approx(36.99e3).epsilon(0.02));
  CHECK(max_doppler(cfg, 1, 5, 2.4e9) > max_doppler(cfg, 1, 3, 2.4e9));
  CHECK(max_doppler(cfg, 1, 2, 0.0) == 0.0);
  CHECK_THROWS(max_doppler(cfg, 2, 2, 2.4e9));
}

}
