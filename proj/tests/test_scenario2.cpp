#include <doctest.h>

#include <cmath>
#include <random>

#include "uavot/errors.hpp"
#include "uavot/hover.hpp"

using namespace uavot;
using namespace uavot::hover;

namespace {

std::vector<UavNode> two_uavs(double x0, double y0, double x1, double y1) {
  std::vector<UavNode> u(2);
  u[0].x = x0;
  u[0].y = y0;
  u[1].x = x1;
  u[1].y = y1;
  return u;
}

RadioField constant_sinr(std::size_t m, std::size_t n, double sinr) {
  return RadioField(m, n, std::vector<double>(m * n, 1.0), std::vector<double>(m * n, sinr), 0.01);
}

}  // namespace

TEST_CASE("optimal bandwidth split") {
  SUBCASE("single user") {
    const auto s = optimal_bandwidth_split(std::vector<double>{4e6}, std::vector<double>{2.0}, 1e6);
    CHECK(s.bandwidth_hz[0] == 1e6);
    CHECK(s.finish_time_s == doctest::Approx(2.0));
  }
  SUBCASE("symmetric pair") {
    const auto s = optimal_bandwidth_split(std::vector<double>{1e7, 1e7}, std::vector<double>{3.0, 3.0}, 1e6);
    CHECK(s.bandwidth_hz[0] == doctest::Approx(5e5));
    CHECK(s.bandwidth_hz[1] == doctest::Approx(5e5));
  }
  SUBCASE("two-user minmax") {
    const auto s =
        optimal_bandwidth_split(std::vector<double>{1e7, 2e7}, std::vector<double>{2.0, 1.0}, 1e6);
    CHECK(s.bandwidth_hz[0] == doctest::Approx(2e5).epsilon(1e-14));
    CHECK(s.bandwidth_hz[1] == doctest::Approx(8e5).epsilon(1e-14));
    CHECK(s.finish_time_s == doctest::Approx(25.0).epsilon(1e-14));
    // Each user finishes at the common instant.
    CHECK(1e7 / (s.bandwidth_hz[0] * 2.0) == doctest::Approx(25.0).epsilon(1e-14));
    CHECK(2e7 / (s.bandwidth_hz[1] * 1.0) == doctest::Approx(25.0).epsilon(1e-14));
    CHECK(equal_split_finish_time(std::vector<double>{1e7, 2e7}, std::vector<double>{2.0, 1.0}, 1e6) ==
          doctest::Approx(40.0));
  }
  SUBCASE("unserviceable user") {
    CHECK_THROWS_AS(optimal_bandwidth_split(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0}, 1e6),
                    InfeasibleError);
    CHECK_NOTHROW(optimal_bandwidth_split(std::vector<double>{1.0, 0.0}, std::vector<double>{1.0, 0.0}, 1e6));
    CHECK_THROWS_AS(optimal_bandwidth_split(std::vector<double>{}, std::vector<double>{}, 1e6),
                    ParameterError);
  }
}

TEST_CASE("bandwidth split identities on random instances") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> load(1e5, 1e8);
  std::uniform_real_distribution<double> eff(0.01, 8.0);
  std::uniform_int_distribution<int> count(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = count(rng);
    std::vector<double> u(static_cast<std::size_t>(n));
    std::vector<double> e(u.size());
    const bool uniform_ratio = trial % 10 == 0;
    for (std::size_t r = 0; r < u.size(); ++r) {
      e[r] = eff(rng);
      u[r] = uniform_ratio ? 3e6 * e[r] : load(rng);
    }
    const double b = 1e6;
    const auto s = optimal_bandwidth_split(u, e, b);
    double seq = 0.0;
    double wsum = 0.0;
    for (std::size_t r = 0; r < u.size(); ++r) {
      seq += u[r] / (b * e[r]);
      wsum += s.bandwidth_hz[r];
    }
    CHECK(s.finish_time_s == doctest::Approx(seq).epsilon(1e-12));
    CHECK(wsum == doctest::Approx(b).epsilon(1e-12));
    const double eq = equal_split_finish_time(u, e, b);
    CHECK(s.finish_time_s <= eq * (1.0 + 1e-12));
    if (uniform_ratio || n == 1) {
      CHECK(s.finish_time_s == doctest::Approx(eq).epsilon(1e-12));
    } else {
      CHECK(s.finish_time_s < eq * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("hover time") {
  const auto g = uniform_density(GridSpec{1000.0, 1000.0, 10, 10});
  const auto radio = constant_sinr(1, 100, 3.0);  // E = 2 bit/s/Hz
  const ControlTimeModel control{0.01};

  CHECK(hover_time(g, CellSubset(100), radio, 0, 1e6, LoadField::constant(100, 1e8), control, 300.0).total() == 0.0);

  const auto idle = hover_time(g, CellSubset::all(100), radio, 0, 1e6, LoadField::constant(100, 0.0), control, 300.0);
  CHECK(idle.transmission_s == 0.0);
  CHECK(idle.control_s == doctest::Approx(900.0));

  const auto full = hover_time(g, CellSubset::all(100), radio, 0, 1e6, LoadField::constant(100, 1e8), control, 300.0);
  CHECK(full.transmission_s == doctest::Approx(300.0 * 1e8 / (1e6 * 2.0)).epsilon(1e-12));
  CHECK(full.control_s == doctest::Approx(900.0).epsilon(1e-12));
  CHECK(full.total() == doctest::Approx(15900.0).epsilon(1e-12));

  const RadioField partial(1, 2, {1.0, 1.0}, {1.0, 0.001}, 0.01);
  const auto g2 = uniform_density(GridSpec{2.0, 1.0, 2, 1});
  CHECK_THROWS_AS(hover_time(g2, CellSubset::all(2), partial, 0, 1e6, LoadField::constant(2, 1.0), control, 1.0),
                  InfeasibleError);
  CHECK_THROWS_AS(LoadField(std::vector<double>{-1.0}), ParameterError);
}

TEST_CASE("congestion cost field") {
  const auto g = truncated_gaussian(GridSpec{1000.0, 1000.0, 30, 30}, 250.0, 330.0, 400.0, 400.0);
  const auto uavs = two_uavs(250.0, 500.0, 750.0, 500.0);
  const auto radio = compute_radio_field(g, uavs, ChannelParams{});
  const auto load = LoadField::constant(g.cell_count(), 1e7);
  const auto& feasible = radio.feasible();

  const auto plain = assign_by_min_cost(
      g, congestion_cost_field(radio, uavs, load, ControlTimeModel{0.0}, 300.0, std::vector<double>{0.9, 0.1}),
      feasible);
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    const double t0 = 300.0 * 1e7 / (1e6 * radio.efficiency(0)[k]);
    const double t1 = 300.0 * 1e7 / (1e6 * radio.efficiency(1)[k]);
    CHECK(plain.owner(k) == (t1 < t0 ? 1 : 0));
  }

  const ControlTimeModel control{0.01};
  const auto equal = assign_by_min_cost(
      g, congestion_cost_field(radio, uavs, load, control, 300.0, std::vector<double>{0.5, 0.5}), feasible);
  CHECK(equal == plain);

  const auto skewed_cost =
      congestion_cost_field(radio, uavs, load, control, 300.0, std::vector<double>{0.9, 0.1});
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    const double base = 300.0 * 1e7 / (1e6 * radio.efficiency(0)[k]);
    CHECK(skewed_cost(0, k) == doctest::Approx(base + 2.0 * 0.01 * 300.0 * 300.0 * 0.9));
  }
  const auto skewed = assign_by_min_cost(g, skewed_cost, feasible);
  CHECK(skewed.mass(0) <= equal.mass(0));
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    if (skewed.owner(k) == 0) CHECK(equal.owner(k) == 0);
  }
}

TEST_CASE("scenario 2 fixed point") {
  const auto g = truncated_gaussian(GridSpec{1000.0, 1000.0, 30, 30}, 250.0, 330.0, 500.0, 500.0);
  const auto load = LoadField::constant(g.cell_count(), 1e7);
  const ControlTimeModel control{0.01};

  SUBCASE("single UAV serves everything regardless of Z") {
    std::vector<UavNode> one(1);
    one[0].x = 500.0;
    one[0].y = 500.0;
    const auto radio = compute_radio_field(g, one, ChannelParams{});
    FixedPointOptions a;
    a.iterations = 1;
    FixedPointOptions b;
    b.iterations = 50;
    const auto ra = solve_scenario2(g, one, radio, load, control, 300.0, a);
    const auto rb = solve_scenario2(g, one, radio, load, control, 300.0, b);
    CHECK(ra.partition.mass(0) == doctest::Approx(1.0));
    CHECK(ra.report.total() == rb.report.total());
    const auto direct = hover_time(g, CellSubset::all(g.cell_count()), radio, 0, 1e6, load, control, 300.0);
    CHECK(ra.report.total() == doctest::Approx(direct.total()).epsilon(1e-12));
  }

  SUBCASE("alpha = 0 gives the min transmission diagram") {
    const auto uavs = two_uavs(200.0, 300.0, 700.0, 600.0);
    const auto radio = compute_radio_field(g, uavs, ChannelParams{});
    const auto r = solve_scenario2(g, uavs, radio, load, ControlTimeModel{0.0}, 300.0);
    const auto cost = congestion_cost_field(radio, uavs, load, ControlTimeModel{0.0}, 300.0,
                                            std::vector<double>{0.0, 0.0});
    CHECK(r.partition == assign_by_min_cost(g, cost, radio.feasible()));
    CHECK(!r.warning.has_value());
    // Every visited partition after the first update is the same.
    for (std::size_t t = 2; t < r.objective_trace.size(); ++t) {
      CHECK(r.objective_trace[t] == r.objective_trace[1]);
    }
  }

  SUBCASE("averaged masses stay in the simplex") {
    std::vector<UavNode> uavs(3);
    uavs[0].x = 200.0;
    uavs[0].y = 200.0;
    uavs[1].x = 800.0;
    uavs[1].y = 300.0;
    uavs[2].x = 500.0;
    uavs[2].y = 800.0;
    const auto radio = compute_radio_field(g, uavs, ChannelParams{});
    const auto r = solve_scenario2(g, uavs, radio, load, ControlTimeModel{0.1}, 300.0);
    CHECK(r.mass_trace.size() == 200);
    for (const auto& a : r.mass_trace) {
      double s = 0.0;
      for (double x : a) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        s += x;
      }
      CHECK(s <= 1.0 + 1e-12);
    }
    CHECK(r.report.total() <= r.objective_trace.back());
    CHECK(r.report.total() == r.objective_trace[r.selected_iteration]);
  }

  SUBCASE("hover grows with interference and with alpha") {
    const auto uavs = two_uavs(300.0, 300.0, 700.0, 700.0);
    double prev = 0.0;
    for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      ChannelParams p;
      p.beta = beta;
      const auto radio = compute_radio_field(g, uavs, p);
      const double total = solve_scenario2(g, uavs, radio, load, control, 300.0).report.total();
      CHECK(total >= prev);
      prev = total;
    }
    prev = 0.0;
    const auto radio = compute_radio_field(g, uavs, ChannelParams{});
    for (double alpha : {0.0, 0.1, 0.5}) {
      const double total = solve_scenario2(g, uavs, radio, load, ControlTimeModel{alpha}, 300.0).report.total();
      CHECK(total >= prev);
      prev = total;
    }
  }

  SUBCASE("uncovered populated cells abort") {
    const auto uavs = two_uavs(200.0, 300.0, 700.0, 600.0);
    ChannelParams p;
    p.gamma_th = 1e3;
    const auto radio = compute_radio_field(g, uavs, p);
    CHECK_THROWS_AS(solve_scenario2(g, uavs, radio, load, control, 300.0), InfeasibleError);
  }
}

TEST_CASE("brute force oracle") {
  const ControlTimeModel control{0.01};

  SUBCASE("one cell goes to the cheaper UAV") {
    const auto g = uniform_density(GridSpec{10.0, 10.0, 1, 1});
    const auto uavs = two_uavs(0.0, 0.0, 0.0, 0.0);
    const RadioField radio(2, 1, {1.0, 1.0}, {1.0, 7.0}, 0.01);
    const auto r = brute_force_scenario2(g, uavs, radio, LoadField::constant(1, 1e7), control, 300.0);
    CHECK(r.partition.owner(0) == 1);
  }

  SUBCASE("mirrored two-cell instance splits") {
    const auto g = uniform_density(GridSpec{20.0, 10.0, 2, 1});
    const auto uavs = two_uavs(0.0, 0.0, 0.0, 0.0);
    const RadioField radio(2, 2, std::vector<double>(4, 1.0), {5.0, 2.0, 2.0, 5.0}, 0.01);
    const auto r = brute_force_scenario2(g, uavs, radio, LoadField::constant(2, 1e7), control, 300.0);
    CHECK(r.partition.owner(0) == 0);
    CHECK(r.partition.owner(1) == 1);
  }

  SUBCASE("never worse than the fixed point") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(0.0, 1000.0);
    std::uniform_real_distribution<double> spread(200.0, 1500.0);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = truncated_gaussian(GridSpec{1000.0, 1000.0, 3, 3}, pos(rng), pos(rng), spread(rng), spread(rng));
      const auto uavs = two_uavs(pos(rng), pos(rng), pos(rng), pos(rng));
      const auto radio = compute_radio_field(g, uavs, ChannelParams{});
      const auto load = LoadField::constant(9, 1e7);
      const auto exact = brute_force_scenario2(g, uavs, radio, load, control, 300.0);
      const auto fp = solve_scenario2(g, uavs, radio, load, control, 300.0);
      CHECK(exact.report.total() <= fp.report.total() * (1.0 + 1e-12));
    }
  }

  SUBCASE("size limit") {
    const auto g = uniform_density(GridSpec{1000.0, 1000.0, 5, 5});
    const auto uavs = two_uavs(300.0, 300.0, 700.0, 700.0);
    const auto radio = compute_radio_field(g, uavs, ChannelParams{});
    CHECK_THROWS_AS(brute_force_scenario2(g, uavs, radio, LoadField::constant(25, 1e7), control, 300.0), SizeError);
  }
}

TEST_CASE("sampled hover") {
  const auto g = uniform_density(GridSpec{2.0, 1.0, 2, 1});
  const auto uavs = two_uavs(0.0, 0.0, 0.0, 0.0);
  const RadioField radio(2, 2, std::vector<double>(4, 1.0), {3.0, 1.0, 1.0, 3.0}, 0.01);
  const Partition part(g, {0, 1}, 2);
  const std::vector<std::size_t> cells{0, 0, 1};
  const auto s = sampled_hover(part, radio, uavs, cells, LoadField::constant(2, 1e6), ControlTimeModel{0.01});
  // UAV 0: two users at E = 2; UAV 1: one user at E = 2.
  CHECK(s.optimal_split_s == doctest::Approx((0.5 + 0.5 + 0.01 * 4.0) + (0.5 + 0.01)));
  CHECK(s.equal_split_s == doctest::Approx((1.0 + 0.04) + (0.5 + 0.01)));
}
