#include <doctest.h>

#include <cmath>

#include "danc/error.hpp"
#include "danc/metrics.hpp"

using namespace danc;

using Runs = std::vector<std::vector<std::vector<double>>>;

TEST_CASE("residual equal to disturbance is 0 dB") {
  Runs d{{{1.0, 2.0}, {0.5, -1.0}, {3.0, 0.1}}};
  const auto tau = residual_trace(d, d);
  for (double t : tau) CHECK(t == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("residual scaled by 1/sqrt(1000) is -30 dB") {
  Runs d{{{1.0, 2.0}, {0.5, -1.0}, {3.0, 0.1}}}, e = d;
  for (auto& s : e[0])
    for (auto& v : s) v /= std::sqrt(1000.0);
  for (double t : residual_trace(e, d)) CHECK(t == doctest::Approx(-30.0).epsilon(1e-12));
}

TEST_CASE("powers are averaged across runs before the log") {
  // e-powers 1 and 3, d-power 2 in each run.
  Runs e{{{1.0}}, {{std::sqrt(3.0)}}}, d{{{std::sqrt(2.0)}}, {{std::sqrt(2.0)}}};
  const auto tau = residual_trace(e, d);
  REQUIRE(tau.size() == 1);
  CHECK(tau[0] == doctest::Approx(0.0).scale(1.0));
  const double mean_of_db = 0.5 * (10.0 * std::log10(0.5) + 10.0 * std::log10(1.5));
  CHECK(std::abs(tau[0] - mean_of_db) > 0.5);
}

TEST_CASE("centred moving average of the ratio") {
  PowerTrace p;
  p.resize(5);
  const double r[] = {1.0, 2.0, 3.0, 4.0, 5.0};
  for (int i = 0; i < 5; ++i) {
    p.residual[i] = r[i];
    p.disturbance[i] = 1.0;
  }
  const auto tau = normalized_residual_db(p, 3);
  CHECK(tau[0] == doctest::Approx(10.0 * std::log10(1.5)));
  CHECK(tau[2] == doctest::Approx(10.0 * std::log10(3.0)));
  CHECK(tau[4] == doctest::Approx(10.0 * std::log10(4.5)));
}

TEST_CASE("zero disturbance power is a gap, not a crash") {
  PowerTrace p;
  p.resize(3);
  p.residual = {1.0, 1.0, 1.0};
  p.disturbance = {1.0, 0.0, 2.0};
  const auto tau = normalized_residual_db(p);
  CHECK(std::isnan(tau[1]));
  CHECK(std::isfinite(tau[2]));
  CHECK(steady_state_db(tau, 1.0) == doctest::Approx(0.5 * (0.0 + 10.0 * std::log10(0.5))));
}

TEST_CASE("consensus spread and relative distance") {
  GlobalFilter same(3, 2);
  for (std::size_t j = 0; j < 3; ++j) {
    same.filter(j)[0] = 1.0;
    same.filter(j)[1] = -2.0;
  }
  CHECK(consensus_spread(same) == 0.0);
  CHECK(relative_distance(same, same) == 0.0);

  GlobalFilter w(2, 1);
  w.data()[0] = 1.0;
  w.data()[1] = 3.0;
  CHECK(consensus_spread(w) == doctest::Approx(2.0 / 2.0));
  GlobalFilter ref(2, 1);
  ref.data()[0] = 1.0;
  ref.data()[1] = 2.0;
  CHECK(relative_distance(w, ref) == doctest::Approx(1.0 / std::sqrt(5.0)));

  try {
    relative_distance(w, GlobalFilter(2, 1));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroReference);
  }
  const auto diag = filter_metrics({{10, w}, {20, ref}}, ref);
  REQUIRE(diag.size() == 2);
  CHECK(diag[0].iteration == 10);
  CHECK(diag[1].distance == 0.0);
}
