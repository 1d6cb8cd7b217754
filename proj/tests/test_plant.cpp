#include <doctest.h>

#include "danc/plant.hpp"
#include "util.hpp"

using namespace danc;

namespace {

PathSet random_scene(std::mt19937_64& rng, std::size_t J, std::size_t H) {
  PathSet p;
  for (std::size_t j = 0; j < J; ++j) p.primary.push_back(testutil::random_ir(rng, H));
  p.secondary.resize(J);
  for (auto& row : p.secondary)
    for (std::size_t k = 0; k < J; ++k) row.push_back(testutil::random_ir(rng, H, 0.5));
  p.secondary_model = p.secondary;
  return p;
}

}  // namespace

TEST_CASE("no control leaves disturbance plus noise") {
  std::mt19937_64 rng(1);
  const auto paths = random_scene(rng, 3, 4);
  for (auto mode : {PlantMode::slow_variation, PlantMode::causal}) {
    Plant plant(paths, 5, mode, {0.1, 0.2, 0.3}, 9);
    auto hist = plant.make_history();
    const GlobalFilter w(3, 5);
    for (int n = 0; n < 50; ++n) {
      const auto out = plant_step(plant, hist, w, std::sin(0.3 * n), true);
      for (std::size_t j = 0; j < 3; ++j) CHECK(out.e[j] == doctest::Approx(out.d[j] + plant.noise()[j]));
    }
  }
}

TEST_CASE("exact cancellation with identity paths") {
  PathSet p;
  p.primary = {ImpulseResponse{{1.0, 0.0, 0.0}, 1.0}};
  p.secondary = {{ImpulseResponse{{1.0, 0.0, 0.0}, 1.0}}};
  p.secondary_model = p.secondary;
  for (auto mode : {PlantMode::slow_variation, PlantMode::causal}) {
    Plant plant(p, 4, mode);
    auto hist = plant.make_history();
    GlobalFilter w(1, 4);
    w.filter(0)[0] = -1.0;
    std::mt19937_64 rng(2);
    const auto x = testutil::randn(rng, 40);
    for (std::size_t n = 0; n < x.size(); ++n) {
      const auto out = plant_step(plant, hist, w, x[n], false);
      CHECK(out.e[0] == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("plant matches batch evaluation with fixed filters") {
  std::mt19937_64 rng(3);
  const std::size_t J = 2, H = 4, I = 4, N = 64;
  const auto paths = random_scene(rng, J, H);
  GlobalFilter w(J, I);
  for (auto& v : w.data()) v = std::normal_distribution<double>(0.0, 0.5)(rng);
  const auto x = testutil::randn(rng, N);

  std::vector<std::vector<double>> e_ref(J);
  for (std::size_t j = 0; j < J; ++j) {
    e_ref[j] = testutil::naive_conv(x, paths.primary[j].coeffs);
    for (std::size_t k = 0; k < J; ++k) {
      const auto y = testutil::naive_conv(x, w.filter(k));
      const auto c = testutil::naive_conv(y, paths.secondary[j][k].coeffs);
      for (std::size_t n = 0; n < N; ++n) e_ref[j][n] += c[n];
    }
  }
  for (auto mode : {PlantMode::slow_variation, PlantMode::causal}) {
    Plant plant(paths, I, mode);
    auto hist = plant.make_history();
    for (std::size_t n = 0; n < N; ++n) {
      const auto out = plant_step(plant, hist, w, x[n], false);
      for (std::size_t j = 0; j < J; ++j) CHECK(out.e[j] == doctest::Approx(e_ref[j][n]).epsilon(1e-12));
    }
  }
}

TEST_CASE("causal plant uses the filter in force at each sample") {
  std::mt19937_64 rng(4);
  const std::size_t J = 2, H = 4, I = 3, N = 40;
  const auto paths = random_scene(rng, J, H);
  const auto x = testutil::randn(rng, N);
  std::vector<GlobalFilter> ws;
  for (std::size_t n = 0; n < N; ++n) {
    GlobalFilter w(J, I);
    for (auto& v : w.data()) v = std::normal_distribution<double>(0.0, 0.5)(rng);
    ws.push_back(w);
  }
  // y_k(n) = w_k(n) . [x(n) .. x(n-I+1)], then c_j = sum_k h_jk * y_k.
  std::vector<std::vector<double>> y(J, std::vector<double>(N, 0.0));
  for (std::size_t k = 0; k < J; ++k)
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t i = 0; i < I && i <= n; ++i) y[k][n] += ws[n].filter(k)[i] * x[n - i];

  Plant plant(paths, I, PlantMode::causal);
  auto hist = plant.make_history();
  for (std::size_t n = 0; n < N; ++n) {
    const auto out = plant_step(plant, hist, ws[n], x[n], false);
    for (std::size_t j = 0; j < J; ++j) {
      double e = testutil::naive_conv(x, paths.primary[j].coeffs)[n];
      for (std::size_t k = 0; k < J; ++k) e += testutil::naive_conv(y[k], paths.secondary[j][k].coeffs)[n];
      CHECK(out.e[j] == doctest::Approx(e).epsilon(1e-12));
    }
  }
}
