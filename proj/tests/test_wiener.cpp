#include <doctest.h>

#include <Eigen/Dense>

#include "danc/wiener.hpp"
#include "util.hpp"

using namespace danc;

namespace {

PathSet toy(std::mt19937_64& rng, std::size_t J, std::size_t H) {
  PathSet p;
  for (std::size_t j = 0; j < J; ++j) p.primary.push_back(testutil::random_ir(rng, H));
  p.secondary.resize(J);
  for (auto& row : p.secondary)
    for (std::size_t k = 0; k < J; ++k) row.push_back(testutil::random_ir(rng, H));
  p.secondary_model = p.secondary;
  return p;
}

double total(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("identity secondary path: optimum is the negated primary path") {
  std::mt19937_64 rng(1);
  PathSet p;
  p.primary = {testutil::random_ir(rng, 5)};
  p.secondary = {{ImpulseResponse{{1.0, 0.0, 0.0, 0.0, 0.0}, 1.0}}};
  p.secondary_model = p.secondary;
  const auto x = testutil::randn(rng, 4000);
  const auto sol = wiener_oracle(p, x, 8);
  CHECK_FALSE(sol.regularized);
  for (std::size_t i = 0; i < 8; ++i) {
    const double expect = i < 5 ? -p.primary[0].coeffs[i] : 0.0;
    CHECK(sol.w_opt.filter(0)[i] == doctest::Approx(expect).scale(1.0).epsilon(1e-9));
  }
  CHECK(total(sol.residual_power) < 1e-20);
}

TEST_CASE("matches a dense least-squares solve") {
  std::mt19937_64 rng(2);
  const std::size_t J = 2, I = 8, H = 4, T = 10000, skip = 12;
  const auto p = toy(rng, J, H);
  const auto x = testutil::randn(rng, T);
  const auto sol = wiener_oracle(p, x, I, skip);

  Eigen::MatrixXd A((T - skip) * J, J * I);
  Eigen::VectorXd b((T - skip) * J);
  A.setZero();
  for (std::size_t j = 0; j < J; ++j) {
    const auto d = testutil::naive_conv(x, p.primary[j].coeffs);
    for (std::size_t k = 0; k < J; ++k) {
      const auto s = testutil::naive_conv(x, p.secondary[j][k].coeffs);
      for (std::size_t n = skip; n < T; ++n)
        for (std::size_t a = 0; a < I && a <= n; ++a) A((n - skip) * J + j, k * I + a) = s[n - a];
    }
    for (std::size_t n = skip; n < T; ++n) b((n - skip) * J + j) = d[n];
  }
  const Eigen::VectorXd w = A.colPivHouseholderQr().solve(-b);
  for (std::size_t i = 0; i < J * I; ++i) CHECK(sol.w_opt.data()[i] == doctest::Approx(w(i)).scale(1.0).epsilon(1e-9));
  CHECK(sol.normal_residual <= 1e-6);
  const double rss = (A * w + b).squaredNorm() / static_cast<double>(T - skip);
  CHECK(total(sol.residual_power) == doctest::Approx(rss).epsilon(1e-8));
}

TEST_CASE("optimum beats random perturbations") {
  std::mt19937_64 rng(3);
  const auto p = toy(rng, 3, 5);
  const auto x = testutil::randn(rng, 6000);
  const auto sol = wiener_oracle(p, x, 6, 10);
  const double best = total(sol.residual_power);
  CHECK(total(ls_residual_power(p, x, sol.w_opt, 10)) == doctest::Approx(best));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    GlobalFilter w = sol.w_opt;
    const double scale = std::pow(10.0, -1.0 - t % 4);
    for (auto& v : w.data()) v += scale * g(rng);
    CHECK(total(ls_residual_power(p, x, w, 10)) >= best);
  }
  CHECK(sol.normal_residual <= 1e-6);
}

TEST_CASE("singular normal matrix is regularized and reported") {
  std::mt19937_64 rng(4);
  PathSet p;
  p.primary = {testutil::random_ir(rng, 3), testutil::random_ir(rng, 3)};
  const auto h = testutil::random_ir(rng, 3);
  p.secondary = {{h, h}, {h, h}};  // both speakers indistinguishable
  p.secondary_model = p.secondary;
  const auto x = testutil::randn(rng, 3000);
  const auto sol = wiener_oracle(p, x, 4, 4);
  CHECK(sol.regularized);
  CHECK(sol.w_opt.finite());
}
