#include "danc/wiener.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "danc/error.hpp"
#include "danc/kernels.hpp"

namespace danc {
namespace {

struct Filtered {
  std::size_t J = 0;
  std::vector<std::vector<double>> s;  // s[j*J + k] = h_jk * x
  std::vector<std::vector<double>> d;  // d[j] = p_j * x

  double at(std::size_t j, std::size_t k, long n) const {
    return n < 0 ? 0.0 : s[j * J + k][static_cast<std::size_t>(n)];
  }
};

Filtered filter_all(const PathSet& paths, std::span<const double> x) {
  Filtered f;
  f.J = paths.nodes();
  if (paths.secondary.size() != f.J) {
    throw Error(ErrorCode::DimensionMismatch, "secondary paths do not match primary paths");
  }
  for (std::size_t j = 0; j < f.J; ++j) {
    f.d.push_back(convolve(x, paths.primary[j].coeffs));
    for (std::size_t k = 0; k < f.J; ++k) f.s.push_back(convolve(x, paths.secondary[j][k].coeffs));
  }
  return f;
}

}  // namespace

WienerSolution wiener_oracle(const PathSet& paths, std::span<const double> x,
                             std::size_t filter_taps, std::size_t skip) {
  const std::size_t T = x.size();
  const std::size_t I = filter_taps;
  if (I == 0 || skip >= T) throw Error(ErrorCode::DimensionMismatch, "oracle needs I > 0 and skip < T");
  const Filtered f = filter_all(paths, x);
  const std::size_t J = f.J;
  const std::size_t M = J * I;
  const long Tl = static_cast<long>(T), n0 = static_cast<long>(skip);
  const std::size_t len = T - skip;

  // c[k*J + l][b] = sum_j sum_n s_jk(n) s_jl(n - b)
  std::vector<std::vector<double>> c(J * J, std::vector<double>(I, 0.0));
  std::vector<double> shifted(len);
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t l = 0; l < J; ++l) {
      for (std::size_t b = 0; b < I; ++b) {
        for (std::size_t i = 0; i < len; ++i) shifted[i] = f.at(j, l, n0 + static_cast<long>(i) - static_cast<long>(b));
        for (std::size_t k = 0; k < J; ++k) {
          const auto& sk = f.s[j * J + k];
          c[k * J + l][b] += kernels::dot(std::span<const double>(sk).subspan(skip, len), shifted);
        }
      }
    }
  }

  Eigen::MatrixXd R(M, M);
  for (std::size_t k = 0; k < J; ++k) {
    for (std::size_t l = 0; l < J; ++l) {
      for (std::size_t b = 0; b < I; ++b) R(k * I, l * I + b) = c[k * J + l][b];
      for (std::size_t a = 1; a < I; ++a) R(k * I + a, l * I) = c[l * J + k][a];
      for (std::size_t a = 1; a < I; ++a) {
        for (std::size_t b = 1; b < I; ++b) {
          const long la = static_cast<long>(a), lb = static_cast<long>(b);
          double delta = 0.0;
          for (std::size_t j = 0; j < J; ++j) {
            delta += f.at(j, k, n0 - la) * f.at(j, l, n0 - lb) -
                     f.at(j, k, Tl - la) * f.at(j, l, Tl - lb);
          }
          R(k * I + a, l * I + b) = R(k * I + a - 1, l * I + b - 1) + delta;
        }
      }
    }
  }

  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(M));
  for (std::size_t k = 0; k < J; ++k) {
    for (std::size_t a = 0; a < I; ++a) {
      double acc = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        for (long n = n0; n < Tl; ++n) acc += f.d[j][static_cast<std::size_t>(n)] * f.at(j, k, n - static_cast<long>(a));
      }
      r(static_cast<Eigen::Index>(k * I + a)) = acc;
    }
  }

  WienerSolution out;
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  Eigen::VectorXd w;
  const bool factored = llt.info() == Eigen::Success && llt.rcond() > 1e-13;
  if (factored) w = llt.solve(-r);
  if (!factored || !w.allFinite()) {
    Eigen::MatrixXd Rr = R;
    Rr.diagonal().array() += 1e-8 * R.trace() / static_cast<double>(M);
    w = Eigen::LLT<Eigen::MatrixXd>(Rr).solve(-r);
    out.regularized = true;
  }
  const double rn = r.norm();
  out.normal_residual = rn > 0.0 ? (R * w + r).norm() / rn : (R * w).norm();

  out.w_opt = GlobalFilter(J, I);
  std::copy(w.data(), w.data() + M, out.w_opt.data().begin());
  out.residual_power = ls_residual_power(paths, x, out.w_opt, skip);
  out.disturbance_power.assign(J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    for (long n = n0; n < Tl; ++n) out.disturbance_power[j] += f.d[j][static_cast<std::size_t>(n)] * f.d[j][static_cast<std::size_t>(n)];
    out.disturbance_power[j] /= static_cast<double>(len);
  }
  return out;
}

std::vector<double> ls_residual_power(const PathSet& paths, std::span<const double> x,
                                      const GlobalFilter& w, std::size_t skip) {
  const std::size_t T = x.size();
  const std::size_t J = paths.nodes();
  if (w.nodes() != J) throw Error(ErrorCode::DimensionMismatch, "filter node count differs from scene");
  if (skip >= T) throw Error(ErrorCode::DimensionMismatch, "skip must be below the record length");
  std::vector<double> power(J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    std::vector<double> e = convolve(x, paths.primary[j].coeffs);
    for (std::size_t k = 0; k < J; ++k) {
      const auto s = convolve(x, paths.secondary[j][k].coeffs);
      const auto y = convolve(s, w.filter(k));
      for (std::size_t n = 0; n < T; ++n) e[n] += y[n];
    }
    for (std::size_t n = skip; n < T; ++n) power[j] += e[n] * e[n];
    power[j] /= static_cast<double>(T - skip);
  }
  return power;
}

}  // namespace danc
