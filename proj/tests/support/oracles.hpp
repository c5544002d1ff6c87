#pragma once

// Independent reference implementations used by the unit and acceptance tests.
// Everything here is written element by element from the discrete equations,
// without sharing code or workspaces with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "apchemo/fields.hpp"
#include "apchemo/grid.hpp"
#include "apchemo/kernels.hpp"
#include "apchemo/params.hpp"

namespace apchemo::test {

/// Row-major dense matrix.
struct Dense {
  std::size_t n = 0;
  std::vector<double> a;

  explicit Dense(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense m, std::vector<double> b) {
  const std::size_t n = m.n;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    }
    if (m(piv, col) == 0.0) throw std::runtime_error("dense_solve: singular");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m(i, c) * x[c];
    x[i] = s / m(i, i);
  }
  return x;
}

inline Dense from_row_major(const std::vector<double>& values, std::size_t n) {
  Dense d(n);
  d.a = values;
  return d;
}

inline std::vector<double> multiply(const Dense& m, std::span<const double> x) {
  std::vector<double> y(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) y[i] += m(i, j) * x[j];
  }
  return y;
}

inline double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::runtime_error("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// max |a - b| / max(1, max |b|)
inline double scaled_diff(std::span<const double> a, std::span<const double> b) {
  return max_abs_diff(a, b) / std::max(1.0, max_abs(b));
}

/// |X_m| for m = 0..n/2 by direct summation.
inline std::vector<double> naive_dft_magnitudes(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t m = 0; m < out.size(); ++m) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(m * j % n) /
                           static_cast<double>(n);
      s += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[m] = std::abs(s);
  }
  return out;
}

inline std::vector<double> random_values(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (double& x : out) x = u(rng);
  return out;
}

/// Dense periodic (delta_x^2 - I) on n nodes.
inline Dense screened_poisson_dense_1d(std::size_t n, double dx) {
  Dense m(n);
  const double s = 1.0 / (dx * dx);
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) += -2.0 * s - 1.0;
    m(j, (j + 1) % n) += s;
    m(j, (j + n - 1) % n) += s;
  }
  return m;
}

/// Dense periodic (delta_1^2 + delta_2^2 - I) on an n1 x n2 grid (index j1 * n2 + j2).
inline Dense screened_poisson_dense_2d(std::size_t n1, std::size_t n2, double h1, double h2) {
  Dense m(n1 * n2);
  const double s1 = 1.0 / (h1 * h1);
  const double s2 = 1.0 / (h2 * h2);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      const std::size_t i = a * n2 + b;
      m(i, i) += -2.0 * s1 - 2.0 * s2 - 1.0;
      m(i, ((a + 1) % n1) * n2 + b) += s1;
      m(i, ((a + n1 - 1) % n1) * n2 + b) += s1;
      m(i, a * n2 + (b + 1) % n2) += s2;
      m(i, a * n2 + (b + n2 - 1) % n2) += s2;
    }
  }
  return m;
}

/// Element-wise re-evaluation of the 1D micro-macro step from its defining
/// formulas. Half node j stands for x_{j+1/2}.
class KineticReference1D {
 public:
  KineticReference1D(const KineticState& s, const Grid1D& grid, const ModelParams& p)
      : s_(s), n_(grid.nx()), nv_(grid.nv()), dx_(grid.x.dx), dv_(grid.v.dv), p_(p) {
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double mass = 0.0;
    for (std::size_t k = 0; k < nv_; ++k) {
      v_.push_back(-grid.v.v_max + static_cast<double>(k) * dv_);
      psi0_.push_back(norm * std::exp(-0.5 * v_[k] * v_[k]));
      mass += dv_ * psi0_[k];
    }
    dh_ = 0.0;
    for (std::size_t k = 0; k < nv_; ++k) {
      psi0_[k] /= mass;
      dh_ += dv_ * v_[k] * v_[k] * psi0_[k];
    }
  }

  double dh() const { return dh_; }
  double v(std::size_t k) const { return v_[k]; }
  double psi0(std::size_t k) const { return psi0_[k]; }
  double phi(std::size_t k) const { return p_.A * v_[k] * psi0_[k]; }

  double rho(std::ptrdiff_t j) const { return s_.rho[wrap(j, n_)]; }
  double c(std::ptrdiff_t j) const { return s_.c[wrap(j, n_)]; }
  double g(std::size_t k, std::ptrdiff_t j) const { return s_.g(k, wrap(j, n_)); }
  double q(double r) const { return 1.0 - std::pow(r / p_.rho_bar, p_.gamma); }
  double dq(double r) const {
    return -p_.gamma * std::pow(r, p_.gamma - 1.0) / std::pow(p_.rho_bar, p_.gamma);
  }

  double rho_half(std::ptrdiff_t j) const { return 0.5 * (rho(j) + rho(j + 1)); }
  double q_half(std::ptrdiff_t j) const { return q(rho_half(j)); }
  double grad_rho(std::ptrdiff_t j) const { return (rho(j + 1) - rho(j)) / dx_; }
  double grad_c(std::ptrdiff_t j) const { return (c(j + 1) - c(j)) / dx_; }

  /// Upwind rho q(rho) at j+1/2 with rho^{n1} taken from `r1`.
  double upwind(const std::vector<double>& r1, std::ptrdiff_t j) const {
    const std::size_t l = wrap(j, n_);
    const std::size_t r = wrap(j + 1, n_);
    return grad_c(j) >= 0.0 ? r1[l] * std::max(q(rho(j + 1)), 0.0)
                            : r1[r] * std::max(q(rho(j)), 0.0);
  }

  /// rho q'(rho) times the centred gradient, at node j.
  double drift_node(std::ptrdiff_t j) const {
    return rho(j) * dq(rho(j)) * (rho(j + 1) - rho(j - 1)) / (2.0 * dx_);
  }
  double drift_half(std::ptrdiff_t j) const { return (drift_node(j + 1) - drift_node(j)) / dx_; }

  double K(std::size_t k, std::ptrdiff_t j) const {
    auto qg = [&](std::ptrdiff_t i) { return q_half(i) * g(k, i); };
    const double vp = std::max(v_[k], 0.0);
    const double vm = std::max(-v_[k], 0.0);
    return vp * (qg(j) - qg(j - 1)) / dx_ - vm * (qg(j + 1) - qg(j)) / dx_ +
           v_[k] * v_[k] * psi0_[k] * drift_half(j);
  }

  PhaseArray K_all() const {
    PhaseArray out(nv_, n_);
    for (std::size_t k = 0; k < nv_; ++k) {
      for (std::size_t j = 0; j < n_; ++j) out(k, j) = K(k, static_cast<std::ptrdiff_t>(j));
    }
    return out;
  }

  /// (1/dt + q/eps^2) g~ = g/dt - (I - Pi) K / eps + r0 g (1 - rho/rho_max)_+
  ///                       + (-v psi0 q grad rho + psi1 Phi^{n,n}) / eps^2
  PhaseArray g_tilde(double dt) const {
    const double eps = p_.epsilon;
    const auto k_all = K_all();
    std::vector<double> current(s_.rho.vector());
    PhaseArray out(nv_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      double mean_k = 0.0;
      for (std::size_t k = 0; k < nv_; ++k) mean_k += dv_ * k_all(k, j);
      const double qh = q_half(sj);
      const double lhs = 1.0 / dt + qh / (eps * eps);
      for (std::size_t k = 0; k < nv_; ++k) {
        const double rhs = g(k, sj) / dt - (k_all(k, j) - mean_k * psi0_[k]) / eps +
                           p_.r0 * g(k, sj) * std::max(1.0 - rho_half(sj) / p_.rho_max, 0.0) +
                           (-v_[k] * psi0_[k] * qh * grad_rho(sj) +
                            phi(k) * grad_c(sj) * upwind(current, sj)) /
                               (eps * eps);
        out(k, j) = rhs / lhs;
      }
    }
    return out;
  }

  /// Coefficients a, b of the density system at half node j.
  double coef_theta(std::ptrdiff_t j, double dt) const {
    const double qh = q_half(j);
    return qh * dt / (p_.epsilon * p_.epsilon + qh * dt);
  }
  double coef_a(std::ptrdiff_t j, double dt) const {
    return coef_theta(j, dt) * dh_ * q_half(j);
  }
  double coef_b(std::ptrdiff_t j, double dt) const {
    double eta = 0.0;
    for (std::size_t k = 0; k < nv_; ++k) eta += dv_ * v_[k] * phi(k) * grad_c(j);
    return coef_theta(j, dt) * eta;
  }

  /// Left side of the density equation applied to x (unscaled, per unit time).
  std::vector<double> density_operator(const std::vector<double>& x, double dt) const {
    std::vector<double> out(n_);
    auto xs = [&](std::ptrdiff_t i) { return x[wrap(i, n_)]; };
    auto face = [&](std::ptrdiff_t j) {
      const double rb = rho_half(j);
      const double dxr = (xs(j + 1) - xs(j)) / dx_;
      return -coef_a(j, dt) * dxr + coef_b(j, dt) * upwind(x, j) + dh_ * rb * dq(rb) * dxr;
    };
    for (std::size_t j = 0; j < n_; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      out[j] = x[j] / dt + (face(sj) - face(sj - 1)) / dx_;
    }
    return out;
  }

  Dense density_matrix(double dt) const {
    Dense m(n_);
    for (std::size_t col = 0; col < n_; ++col) {
      std::vector<double> e(n_, 0.0);
      e[col] = 1.0;
      const auto y = density_operator(e, dt);
      for (std::size_t row = 0; row < n_; ++row) m(row, col) = y[row];
    }
    return m;
  }

  std::vector<double> density_rhs(const PhaseArray& gt, double dt) const {
    std::vector<double> current(s_.rho.vector());
    std::vector<double> out(n_);
    auto transport = [&](std::ptrdiff_t j) {
      double s = 0.0;
      for (std::size_t k = 0; k < nv_; ++k) {
        s += dv_ * v_[k] * q_half(j) * gt(k, wrap(j, n_));
      }
      return s;
    };
    auto explicit_face = [&](std::ptrdiff_t j) {
      return -coef_a(j, dt) * grad_rho(j) + coef_b(j, dt) * upwind(current, j);
    };
    for (std::size_t j = 0; j < n_; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      const double r = rho(sj);
      out[j] = r / dt - (transport(sj) - transport(sj - 1)) / dx_ +
               p_.r0 * r * std::max(1.0 - r / p_.rho_max, 0.0) +
               (explicit_face(sj) - explicit_face(sj - 1)) / dx_;
    }
    return out;
  }

  PhaseArray recover(const PhaseArray& gt, const std::vector<double>& rho_new, double dt) const {
    const double eps2 = p_.epsilon * p_.epsilon;
    std::vector<double> current(s_.rho.vector());
    PhaseArray out(nv_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      const double qh = q_half(sj);
      const double factor = 1.0 / (eps2 * (1.0 / dt + qh / eps2));
      const double grad_new = (rho_new[wrap(sj + 1, n_)] - rho_new[j]) / dx_;
      for (std::size_t k = 0; k < nv_; ++k) {
        const double old_part = v_[k] * psi0_[k] * qh * grad_rho(sj) -
                                phi(k) * grad_c(sj) * upwind(current, sj);
        const double new_part = v_[k] * psi0_[k] * qh * grad_new -
                                phi(k) * grad_c(sj) * upwind(rho_new, sj);
        out(k, j) = gt(k, j) + factor * (old_part - new_part);
      }
    }
    return out;
  }

 private:
  const KineticState& s_;
  std::size_t n_, nv_;
  double dx_, dv_;
  ModelParams p_;
  std::vector<double> v_, psi0_;
  double dh_ = 0.0;
};

/// Macro matrix entries written out entry by entry:
///   m_jj     = 1 + dt [Dh (d_{j+1/2} + d_{j-1/2})/dx^2
///                       + ((eta_{j+1/2})_+ q_{j+1} + (eta_{j-1/2})_- q_{j-1})/dx]
///   m_{j,j+1} = -dt Dh d_{j+1/2}/dx^2 - dt (eta_{j+1/2})_- q_j / dx
///   m_{j,j-1} = -dt Dh d_{j-1/2}/dx^2 - dt (eta_{j-1/2})_+ q_j / dx
/// with q clipped at zero.
inline Dense macro_matrix_reference(const MacroState& s, const Grid1D& grid, const ModelParams& p,
                                    double dh, double v_phi, double dt) {
  const std::size_t n = grid.nx();
  const double dx = grid.x.dx;
  auto rho = [&](std::ptrdiff_t j) { return s.rho[wrap(j, n)]; };
  auto c = [&](std::ptrdiff_t j) { return s.c[wrap(j, n)]; };
  auto d_half = [&](std::ptrdiff_t j) { return mobility_d(0.5 * (rho(j) + rho(j + 1)), p); };
  auto eta = [&](std::ptrdiff_t j) { return v_phi * (c(j + 1) - c(j)) / dx; };
  auto pos = [](double x) { return std::max(x, 0.0); };
  auto neg = [](double x) { return std::max(-x, 0.0); };
  auto squeeze = [&](double r) { return pos(1.0 - std::pow(r / p.rho_bar, p.gamma)); };
  Dense m(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const std::size_t up = wrap(sj + 1, n);
    const std::size_t lo = wrap(sj - 1, n);
    m(j, j) += 1.0 + dt * (dh * (d_half(sj) + d_half(sj - 1)) / (dx * dx) +
                           (pos(eta(sj)) * squeeze(rho(sj + 1)) +
                            neg(eta(sj - 1)) * squeeze(rho(sj - 1))) / dx);
    m(j, up) += -dt * dh * d_half(sj) / (dx * dx) - dt * neg(eta(sj)) * squeeze(rho(sj)) / dx;
    m(j, lo) += -dt * dh * d_half(sj - 1) / (dx * dx) -
                dt * pos(eta(sj - 1)) * squeeze(rho(sj)) / dx;
  }
  return m;
}

}  // namespace apchemo::test
