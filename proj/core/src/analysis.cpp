#include "apchemo/analysis.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "apchemo/errors.hpp"
#include "fft.hpp"

namespace apchemo {

namespace {

constexpr std::size_t chebyshev_nodes = 256;

double entropy_scale(const VelocityKernels& kernels) {
  if (!(kernels.v_phi > 0.0)) {
    throw DomainError("entropy: undefined for zero chemotactic sensitivity");
  }
  return kernels.dh / kernels.v_phi;
}

// ln((1 - x^gamma)/(1 - x)) for x in [0, 1]
double log_ratio(double x, double gamma) {
  if (x <= 0.0) return 0.0;
  if (x == 1.0) return std::log(gamma);
  return std::log(std::expm1(gamma * std::log(x)) / (x - 1.0));
}

double clenshaw(std::span<const double> c, double u) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t m = c.size(); m-- > 1;) {
    const double b0 = 2.0 * u * b1 - b2 + c[m];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + c[0];
}

}  // namespace

double entropy_H(double rho, const ModelParams& p, const VelocityKernels& kernels) {
  if (!(rho > 0.0) || !(rho < p.rho_bar)) {
    throw DomainError("entropy_H: rho = " + std::to_string(rho) + " outside (0, rho_bar)");
  }
  return entropy_scale(kernels) * std::log(rho / squeeze(rho, p));
}

EntropyPhi::EntropyPhi(const ModelParams& p, const VelocityKernels& kernels)
    : gamma_(p.gamma), rho_bar_(p.rho_bar), scale_(entropy_scale(kernels)) {
  if (gamma_ == 1.0) return;  // the log ratio vanishes identically
  const std::size_t n = chebyshev_nodes;
  // integrand of J after x = t^2, sampled at first-kind Chebyshev points of [0, 1]
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) /
                              static_cast<double>(n));
    const double t = 0.5 * (1.0 + u);
    f[i] = 2.0 * t * log_ratio(t * t, gamma_);
  }
  std::vector<double> a(n + 2, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += f[i] * std::cos(std::numbers::pi * static_cast<double>(m) *
                           (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    }
    a[m] = 2.0 * s / static_cast<double>(n);
  }
  // term-by-term antiderivative in u, halved for dt = du / 2, zero at t = 0
  coeffs_.assign(n + 1, 0.0);
  double at_start = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    coeffs_[m] = 0.25 * (a[m - 1] - a[m + 1]) / static_cast<double>(m);
    at_start += (m % 2 ? -1.0 : 1.0) * coeffs_[m];
  }
  coeffs_[0] = -at_start;
}

double EntropyPhi::log_ratio_integral(double y) const {
  if (coeffs_.empty() || y <= 0.0) return 0.0;
  const double t = std::sqrt(std::min(y, 1.0));
  return clenshaw(coeffs_, 2.0 * t - 1.0);
}

double EntropyPhi::operator()(double rho) const {
  if (!(rho >= 0.0) || !(rho < rho_bar_)) {
    throw DomainError("entropy_Phi: rho = " + std::to_string(rho) + " outside [0, rho_bar)");
  }
  if (rho == 0.0) return 0.0;
  const double y = rho / rho_bar_;
  const double psi = rho * std::log(rho) + (rho_bar_ - rho) * std::log1p(-y) -
                     rho_bar_ * log_ratio_integral(y);
  return scale_ * psi;
}

double entropy_Phi(double rho, const ModelParams& p, const VelocityKernels& kernels) {
  using Key = std::tuple<double, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const EntropyPhi>> cache;
  const Key key{p.gamma, p.rho_bar, entropy_scale(kernels)};
  std::shared_ptr<const EntropyPhi> phi;
  {
    std::lock_guard lock(mutex);
    auto& slot = cache[key];
    if (!slot) slot = std::make_shared<const EntropyPhi>(p, kernels);
    phi = slot;
  }
  return (*phi)(rho);
}

EnergyRecord energy(const DensityField& rho, const ChemoField& c, const SpatialAxis& axis,
                    const EntropyPhi& phi) {
  if (rho.size() != axis.n || c.size() != axis.n) {
    throw InvalidArgument("energy: field size does not match grid");
  }
  EnergyRecord rec;
  double sum_phi = 0.0, sum_rc = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    sum_phi += phi(rho[j]);
    sum_rc += rho[j] * c[j];
  }
  rec.phi_integral = axis.dx * sum_phi;
  rec.interaction_integral = axis.dx * sum_rc;
  rec.E = rec.phi_integral - 0.5 * rec.interaction_integral;
  return rec;
}

EnergyRecord energy(const DensityField& rho, const ChemoField& c, const Grid1D& grid,
                    const ModelParams& p, const VelocityKernels& kernels) {
  return energy(rho, c, grid.x, EntropyPhi(p, kernels));
}

EnergyRecord energy(const DensityField& rho, const ChemoField& c, const Grid2D& grid,
                    const EntropyPhi& phi) {
  if (rho.size() != grid.nodes() || c.size() != grid.nodes()) {
    throw InvalidArgument("energy: field size does not match grid");
  }
  EnergyRecord rec;
  double sum_phi = 0.0, sum_rc = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    sum_phi += phi(rho[j]);
    sum_rc += rho[j] * c[j];
  }
  const double cell = grid.x1.dx * grid.x2.dx;
  rec.phi_integral = cell * sum_phi;
  rec.interaction_integral = cell * sum_rc;
  rec.E = rec.phi_integral - 0.5 * rec.interaction_integral;
  return rec;
}

double relative_l2_error(const DensityField& a, const DensityField& b) {
  if (a.size() != b.size()) throw InvalidArgument("relative_l2_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    num += d * d;
    den += a[j] * a[j];
  }
  if (!(den > 0.0)) throw InvalidArgument("relative_l2_error: reference has zero norm");
  return std::sqrt(num) / std::sqrt(den);
}

PatternReport pattern_wavenumber(const DensityField& rho, const SpatialAxis& axis) {
  const std::size_t n = rho.size();
  if (n < 4) throw InvalidArgument("pattern_wavenumber: need at least 4 nodes");
  if (n != axis.n) throw InvalidArgument("pattern_wavenumber: size does not match grid");
  detail::FftBuffers fft(1, n);
  std::copy(rho.values().begin(), rho.values().end(), fft.real());
  fft.forward();
  PatternReport rep;
  rep.spectrum.resize(fft.half());
  for (std::size_t m = 0; m < fft.half(); ++m) rep.spectrum[m] = std::abs(fft.spectrum(m));
  std::size_t best = 1;
  for (std::size_t m = 2; m < rep.spectrum.size(); ++m) {
    if (rep.spectrum[m] > rep.spectrum[best]) best = m;
  }
  rep.mode = best;
  rep.k_max = static_cast<double>(best) / axis.length();
  rep.inv_k_max = 1.0 / rep.k_max;
  rep.degenerate = rep.spectrum[best] < 1e-12 * rep.spectrum[0] || rep.spectrum[best] == 0.0;
  return rep;
}

double logistic_derivative(double rho_s, const ModelParams& p) {
  if (rho_s <= p.rho_max) return p.r0 * (1.0 - 2.0 * rho_s / p.rho_max);
  return 0.0;
}

double dispersion_growth_rate(double k, double rho_s, const ModelParams& p,
                              const VelocityKernels& kernels) {
  const double k2 = k * k;
  return -kernels.dh * mobility_d(rho_s, p) * k2 +
         kernels.v_phi * rho_s * squeeze(rho_s, p) * k2 / (1.0 + k2) +
         logistic_derivative(rho_s, p);
}

UnstableMode most_unstable_mode(double rho_s, const ModelParams& p,
                                const VelocityKernels& kernels) {
  const double diffusion = kernels.dh * mobility_d(rho_s, p);
  const double attraction = kernels.v_phi * rho_s * squeeze(rho_s, p);
  UnstableMode out;
  // lambda(s) = -D s + C s/(1+s) + L', s = k^2, stationary at (1+s)^2 = C/D
  if (attraction > diffusion && diffusion > 0.0) {
    const double s = std::sqrt(attraction / diffusion) - 1.0;
    out.k = std::sqrt(s);
  }
  out.growth = dispersion_growth_rate(out.k, rho_s, p, kernels);
  return out;
}

double critical_sensitivity(double rho_s, const ModelParams& p, const VelocityAxis& v_axis) {
  const double decay = logistic_derivative(rho_s, p);
  if (decay > 0.0) {
    throw DomainError("critical_sensitivity: rho_s is not a stable logistic state");
  }
  if (!(squeeze(rho_s, p) > 0.0) || !(rho_s > 0.0)) {
    throw DomainError("critical_sensitivity: rho_s outside (0, rho_bar)");
  }
  // the peak growth (sqrt C - sqrt D)^2 + L' changes sign where this does
  auto threshold = [&](double A) {
    ModelParams trial = p;
    trial.A = A;
    const auto k = build_kernels(v_axis, trial);
    const double c = k.v_phi * rho_s * squeeze(rho_s, p);
    const double d = k.dh * mobility_d(rho_s, p);
    return std::sqrt(c) - std::sqrt(d) - std::sqrt(-decay);
  };
  double hi = 1.0;
  while (threshold(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError("critical_sensitivity: no sign change", threshold(hi));
  }
  std::uintmax_t iterations = 200;
  const auto [lo_a, hi_a] = boost::math::tools::toms748_solve(
      threshold, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (lo_a + hi_a);
}

double convergence_order(std::span<const double> eps, std::span<const double> err) {
  if (eps.size() != err.size() || eps.size() < 2) {
    throw InvalidArgument("convergence_order: need at least two (eps, err) pairs");
  }
  const std::size_t n = eps.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(eps[i] > 0.0) || !(err[i] > 0.0)) {
      throw InvalidArgument("convergence_order: entries must be positive");
    }
    x[i] = std::log(eps[i]);
    y[i] = std::log(err[i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("convergence_order: eps values are all equal");
  return sxy / sxx;
}

}  // namespace apchemo
