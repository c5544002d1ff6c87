#include "apchemo/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apchemo/errors.hpp"

namespace apchemo {

const char* to_string(StepStage stage) noexcept {
  switch (stage) {
    case StepStage::g_tilde: return "g_tilde";
    case StepStage::density_solve: return "density_solve";
    case StepStage::g_recovery: return "g_recovery";
    case StepStage::chemo_solve: return "chemo_solve";
    case StepStage::macro_solve: return "macro_solve";
  }
  return "unknown";
}

void validate(const ModelParams& p) {
  auto require = [](bool ok, const char* field, const std::string& why) {
    if (!ok) throw InvalidArgument(std::string("model parameter ") + field + ": " + why);
  };
  require(std::isfinite(p.gamma) && p.gamma >= 1.0, "gamma", "must be >= 1");
  require(std::isfinite(p.rho_bar) && p.rho_bar > 0.0, "rho_bar", "must be > 0");
  require(std::isfinite(p.rho_max) && p.rho_max > 0.0, "rho_max", "must be > 0");
  require(p.rho_max <= p.rho_bar, "rho_max", "must not exceed rho_bar");
  require(std::isfinite(p.r0) && p.r0 >= 0.0, "r0", "must be >= 0");
  require(std::isfinite(p.A) && p.A >= 0.0, "A", "must be >= 0");
  require(std::isfinite(p.epsilon) && p.epsilon > 0.0, "epsilon", "must be > 0");
}

double squeeze(double rho, const ModelParams& p) {
  return 1.0 - std::pow(rho / p.rho_bar, p.gamma);
}

double upwind_squeeze(double rho, const ModelParams& p) {
  return std::max(squeeze(rho, p), 0.0);
}

double squeeze_derivative(double rho, const ModelParams& p) {
  if (p.gamma == 1.0) return -1.0 / p.rho_bar;
  return -p.gamma * std::pow(rho, p.gamma - 1.0) / std::pow(p.rho_bar, p.gamma);
}

double mobility_d(double rho, const ModelParams& p) {
  return 1.0 + (p.gamma - 1.0) * std::pow(rho / p.rho_bar, p.gamma);
}

double logistic_source(double rho, const ModelParams& p) {
  return p.r0 * rho * std::max(1.0 - rho / p.rho_max, 0.0);
}

}  // namespace apchemo
