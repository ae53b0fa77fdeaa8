#include "lmg/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmg {

namespace {

void require_gamma(double gamma) {
  if (!(std::abs(gamma) < 1.0)) {
    throw std::invalid_argument("closed-form branch needs |gamma| < 1, got " +
                                std::to_string(gamma));
  }
}

}  // namespace

Phase phase_of(double h) { return h >= 1.0 ? Phase::Symmetric : Phase::Broken; }

const char* to_string(Phase p) { return p == Phase::Symmetric ? "symmetric" : "broken"; }

double chi_symmetric(double gamma, double h) {
  require_gamma(gamma);
  if (!(h > 1.0)) {
    throw std::invalid_argument("chi_symmetric needs h > 1 (singular at h = 1), got " +
                                std::to_string(h));
  }
  const double a = h - 1.0;
  const double b = h - gamma;
  const double c = 1.0 - gamma;
  return c * c / (32.0 * a * a * b * b);
}

BrokenChi chi_broken(double gamma, double h, int n_spins) {
  require_gamma(gamma);
  if (!(h >= 0.0) || !(h < 1.0)) {
    throw std::invalid_argument("chi_broken needs 0 <= h < 1 (singular at h = 1), got " +
                                std::to_string(h));
  }
  if (n_spins < 1) throw std::invalid_argument("chi_broken: n_spins must be >= 1");
  BrokenChi out;
  const double one_m_h2 = (1.0 - h) * (1.0 + h);
  const double one_m_g = 1.0 - gamma;
  out.leading = static_cast<double>(n_spins) / (4.0 * std::sqrt(one_m_h2 * one_m_g));
  const double num = h * h * (h * h - gamma) * (h * h - gamma);
  out.subleading = num / (32.0 * one_m_g * one_m_g * one_m_h2 * one_m_h2);
  return out;
}

double hp_gap(double gamma, double h) {
  require_gamma(gamma);
  if (!(h >= 0.0)) {
    throw std::invalid_argument("hp_gap needs h >= 0, got " + std::to_string(h));
  }
  if (h >= 1.0) return 2.0 * std::sqrt((h - 1.0) * (h - gamma));
  return 2.0 * std::sqrt((1.0 - h) * (1.0 + h) * (1.0 - gamma));
}

double hp_ground_energy(double gamma, double h, int n_spins) {
  require_gamma(gamma);
  if (!(h >= 0.0)) {
    throw std::invalid_argument("hp_ground_energy needs h >= 0, got " + std::to_string(h));
  }
  if (n_spins < 1) throw std::invalid_argument("hp_ground_energy: n_spins must be >= 1");
  const double n = static_cast<double>(n_spins);
  if (h >= 1.0) {
    // The +(1+gamma)/2 constant comes from normal-ordering the isotropic
    // ladder term; it also makes the two branches agree at h = 1.
    return -h * (n + 1.0) + 0.5 * (1.0 + gamma) + std::sqrt((h - 1.0) * (h - gamma));
  }
  return -0.5 * n * (1.0 + h * h) - 0.5 * (1.0 - gamma) +
         std::sqrt((1.0 - h) * (1.0 + h) * (1.0 - gamma));
}

double bogoliubov_angle(double gamma, double h) {
  if (!(std::abs(gamma) <= 1.0)) {
    throw std::invalid_argument("bogoliubov_angle needs |gamma| <= 1, got " +
                                std::to_string(gamma));
  }
  if (!(h > 1.0)) {
    throw std::invalid_argument("bogoliubov_angle needs h > 1 (argument hits 1 at h = 1), got " +
                                std::to_string(h));
  }
  return std::atanh((1.0 - gamma) / (2.0 * h - 1.0 - gamma));
}

double alpha_exponent(Phase p) { return p == Phase::Symmetric ? 2.0 : 0.5; }

}  // namespace lmg
