#include "kgspec/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kgspec {

Channel Channel::make(int d, int l, int n) {
  if (d < 1) throw InvalidInput("dimension d must be >= 1");
  if (l < 0) throw InvalidInput("angular momentum l must be >= 0");
  if (n < 0) throw InvalidInput("node count n must be >= 0");
  if (d == 1 && l != 0) throw InvalidInput("l must be 0 when d = 1");
  return Channel{d, l, n};
}

std::string Channel::label() const {
  std::ostringstream os;
  os << "d=" << d << ",l=" << l << ",n=" << n;
  return os.str();
}

PhysicalContext::PhysicalContext(double m) : m_(m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidInput("mass m must be > 0");
}

void PhysicalContext::require_admissible(double E) const {
  if (!std::isfinite(E) || !admits(E)) {
    std::ostringstream os;
    os << "bound states require |E| < m (E=" << E << ", m=" << m_ << ")";
    throw InvalidInput(os.str());
  }
}

void SpectralCurve::check_ordered() const {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].E > points[i - 1].E)) {
      throw InvariantViolation("spectral curve energies are not strictly increasing");
    }
  }
}

double SpectralCurve::max_v() const {
  double best = 0.0;
  for (const auto& p : points) best = std::max(best, std::abs(p.v));
  return best;
}

double centrifugal_q(const Channel& channel) {
  if (channel.d == 1) return 0.0;
  const double s = 2.0 * channel.l + channel.d;
  return 0.25 * (s - 1.0) * (s - 3.0);
}

double asymptotic_k(double E, const PhysicalContext& ctx) {
  ctx.require_admissible(E);
  const double m = ctx.m();
  return std::sqrt((m - E) * (m + E));
}

int count_nodes(std::span<const double> phi) {
  int nodes = 0;
  int last_sign = 0;
  double running_max = 0.0;
  for (double value : phi) {
    const double a = std::abs(value);
    running_max = std::max(running_max, a);
    if (a <= kNodeZeroThreshold * running_max || a == 0.0) continue;
    const int sign = value > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return sum;
}

}  // namespace kgspec
