#include "kgspec/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace kgspec::specfun {

namespace {

bool is_integer(double x) { return x == std::round(x); }

// J_{mu+1}(z) / J_mu(z) from the backward ratio recurrence, started far
// above the turning point where J_{k+1}/J_k ~ z / (2(k+1)).
double j_ratio(double mu, double z) {
  const int steps = 40 + static_cast<int>(std::ceil(z + 4.0 * std::cbrt(z)));
  double k = mu + steps;
  double rho = z / (2.0 * (k + 1.0));
  for (int i = 0; i < steps; ++i) {
    rho = 1.0 / (2.0 * k / z - rho);
    k -= 1.0;
  }
  return rho;
}

// sqrt(pi z / 2) J_mu(z) by Miller's algorithm.
double miller_value(double mu, double z) {
  const bool half = !is_integer(mu);
  const int top = static_cast<int>(std::ceil(mu + z)) + 40 + static_cast<int>(4.0 * std::cbrt(z));
  double hi = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double at_mu = 0.0;
  double sum = 0.0;  // J_0 + 2 sum J_{2j}, integer orders
  double lowest_pair[2] = {0.0, 0.0};  // J_{1/2}, J_{-1/2}, half-integer orders
  const double bottom = half ? -0.5 : 0.0;
  for (double k = (half ? top + 0.5 : top); ; k -= 1.0) {
    if (std::abs(k - mu) < 0.25) at_mu = cur;
    if (!half) {
      const long ik = std::lround(k);
      if (ik % 2 == 0) sum += (ik == 0 ? 1.0 : 2.0) * cur;
    } else if (std::abs(k - 0.5) < 0.25) {
      lowest_pair[0] = cur;
    }
    if (k - bottom < 0.25) {
      if (half) lowest_pair[1] = cur;
      break;
    }
    const double next = (2.0 * k / z) * cur - hi;
    hi = cur;
    cur = next;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      hi *= 1e-250;
      at_mu *= 1e-250;
      sum *= 1e-250;
      lowest_pair[0] *= 1e-250;
    }
  }
  const double pre = std::sqrt(std::numbers::pi * z / 2.0);
  if (!half) return pre * at_mu / sum;
  // sqrt(pi z / 2) J_{1/2} = sin z and sqrt(pi z / 2) J_{-1/2} = cos z.
  const double s = std::sin(z), c = std::cos(z);
  if (std::abs(s) >= std::abs(c)) return s * at_mu / lowest_pair[0];
  return c * at_mu / lowest_pair[1];
}

struct ZeroCache {
  std::mutex lock;
  std::map<double, std::vector<double>> zeros;
};

ZeroCache& zero_cache() {
  static ZeroCache cache;
  return cache;
}

}  // namespace

Order Order::make(double nu) {
  if (!std::isfinite(nu) || !is_integer(2.0 * nu) || nu < -1.0) {
    throw InvalidInput("Riccati-Bessel order must satisfy 2 nu integral and nu >= -1");
  }
  return Order{nu};
}

Order Order::for_channel(const Channel& channel) {
  if (channel.one_dimensional()) return Order{channel.even_parity() ? -1.0 : 0.0};
  return Order{0.5 * (2 * channel.l + channel.d - 3)};
}

bool Order::elementary() const { return !is_integer(mu()); }

double riccati_interior_logderiv(Order order, double z) {
  if (!(z > 0.0)) throw InvalidInput("interior log-derivative needs z > 0");
  const double mu = order.mu();
  return (0.5 + mu) / z - j_ratio(mu, z);
}

double riccati_exterior_logderiv(Order order, double y) {
  if (!(y > 0.0)) throw InvalidInput("exterior log-derivative needs y > 0");
  const double mu = order.mu();
  // rho_k = K_{k+1} / K_k, raised with rho_{k+1} = 1 / rho_k + 2 (k + 1) / y.
  double k = order.elementary() ? -0.5 : 0.0;
  double rho = order.elementary() ? 1.0 : bessel_k1_over_k0(y);
  while (k < mu - 0.25) {
    rho = 1.0 / rho + 2.0 * (k + 1.0) / y;
    k += 1.0;
  }
  return (0.5 + mu) / y - rho;
}

double riccati_interior_value(Order order, double z) {
  if (!(z >= 0.0)) throw InvalidInput("interior value needs z >= 0");
  if (z == 0.0) return order.nu == -1.0 ? 1.0 : 0.0;
  return miller_value(order.mu(), z);
}

double interior_zero(Order order, int k) {
  if (k < 0) throw InvalidInput("zero index must be >= 0");
  if (k == 0) return 0.0;
  auto& cache = zero_cache();
  std::lock_guard<std::mutex> guard(cache.lock);
  auto& zeros = cache.zeros[order.nu];
  // Zeros of J_mu are at least ~2.4 apart, so a 0.1 scan cannot skip one.
  constexpr double kScanStep = 0.1;
  double a = zeros.empty() ? 1e-3 : zeros.back() + 1e-6;
  double fa = riccati_interior_value(order, a);
  while (static_cast<int>(zeros.size()) < k) {
    const double b = a + kScanStep;
    const double fb = riccati_interior_value(order, b);
    if (fa == 0.0) {
      zeros.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = riccati_interior_value(order, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros[static_cast<std::size_t>(k - 1)];
}

double bessel_k1_over_k0(double y) {
  if (!(y > 0.0)) throw InvalidInput("K1/K0 needs y > 0");
  constexpr double kEps = 1e-17;
  if (y <= 2.0) {
    const double euler = std::numbers::egamma;
    const double x2 = 0.25 * y * y;
    const double lg = std::log(0.5 * y);
    // K0 = -(ln(y/2) + gamma) I0 + sum (y^2/4)^k H_k / (k!)^2
    // K1 = 1/y + ln(y/2) I1 - (y/4) sum [psi(k+1) + psi(k+2)] (y^2/4)^k / (k! (k+1)!)
    double term0 = 1.0;  // (y^2/4)^k / (k!)^2
    double i0 = 1.0, k0_sum = 0.0;
    double term1 = 1.0;  // (y^2/4)^k / (k! (k+1)!)
    double i1 = 0.5 * y, k1_sum = 2.0 * (-euler) + 1.0;
    double harmonic = 0.0;
    for (int k = 1; k < 60; ++k) {
      term0 *= x2 / (static_cast<double>(k) * k);
      term1 *= x2 / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
      i0 += term0;
      k0_sum += term0 * harmonic;
      i1 += 0.5 * y * term1;
      const double psi_sum = 2.0 * (-euler + harmonic) + 1.0 / (k + 1);
      k1_sum += psi_sum * term1;
      if (term0 < kEps * i0 && term1 < kEps) break;
    }
    const double k0 = -(lg + euler) * i0 + k0_sum;
    const double k1 = 1.0 / y + lg * i1 - 0.25 * y * k1_sum;
    return k1 / k0;
  }
  // Steed's algorithm for the continued fraction CF2 at order 0.
  const double a1 = 0.25;
  double b = 2.0 * (1.0 + y);
  double d = 1.0 / b;
  double delh = d;
  double h = d;
  double a = -a1;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    if (std::abs(delh) < kEps * std::abs(h)) break;
  }
  h *= a1;
  return (y + 0.5 - h) / y;
}

}  // namespace kgspec::specfun
