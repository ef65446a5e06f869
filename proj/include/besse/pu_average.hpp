// Rotation averaging of conformal factors on the round sphere.
//
// For a metric phi * g_round with phi even, the averaged factor
// bar_phi = (mean_R sqrt(phi o R))^2 over a sample of rotations never has
// larger area: pointwise, (mean a_R)^2 <= mean a_R^2.

#ifndef BESSE_PU_AVERAGE_HPP_
#define BESSE_PU_AVERAGE_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "errors.hpp"
#include "point_group.hpp"

namespace besse {

using ConformalFactor = std::function<double(const Vec3&)>;

struct PuResult {
  double area_before = 0;
  double area_after = 0;
  bool inequality_holds = false;
  double margin() const { return area_before - area_after; }
};

/// Product rule on S^2: Gauss-Legendre in z = cos(theta), uniform in phi.
struct SphereQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

inline const SphereQuadrature& sphere_quadrature() {
  static const SphereQuadrature rule = [] {
    constexpr int kNz = 128, kNphi = 256;
    using GL = boost::math::quadrature::gauss<double, kNz>;
    std::vector<double> z, w;
    // only the non-negative half of the nodes is tabulated
    const auto& a = GL::abscissa();
    const auto& wt = GL::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      z.push_back(a[i]);
      w.push_back(wt[i]);
      if (a[i] != 0.0) {
        z.push_back(-a[i]);
        w.push_back(wt[i]);
      }
    }
    SphereQuadrature r;
    for (std::size_t i = 0; i < z.size(); ++i) {
      double s = std::sqrt(1 - z[i] * z[i]);
      for (int j = 0; j < kNphi; ++j) {
        double ph = 2 * std::numbers::pi * (j + 0.5) / kNphi;
        r.points.push_back({s * std::cos(ph), s * std::sin(ph), z[i]});
        r.weights.push_back(w[i] * 2 * std::numbers::pi / kNphi);
      }
    }
    return r;
  }();
  return rule;
}

/// Haar-uniform rotation from a uniformly random unit quaternion.
inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  double w = n01(rng), x = n01(rng), y = n01(rng), z = n01(rng);
  double r = std::sqrt(w * w + x * x + y * y + z * z);
  w /= r, x /= r, y /= r, z /= r;
  return Mat3::from_rows({1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
                          2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
                          2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)});
}

/// Icosahedral rotations followed by `n_random` Haar-random rotations.
inline std::vector<Mat3> averaging_rotations(int n_random, std::uint64_t seed) {
  std::vector<Mat3> rots = group_from_label({PointGroupFamily::I}).elements();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n_random; ++i)
    rots.push_back(random_rotation(rng));
  return rots;
}

inline PuResult pu_average_check(const ConformalFactor& phi, int n_group_samples = 200,
                                 std::uint64_t seed = 1, double tol = 1e-12) {
  const auto& rule = sphere_quadrature();
  for (const Vec3& x : rule.points) {
    double a = phi(x), b = phi({-x[0], -x[1], -x[2]});
    if (!(a > 0))
      fail(Errc::NotPositive, "conformal factor must be positive");
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
      fail(Errc::NotEven, "conformal factor must be antipodally even");
  }
  const auto rots = averaging_rotations(n_group_samples, seed);
  PuResult r;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Vec3& x = rule.points[i];
    double mean = 0;
    for (const Mat3& R : rots)
      mean += std::sqrt(phi(R * x));
    mean /= static_cast<double>(rots.size());
    r.area_before += rule.weights[i] * phi(x);
    r.area_after += rule.weights[i] * mean * mean;
  }
  r.inequality_holds = r.area_after <= r.area_before + tol * r.area_before;
  return r;
}

/// exp(x^T A x + b (v.x)^4) with A symmetric, entries and b drawn from `seed`;
/// even and positive by construction.
inline ConformalFactor random_even_factor(std::uint64_t seed, double amplitude = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::array<double, 6> a;
  for (double& x : a)
    x = u(rng);
  Vec3 v = normalized({u(rng), u(rng), u(rng) + 1e-3});
  double b = u(rng);
  return [a, v, b](const Vec3& x) {
    double quad = a[0] * x[0] * x[0] + a[1] * x[1] * x[1] + a[2] * x[2] * x[2] +
                  2 * (a[3] * x[0] * x[1] + a[4] * x[0] * x[2] + a[5] * x[1] * x[2]);
    double t = dot(v, x);
    return std::exp(quad + b * t * t * t * t);
  };
}

} // namespace besse

#endif
