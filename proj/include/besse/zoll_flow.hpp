// Geodesic flow of the Tannery-Zoll spindle metrics
//
//   g = scale^2 * ( f(theta)^2 dtheta^2 + sin^2(theta) dphi^2 ),
//   f(theta) = (p+q)/2 + h(cos theta),
//
// with h odd, h(1) = (p-q)/2 and |h| < (p+q)/2 on [-1,1]. The completion is a
// Besse (p,q)-spindle. States are (theta, phi, theta', phi') in arclength.

#ifndef BESSE_ZOLL_FLOW_HPP_
#define BESSE_ZOLL_FLOW_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace besse {

inline constexpr double kPi = std::numbers::pi;

/// Default integrator tolerance (absolute and relative).
inline constexpr double kFlowTolerance = 1e-11;
/// Geodesics with |sin^2(theta) phi'| below this come too close to a pole.
inline constexpr double kClairautMin = 0.05;
/// sin(theta) below which the chart is considered singular.
inline constexpr double kPoleGuard = 1e-8;
/// Largest integration step per unit of metric scale.
inline constexpr double kMaxStep = 0.25;

struct SpindleMetric {
  int p = 1;
  int q = 1;
  /// h(u) = sum_j coeffs[j] * u^(2j+1)
  std::vector<double> coeffs;
  double scale = 1.0;

  double half_sum() const { return 0.5 * (p + q); }

  double h(double u) const {
    double u2 = u * u, pw = u, s = 0;
    for (double c : coeffs) {
      s += c * pw;
      pw *= u2;
    }
    return s;
  }
  double dh(double u) const {
    double u2 = u * u, pw = 1, s = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      s += (2.0 * j + 1) * coeffs[j] * pw;
      pw *= u2;
    }
    return s;
  }
  double f(double theta) const { return half_sum() + h(std::cos(theta)); }
  double df(double theta) const { return -std::sin(theta) * dh(std::cos(theta)); }
};

/// Builds the metric whose profile is ((p-q)/2) u plus
/// sum_k extra[k] * u^(2k+1) (1 - u^2); c1 absorbs the endpoint constraint.
inline SpindleMetric make_metric(int p, int q, const std::vector<double>& extra = {},
                                 double scale = 1.0) {
  if (p < 1 || q < 1)
    fail(Errc::InvalidArgument, "spindle orders must be >= 1");
  if (!(scale > 0))
    fail(Errc::InvalidArgument, "scale must be positive");
  SpindleMetric m{p, q, std::vector<double>(extra.size() + 1, 0.0), scale};
  for (std::size_t k = 0; k < extra.size(); ++k) {
    m.coeffs[k] += extra[k];
    m.coeffs[k + 1] -= extra[k];
  }
  double rest = 0;
  for (std::size_t j = 1; j < m.coeffs.size(); ++j)
    rest += m.coeffs[j];
  m.coeffs[0] = 0.5 * (p - q) - rest;
  while (m.coeffs.size() > 1 && m.coeffs.back() == 0.0)
    m.coeffs.pop_back();

  constexpr int kSamples = 20001;
  for (int i = 0; i < kSamples; ++i) {
    double u = -1.0 + 2.0 * i / (kSamples - 1);
    if (std::abs(m.h(u)) >= m.half_sum())
      fail(Errc::ProfileOutOfRange,
           "sup|h| must stay below (p+q)/2; h(" + std::to_string(u) +
               ") = " + std::to_string(m.h(u)));
  }
  return m;
}

struct GeodesicState {
  double theta = kPi / 2;
  double phi = 0;
  double theta_dot = 0;
  double phi_dot = 1;
};

using FlowVector = std::array<double, 4>;

inline FlowVector to_vector(const GeodesicState& s) {
  return {s.theta, s.phi, s.theta_dot, s.phi_dot};
}
inline GeodesicState to_state(const FlowVector& x) { return {x[0], x[1], x[2], x[3]}; }

/// Squared speed in the metric; 1 on unit-speed geodesics.
inline double energy(const SpindleMetric& m, const GeodesicState& s) {
  double f = m.f(s.theta), st = std::sin(s.theta);
  return m.scale * m.scale * (f * f * s.theta_dot * s.theta_dot + st * st * s.phi_dot * s.phi_dot);
}

inline double clairaut(const GeodesicState& s) {
  double st = std::sin(s.theta);
  return st * st * s.phi_dot;
}

inline GeodesicState geodesic_derivative(const SpindleMetric& m, const GeodesicState& s) {
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  if (std::abs(st) < kPoleGuard)
    fail(Errc::PoleSingular, "theta = " + std::to_string(s.theta));
  const double f = m.f(s.theta), df = m.df(s.theta);
  GeodesicState d;
  d.theta = s.theta_dot;
  d.phi = s.phi_dot;
  d.theta_dot = (st * ct * s.phi_dot * s.phi_dot - f * df * s.theta_dot * s.theta_dot) / (f * f);
  d.phi_dot = -2.0 * ct / st * s.theta_dot * s.phi_dot;
  return d;
}

/// Unit-speed state at `theta` whose velocity makes angle `alpha` with the
/// meridian direction d/dtheta.
inline GeodesicState unit_state(const SpindleMetric& m, double theta, double phi, double alpha) {
  return {theta, phi, std::cos(alpha) / (m.scale * m.f(theta)),
          std::sin(alpha) / (m.scale * std::sin(theta))};
}

inline GeodesicState equator_state(const SpindleMetric& m) {
  return unit_state(m, kPi / 2, 0.0, kPi / 2);
}

struct TrajectorySample {
  double s;
  GeodesicState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double clairaut = 0;
  double energy_drift = 0;
  double clairaut_drift = 0;
};

namespace detail {

inline void check_initial(const SpindleMetric& m, const GeodesicState& s0) {
  if (std::sin(s0.theta) < kPoleGuard)
    fail(Errc::PoleSingular, "initial theta outside (0, pi)");
  if (std::abs(energy(m, s0) - 1.0) > 1e-12)
    fail(Errc::InvalidArgument, "initial state is not unit speed");
  if (std::abs(clairaut(s0)) < kClairautMin)
    fail(Errc::PoleSingular, "Clairaut constant below the pole guard");
}

/// Dense-output Dormand-Prince integration of the flow.
class FlowRunner {
public:
  FlowRunner(const SpindleMetric& m, const GeodesicState& s0, double tol)
    : metric_(&m),
      stepper_(boost::numeric::odeint::make_dense_output(
          tol, tol, kMaxStep * m.scale, boost::numeric::odeint::runge_kutta_dopri5<FlowVector>())) {
    stepper_.initialize(to_vector(s0), 0.0, 1e-3);
  }

  void operator()(const FlowVector& x, FlowVector& dx, double) const {
    dx = to_vector(geodesic_derivative(*metric_, to_state(x)));
  }

  /// Advances one adaptive step; returns [s_old, s_new].
  std::pair<double, double> step() {
    auto span = stepper_.do_step(std::cref(*this));
    if (!(span.second > span.first) || !std::isfinite(span.second))
      fail(Errc::StepFailure, "no progress at s = " + std::to_string(span.first));
    return span;
  }

  FlowVector at(double s) {
    FlowVector x;
    stepper_.calc_state(s, x);
    return x;
  }
  const FlowVector& current() const { return stepper_.current_state(); }
  double current_s() const { return stepper_.current_time(); }

private:
  const SpindleMetric* metric_;
  boost::numeric::odeint::dense_output_runge_kutta<
      boost::numeric::odeint::controlled_runge_kutta<
          boost::numeric::odeint::runge_kutta_dopri5<FlowVector>>>
      stepper_;
};

inline double wrap_angle(double a) { return std::remainder(a, 2 * kPi); }

inline FlowVector phase_difference(const FlowVector& x, const FlowVector& x0) {
  return {x[0] - x0[0], wrap_angle(x[1] - x0[1]), x[2] - x0[2], x[3] - x0[3]};
}

} // namespace detail

/// Integrates to arclength `max_length`, sampling at every accepted step.
inline Trajectory integrate(const SpindleMetric& m, const GeodesicState& s0,
                            double max_length, double tol = kFlowTolerance) {
  detail::check_initial(m, s0);
  if (!(max_length > 0))
    fail(Errc::InvalidArgument, "max_length must be positive");
  Trajectory tr;
  tr.clairaut = clairaut(s0);
  tr.samples.push_back({0.0, s0});
  auto record = [&](double s, const FlowVector& x) {
    GeodesicState st = to_state(x);
    tr.energy_drift = std::max(tr.energy_drift, std::abs(energy(m, st) - 1.0));
    tr.clairaut_drift = std::max(tr.clairaut_drift, std::abs(clairaut(st) - tr.clairaut));
    tr.samples.push_back({s, st});
  };
  detail::FlowRunner run(m, s0, tol);
  while (run.current_s() < max_length) {
    auto [a, b] = run.step();
    if (b >= max_length) {
      record(max_length, run.at(max_length));
      break;
    }
    record(b, run.current());
  }
  return tr;
}

/// Phase-space distance with phi taken mod 2 pi.
inline double phase_distance(const GeodesicState& a, const GeodesicState& b) {
  auto d = detail::phase_difference(to_vector(a), to_vector(b));
  return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
}

/// First local minimum of the phase-space distance to s0 below tol_state,
/// located by bisection on the derivative of the squared distance.
inline std::optional<double> detect_closure(const SpindleMetric& m, const GeodesicState& s0,
                                            double tol_state, double search_length,
                                            double tol = kFlowTolerance) {
  detail::check_initial(m, s0);
  const FlowVector x0 = to_vector(s0);
  detail::FlowRunner run(m, s0, tol);
  auto slope = [&](double s) {
    FlowVector x = run.at(s);
    FlowVector dx;
    run(x, dx, s);
    auto d = detail::phase_difference(x, x0);
    return d[0] * dx[0] + d[1] * dx[1] + d[2] * dx[2] + d[3] * dx[3];
  };
  auto dist = [&](double s) { return phase_distance(to_state(run.at(s)), s0); };
  bool left_origin = false;
  while (run.current_s() < search_length) {
    auto [a, b] = run.step();
    const int pieces = std::max(4, static_cast<int>(std::ceil((b - a) / (0.05 * m.scale))));
    double prev_s = a, prev = slope(a);
    for (int i = 1; i <= pieces; ++i) {
      double s = a + (b - a) * i / pieces;
      double cur = slope(s);
      if (prev > 0 && cur <= 0)
        left_origin = true;
      if (left_origin && prev < 0 && cur >= 0) {
        auto [lo, hi] = boost::math::tools::bisect(
            slope, prev_s, s, [](double l, double r) { return r - l < 1e-10; });
        double s_min = 0.5 * (lo + hi);
        if (s_min <= search_length && dist(s_min) < tol_state)
          return s_min;
      }
      prev_s = s;
      prev = cur;
    }
  }
  return std::nullopt;
}

/// Area 2 pi scale^2 * integral_0^pi f(theta) sin(theta) dtheta.
inline double surface_area(const SpindleMetric& m, double quadrature_tol = 1e-12) {
  double err = 0;
  double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double t) { return m.f(t) * std::sin(t); }, 0.0, kPi, 15, quadrature_tol, &err);
  if (!(err <= quadrature_tol * std::max(1.0, std::abs(I))))
    fail(Errc::QuadratureFailure, "error estimate " + std::to_string(err));
  return 2 * kPi * m.scale * m.scale * I;
}

// ---------------------------------------------------------------------------
// Period ratio reports

struct PeriodSample {
  GeodesicState initial;
  bool equator = false;
  std::optional<double> period{};
  long long ratio = 0;
  double residual = 0;
  double energy_drift = 0;
  double clairaut_drift = 0;
  std::string error{};
};

struct PeriodReport {
  SpindleMetric metric;
  std::vector<PeriodSample> samples;  // generic samples, then the equator
  double t_reg = 0;
  double area = 0;

  bool all_closed() const {
    return std::all_of(samples.begin(), samples.end(),
                       [](const PeriodSample& s) { return s.period.has_value(); });
  }
  bool all_integral(double max_residual = 1e-4) const {
    return std::all_of(samples.begin(), samples.end(), [&](const PeriodSample& s) {
      return s.period && s.residual < max_residual;
    });
  }
  const PeriodSample& equator() const { return samples.back(); }
  double max_energy_drift() const {
    double d = 0;
    for (const auto& s : samples)
      d = std::max(d, s.energy_drift);
    return d;
  }
  double max_clairaut_drift() const {
    double d = 0;
    for (const auto& s : samples)
      d = std::max(d, s.clairaut_drift);
    return d;
  }
  /// Distinct ratios observed on closed samples.
  std::vector<long long> ratios() const {
    std::vector<long long> r;
    for (const auto& s : samples)
      if (s.period)
        r.push_back(s.ratio);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }
};

struct ReportOptions {
  int n_samples = 20;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double tol = kFlowTolerance;
  double tol_state = 1e-6;
  /// Arclength searched for closure; <= 0 selects 2 pi (p+q) scale plus margin.
  double search_length = 0;
};

/// Initial conditions with theta0 uniform in [pi/4, 3pi/4] and direction
/// angle uniform, resampled while |c| < kClairautMin.
inline std::vector<GeodesicState> sample_initial_states(const SpindleMetric& m, int n,
                                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta_dist(kPi / 4, 3 * kPi / 4);
  std::uniform_real_distribution<double> angle_dist(0.0, 2 * kPi);
  std::vector<GeodesicState> out;
  while (static_cast<int>(out.size()) < n) {
    double theta = theta_dist(rng), phi = angle_dist(rng), alpha = angle_dist(rng);
    GeodesicState s = unit_state(m, theta, phi, alpha);
    if (std::abs(clairaut(s)) >= 2 * kClairautMin)
      out.push_back(s);
  }
  return out;
}

inline PeriodReport period_ratio_report(const SpindleMetric& m, const ReportOptions& opt = {}) {
  if (opt.n_samples < 1)
    fail(Errc::InvalidArgument, "n_samples must be >= 1");
  PeriodReport rep;
  rep.metric = m;
  for (const auto& s : sample_initial_states(m, opt.n_samples, opt.seed))
    rep.samples.push_back({.initial = s});
  rep.samples.push_back({.initial = equator_state(m), .equator = true});

  const double search = opt.search_length > 0
                            ? opt.search_length
                            : m.scale * (2 * kPi * (m.p + m.q) + 1.0);
  auto work = [&](std::size_t i) {
    PeriodSample& ps = rep.samples[i];
    try {
      ps.period = detect_closure(m, ps.initial, opt.tol_state, search, opt.tol);
      double len = ps.period ? *ps.period : search;
      Trajectory tr = integrate(m, ps.initial, len, opt.tol);
      ps.energy_drift = tr.energy_drift;
      ps.clairaut_drift = tr.clairaut_drift;
    } catch (const Error& e) {
      ps.period.reset();
      ps.error = e.what();
    }
  };
  const unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < rep.samples.size(); ++i)
      work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < rep.samples.size(); i += threads)
          work(i);
      });
    for (auto& th : pool)
      th.join();
  }

  // modal period among clusters agreeing to 1e-6 relative; ties favor the longer
  std::vector<std::pair<double, int>> clusters;
  for (const auto& s : rep.samples) {
    if (!s.period)
      continue;
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const auto& c) {
      return std::abs(c.first - *s.period) < 1e-6 * c.first;
    });
    if (it == clusters.end())
      clusters.push_back({*s.period, 1});
    else
      ++it->second;
  }
  int best = 0;
  for (const auto& c : clusters)
    if (c.second > best || (c.second == best && c.first > rep.t_reg)) {
      best = c.second;
      rep.t_reg = c.first;
    }
  for (auto& s : rep.samples) {
    if (!s.period)
      continue;
    double r = rep.t_reg / *s.period;
    s.ratio = std::llround(r);
    s.residual = std::abs(r - static_cast<double>(s.ratio));
  }
  rep.area = surface_area(m);
  return rep;
}

inline nlohmann::ordered_json to_json(const PeriodReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["p"] = rep.metric.p;
  j["q"] = rep.metric.q;
  j["h_coeffs"] = rep.metric.coeffs;
  j["scale"] = rep.metric.scale;
  j["T_reg"] = rep.t_reg;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : rep.samples) {
    nlohmann::ordered_json e;
    e["equator"] = s.equator;
    e["theta0"] = s.initial.theta;
    e["c"] = clairaut(s.initial);
    if (s.period) {
      e["period"] = *s.period;
      e["ratio"] = s.ratio;
      e["residual"] = s.residual;
    } else {
      e["period"] = nullptr;
      e["ratio"] = nullptr;
      e["residual"] = nullptr;
    }
    e["energy_drift"] = s.energy_drift;
    e["clairaut_drift"] = s.clairaut_drift;
    if (!s.error.empty())
      e["error"] = s.error;
    arr.push_back(e);
  }
  j["samples"] = arr;
  j["area"] = rep.area;
  return j;
}

inline std::string trajectory_csv(const SpindleMetric& m, const Trajectory& tr) {
  std::ostringstream os;
  os.precision(17);
  os << "s,theta,phi,theta_dot,phi_dot,E,c\n";
  for (const auto& [s, st] : tr.samples)
    os << s << ',' << st.theta << ',' << st.phi << ',' << st.theta_dot << ','
       << st.phi_dot << ',' << energy(m, st) << ',' << clairaut(st) << '\n';
  return os.str();
}

} // namespace besse

#endif
