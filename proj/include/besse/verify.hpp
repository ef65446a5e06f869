// Cross-oracle invariant suites. Each returns the list of failed checks;
// an empty list means the suite passed.

#ifndef BESSE_VERIFY_HPP_
#define BESSE_VERIFY_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "orbifold.hpp"
#include "point_group.hpp"
#include "pu_average.hpp"
#include "seifert.hpp"
#include "zoll_flow.hpp"

namespace besse {

using Failures = std::vector<std::string>;

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"lens", "seifert", "groups", "classifier",
                                                 "flow", "pu", "all"};
  return names;
}

namespace detail {

inline void expect(Failures& out, bool ok, const std::string& what) {
  if (!ok)
    out.push_back(what);
}

template <class F>
void guarded(Failures& out, const std::string& what, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.push_back(what + ": " + e.what());
  }
}

} // namespace detail

/// Unit tangent bundles of spindles are L(p+q,1), via the gluing algebra.
inline Failures verify_lens(int max_pq = 50) {
  Failures out;
  for (int p = 1; p <= max_pq; ++p)
    for (int q = 1; q <= max_pq; ++q)
      detail::guarded(out, "lens p=" + std::to_string(p) + " q=" + std::to_string(q), [&] {
        LensSpace m = unit_tangent_bundle_spindle(p, q);
        detail::expect(out, m == lens_normalize(p + q, 1),
                       "T1 S2(" + std::to_string(p) + "," + std::to_string(q) + ") = " + m.str());
        detail::expect(out, lens_equivalent({p + q, -1}, {p + q, 1}),
                       "L(" + std::to_string(p + q) + ",-1) not equivalent to L(n,1)");
      });
  return out;
}

/// Circle fiberings of L(r,1) over S2(k,k): exactly k = 1, r/2, r (odd r).
inline Failures verify_seifert(int max_r = 100) {
  Failures out;
  for (long long r = 2; r <= max_r; ++r)
    for (long long k = 1; k <= r + 1; ++k) {
      const bool expected = k == 1 || (r % 2 == 0 && k == r / 2) || (r % 2 == 1 && k == r);
      const std::string tag = "r=" + std::to_string(r) + " k=" + std::to_string(k);
      try {
        FiberingCase c = solve_gluing_constraints(r, k);
        detail::expect(out, expected, tag + ": unexpected solution");
        SeifertInvariants inv = seifert_invariants_of_case(c);
        if (k % 2 == 0)
          detail::expect(out, r % 4 == 0, tag + ": even k needs 4 | r");
        // lens order of the fibered space
        long long order = inv.pairs.size() == 1
                              ? std::abs(inv.pairs[0].beta)
                              : std::abs(inv.pairs[0].alpha * inv.pairs[1].beta +
                                         inv.pairs[1].alpha * inv.pairs[0].beta);
        detail::expect(out, order == r, tag + ": " + inv.str() + " has lens order " +
                                             std::to_string(order));
        detail::expect(out, SeifertInvariants::parse(inv.str()) == inv, tag + ": round trip");
      } catch (const Error& e) {
        detail::expect(out, !expected && e.code() == Errc::Incompatible, tag + ": " + e.what());
      }
    }
  return out;
}

/// Every Schoenflies group with parameter <= max_n (S_2m for m <= max_n).
inline std::vector<SchoenfliesLabel> all_group_labels(int max_n) {
  using F = PointGroupFamily;
  std::vector<SchoenfliesLabel> labels;
  for (F f : {F::C, F::S, F::Ch, F::Cv, F::D, F::Dd, F::Dh})
    for (int n = 1; n <= max_n; ++n)
      labels.push_back({f, f == F::S ? 2 * n : n});
  for (F f : {F::T, F::Td, F::Th, F::O, F::Oh, F::I, F::Ih})
    labels.push_back({f});
  return labels;
}

inline Failures verify_groups(int max_n = 12) {
  Failures out;
  for (const auto& lbl : all_group_labels(max_n))
    detail::guarded(out, lbl.str(), [&] {
      const std::string tag = lbl.str();
      PointGroup g = group_from_label(lbl);
      detail::expect(out, g.order() == lbl.order(), tag + ": order");
      detail::expect(out, g.label() == lbl.canonical(), tag + ": identified as " + g.label().str());
      OrbifoldSignature o = quotient_signature(g);
      detail::expect(out, o == catalog_signature(lbl), tag + ": quotient " + o.str());
      detail::expect(out, euler_characteristic(o) == Rational(2, g.order()),
                     tag + ": chi(S2/G) != 2/|G|");
      PointGroup twist = det_twist(g), ext = extend_with_inversion(g);
      detail::expect(out, twist.is_orientation_preserving(), tag + ": G^x not in SO(3)");
      detail::expect(out, ext.contains_inversion(), tag + ": G* lacks -1");
      Classification by_group = classify_from_group(g);
      Classification by_sig = classify(o);
      detail::expect(out, by_group.orbifolds == by_sig.orbifolds,
                     tag + ": group route " + by_group.orbifolds.oriented.str() + " " +
                         by_group.orbifolds.non_oriented.str() + " vs " +
                         by_sig.orbifolds.oriented.str() + " " +
                         by_sig.orbifolds.non_oriented.str());
    });
  return out;
}

/// Structural identities over all admissible signatures with orders <= max_order.
inline Failures verify_classifier(int max_order = 12) {
  Failures out;
  for (const auto& e : enumerate_besse_signatures(max_order))
    detail::guarded(out, e.signature.str(), [&] {
      const std::string tag = e.signature.str();
      Classification c = classify(e.signature);
      const auto& og = c.orbifolds.oriented;
      const auto& ogi = c.orbifolds.non_oriented;
      detail::expect(out, og.base() == BaseSurface::Sphere, tag + ": O_g not a sphere");
      detail::expect(out, euler_characteristic(og) == 2 * euler_characteristic(ogi),
                     tag + ": chi(O_g) != 2 chi(O_g/i)");
      detail::expect(out, (ogi.base() == BaseSurface::Disk) == self_inverse_exists(e.signature),
                     tag + ": boundary of O_g/i vs self-inverse geodesics");
      detail::expect(out, c.spectrum.has_self_inverse_regular() == self_inverse_exists(e.signature),
                     tag + ": 1_inf flag");
      detail::expect(out, orientation_double_cover(ogi) == og, tag + ": O_g is not the double of O_g/i");
      if (e.signature.base() != BaseSurface::Sphere)
        detail::expect(out,
                       euler_characteristic(orientation_double_cover(e.signature)) ==
                           2 * euler_characteristic(e.signature),
                       tag + ": double cover multiplicativity");
      detail::expect(out, PeriodSpectrum::parse(c.spectrum.str()) == c.spectrum,
                     tag + ": spectrum round trip");
    });
  for (const auto& t : table_entries(12, 25))
    if (t.group)
      detail::guarded(out, t.group->str(), [&] {
        OrbifoldSignature o = quotient_signature(group_from_label(*t.group));
        detail::expect(out, o == t.signature,
                       t.group_column() + ": S2/G = " + o.str() + ", row has " + t.signature.str());
      });
  return out;
}

inline int spindle_kappa(int p, int q) { return (p + q) % 2 == 0 ? 2 : 1; }

/// Closure, integral ratios and ratio containment for one metric.
inline void check_period_report(Failures& out, const PeriodReport& rep, const std::string& tag) {
  const int p = rep.metric.p, q = rep.metric.q;
  detail::expect(out, rep.all_closed(), tag + ": some geodesic did not close");
  detail::expect(out, rep.all_integral(), tag + ": non-integral period ratio");
  detail::expect(out, rep.equator().ratio == (p + q) / spindle_kappa(p, q),
                 tag + ": equator ratio " + std::to_string(rep.equator().ratio));
  auto orders = classify(OrbifoldSignature::sphere({p, q})).spectrum.orders();
  for (long long r : rep.ratios())
    detail::expect(out, r == 1 || std::count(orders.begin(), orders.end(), r) > 0,
                   tag + ": ratio " + std::to_string(r) + " outside the spectrum");
  detail::expect(out, rep.max_energy_drift() < 1e-9, tag + ": energy drift");
  detail::expect(out, rep.max_clairaut_drift() < 1e-9, tag + ": Clairaut drift");
  const double area = 2 * kPi * (p + q) * rep.metric.scale * rep.metric.scale;
  detail::expect(out, std::abs(rep.area - area) < 1e-8 * area, tag + ": area");
}

inline const std::vector<std::pair<int, int>>& flow_test_spindles() {
  static const std::vector<std::pair<int, int>> pq = {{1, 1}, {2, 1}, {3, 1},
                                                      {2, 2}, {3, 2}, {5, 3}};
  return pq;
}

inline Failures verify_flow(int n_samples = 8, unsigned threads = 1) {
  Failures out;
  for (auto [p, q] : flow_test_spindles())
    for (double eps : {0.0, 0.2}) {
      const std::string tag = "flow (" + std::to_string(p) + "," + std::to_string(q) +
                              ") eps=" + std::to_string(eps);
      detail::guarded(out, tag, [&] {
        SpindleMetric m = make_metric(p, q, eps == 0.0 ? std::vector<double>{} : std::vector<double>{eps});
        ReportOptions opt;
        opt.n_samples = n_samples;
        opt.threads = threads;
        check_period_report(out, period_ratio_report(m, opt), tag);
      });
    }
  return out;
}

inline Failures verify_pu(int n_factors = 3) {
  Failures out;
  detail::guarded(out, "pu constant", [&] {
    PuResult r = pu_average_check([](const Vec3&) { return 2.5; });
    detail::expect(out, std::abs(r.area_after - r.area_before) < 1e-10 * r.area_before,
                   "pu constant: areas differ");
  });
  for (int i = 0; i < n_factors; ++i)
    detail::guarded(out, "pu factor " + std::to_string(i), [&] {
      PuResult r = pu_average_check(random_even_factor(1000 + i));
      detail::expect(out, r.inequality_holds,
                     "pu factor " + std::to_string(i) + ": averaged area exceeds original");
    });
  return out;
}

inline Failures run_verify_suite(const std::string& suite, unsigned threads = 1) {
  if (suite == "lens") return verify_lens();
  if (suite == "seifert") return verify_seifert();
  if (suite == "groups") return verify_groups();
  if (suite == "classifier") return verify_classifier();
  if (suite == "flow") return verify_flow(8, threads);
  if (suite == "pu") return verify_pu();
  if (suite == "all") {
    Failures all;
    for (const auto& name : verify_suite_names())
      if (name != "all")
        for (auto& f : run_verify_suite(name, threads))
          all.push_back(name + ": " + f);
    return all;
  }
  fail(Errc::InvalidArgument, "unknown suite '" + suite + "'");
}

} // namespace besse

#endif
