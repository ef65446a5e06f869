// Lens spaces, genus-one Heegaard gluings of solid tori, and Seifert
// invariants of circle fiberings over S^2.
//
// Conventions. L(p,q) is S^3 / Z_p with generator acting by
// (z1, z2) -> (e^{2 pi i/p} z1, e^{2 pi i q/p} z2); L(p,q) and L(p',q') are
// diffeomorphic iff p = +-p' and q = +-q'^{+-1} mod p. Gluing two solid tori
// so that a meridian m1 goes to s*m2 + r*l2 yields L(r,-s). p = 0 encodes
// S^2 x S^1 (the r = 0 gluing), p = 1 is S^3.

#ifndef BESSE_SEIFERT_HPP_
#define BESSE_SEIFERT_HPP_

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/integer/mod_inverse.hpp>

#include "errors.hpp"
#include "orbifold.hpp"

namespace besse {

namespace detail {

inline long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long parse_ll(std::string_view tok, std::string_view whole) {
  tok = trim(tok);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
    fail(Errc::ParseError, "bad integer '" + std::string(tok) + "' in '" +
                               std::string(whole) + "'");
  return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Lens spaces

struct LensSpace {
  long long p = 1;
  long long q = 0;

  bool is_sphere() const { return p == 1; }
  bool is_s2_x_s1() const { return p == 0; }

  std::string str() const {
    if (is_s2_x_s1())
      return "S2xS1";
    return "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
  static LensSpace parse(std::string_view text);

  friend bool operator==(const LensSpace&, const LensSpace&) = default;
};

/// Canonical representative: p >= 0 and, for p >= 2, the least of
/// {q, -q, q^-1, -q^-1} mod p; q = 0 for p <= 1.
inline LensSpace lens_normalize(long long p, long long q) {
  if (std::gcd(p, q) != 1)
    fail(Errc::NotCoprime, "gcd(" + std::to_string(p) + "," + std::to_string(q) +
                               ") != 1");
  p = std::llabs(p);
  if (p <= 1)
    return {p, 0};
  long long r = detail::floor_mod(q, p);
  long long inv = boost::integer::mod_inverse(r, p);
  long long best = std::min({r, p - r, inv, p - inv});
  return {p, best};
}

inline LensSpace LensSpace::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s == "S2xS1")
    return {0, 0};
  if (!s.starts_with("L(") || !s.ends_with(")"))
    fail(Errc::ParseError, "expected L(p,q): '" + std::string(text) + "'");
  s = s.substr(2, s.size() - 3);
  auto comma = s.find(',');
  if (comma == std::string_view::npos)
    fail(Errc::ParseError, "expected L(p,q): '" + std::string(text) + "'");
  long long p = detail::parse_ll(s.substr(0, comma), text);
  long long q = detail::parse_ll(s.substr(comma + 1), text);
  if (std::gcd(p, q) != 1)
    fail(Errc::NotCoprime, "'" + std::string(text) + "' is not a lens space");
  return {p, q};
}

inline bool lens_equivalent(const LensSpace& a, const LensSpace& b) {
  return lens_normalize(a.p, a.q) == lens_normalize(b.p, b.q);
}

// ---------------------------------------------------------------------------
// Homology of a torus boundary

/// The class s*m + r*l on the boundary torus of a solid torus with meridian m
/// and longitude l.
struct HomologyClass {
  long long s = 0;  // meridian coefficient
  long long r = 0;  // longitude coefficient
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

/// Integer 2x2 matrix acting on coordinate columns.
struct IntMat2 {
  std::array<long long, 4> a{};  // row-major
  long long operator()(int i, int j) const { return a[2 * i + j]; }

  long long det() const { return a[0] * a[3] - a[1] * a[2]; }

  /// Inverse over the integers; requires det = +-1.
  IntMat2 inverse() const {
    long long d = det();
    if (d != 1 && d != -1)
      fail(Errc::InvalidArgument, "matrix is not unimodular");
    return {{a[3] * d, -a[1] * d, -a[2] * d, a[0] * d}};
  }
  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
    return {{x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0), x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1),
             x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0), x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1)}};
  }
  std::array<long long, 2> apply(const std::array<long long, 2>& v) const {
    return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
  }
};

/// Lens space T1 cup_psi T2 for psi(m1) ~ s*m2 + r*l2; r = 0 gives S^2 x S^1.
inline LensSpace glue_solid_tori(const HomologyClass& meridian_image) {
  if (std::gcd(meridian_image.s, meridian_image.r) != 1)
    fail(Errc::NotEmbeddable, "class (" + std::to_string(meridian_image.s) + "," +
                                  std::to_string(meridian_image.r) +
                                  ") is not primitive");
  return lens_normalize(meridian_image.r, -meridian_image.s);
}

/// psi(m_1) in (m_2, l_2) coordinates for the gluing that assembles the unit
/// tangent bundle of the (p,q)-spindle from the fibered solid tori over the
/// two caps. On each boundary torus the basis is (c_i, c'_i), the invariant
/// diagonal loop and the fiber; the meridian is m_i ~ -r_i c_i + c'_i with
/// r_1 = p, r_2 = q, the gluing satisfies psi(c_1) ~ -c_2, psi(c'_1) ~ c'_2,
/// and l_2 = c_2 is the longitude.
inline HomologyClass spindle_meridian_image(long long p, long long q) {
  if (p < 1 || q < 1)
    fail(Errc::InvalidArgument, "spindle orders must be >= 1");
  const std::array<long long, 2> m1{-p, 1};       // (c_1, c'_1) coordinates
  const IntMat2 psi{{-1, 0, 0, 1}};
  const IntMat2 ml_basis{{-q, 1, 1, 0}};          // columns m_2, l_2 in (c_2, c'_2)
  auto ml = ml_basis.inverse().apply(psi.apply(m1));
  return {ml[0], ml[1]};
}

/// Unit tangent bundle of the (p,q)-spindle; no coprimality assumed.
inline LensSpace unit_tangent_bundle_spindle(long long p, long long q) {
  return glue_solid_tori(spindle_meridian_image(p, q));
}

// ---------------------------------------------------------------------------
// Circle actions on L(r,1) with quotient S^2(k,k)

enum class FiberingTag { Hopf, EvenHalf, OddEqual };

inline std::string_view fibering_name(FiberingTag t) {
  switch (t) {
    case FiberingTag::Hopf: return "Hopf";
    case FiberingTag::EvenHalf: return "EvenHalf";
    case FiberingTag::OddEqual: return "OddEqual";
  }
  return "?";
}

struct FiberingCase {
  FiberingTag tag = FiberingTag::Hopf;
  long long k = 1;
  long long r = 2;
  long long b = 0;        // common value b1 = b2 of the fiber classes
  int epsilon = 1;
  friend bool operator==(const FiberingCase&, const FiberingCase&) = default;
};

/// Solves r*b = k*(1 - eps) with eps = +-1, 0 <= b <= k, gcd(b,k) = 1. For
/// k = 1 the Hopf solution (eps = +1) wins even when r = 2 also admits
/// eps = -1.
inline FiberingCase solve_gluing_constraints(long long r, long long k) {
  if (r < 2 || k < 1)
    fail(Errc::InvalidArgument, "need r >= 2 and k >= 1");
  for (int eps : {1, -1})
    for (long long b = 0; b <= k; ++b) {
      if (std::gcd(b, k) != 1 || r * b != k * (1 - eps))
        continue;
      FiberingCase c{FiberingTag::Hopf, k, r, b, eps};
      if (eps == 1)
        c.tag = FiberingTag::Hopf;  // forces k = 1, b = 0
      else if (b == 1)
        c.tag = FiberingTag::EvenHalf;  // r = 2k
      else
        c.tag = FiberingTag::OddEqual;  // b = 2, r = k odd
      return c;
    }
  fail(Errc::Incompatible, "no fibering of L(" + std::to_string(r) +
                               ",1) over S2(" + std::to_string(k) + "," +
                               std::to_string(k) + ")");
}

// ---------------------------------------------------------------------------
// Seifert invariants M(0; (a1,b1), ...)

struct SeifertPair {
  long long alpha = 1;
  long long beta = 0;
  friend bool operator==(const SeifertPair&, const SeifertPair&) = default;
  friend auto operator<=>(const SeifertPair&, const SeifertPair&) = default;
};

struct SeifertInvariants {
  int base_genus = 0;
  std::vector<SeifertPair> pairs;

  std::string str() const {
    std::string s = "M(" + std::to_string(base_genus) + ";";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i)
        s += ',';
      s += "(" + std::to_string(pairs[i].alpha) + "," + std::to_string(pairs[i].beta) + ")";
    }
    return s + ")";
  }
  static SeifertInvariants parse(std::string_view text);

  friend bool operator==(const SeifertInvariants&, const SeifertInvariants&) = default;
};

inline SeifertInvariants SeifertInvariants::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (!s.starts_with("M(") || !s.ends_with(")"))
    fail(Errc::ParseError, "expected M(g;(a,b),...): '" + std::string(text) + "'");
  s = s.substr(2, s.size() - 3);
  auto semi = s.find(';');
  if (semi == std::string_view::npos)
    fail(Errc::ParseError, "missing ';' in '" + std::string(text) + "'");
  SeifertInvariants inv;
  inv.base_genus = static_cast<int>(detail::parse_ll(s.substr(0, semi), text));
  if (inv.base_genus != 0)
    fail(Errc::ParseError, "only genus-0 bases are supported: '" + std::string(text) + "'");
  s = detail::trim(s.substr(semi + 1));
  while (!s.empty()) {
    if (s.front() != '(')
      fail(Errc::ParseError, "expected '(' in '" + std::string(text) + "'");
    auto close = s.find(')');
    if (close == std::string_view::npos)
      fail(Errc::ParseError, "unbalanced pair in '" + std::string(text) + "'");
    std::string_view body = s.substr(1, close - 1);
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
      fail(Errc::ParseError, "pair needs two entries in '" + std::string(text) + "'");
    SeifertPair pr{detail::parse_ll(body.substr(0, comma), text),
                   detail::parse_ll(body.substr(comma + 1), text)};
    if (pr.alpha < 1 || std::gcd(pr.alpha, pr.beta) != 1)
      fail(Errc::ParseError, "invalid Seifert pair in '" + std::string(text) + "'");
    inv.pairs.push_back(pr);
    s = detail::trim(s.substr(close + 1));
    if (!s.empty()) {
      if (s.front() != ',')
        fail(Errc::ParseError, "expected ',' in '" + std::string(text) + "'");
      s = detail::trim(s.substr(1));
    }
  }
  return inv;
}

/// Seifert invariants of the fiberings occurring in the circle-action
/// classification on L(r,1).
inline SeifertInvariants seifert_invariants_of_case(const FiberingCase& c) {
  switch (c.tag) {
    case FiberingTag::Hopf: return {0, {{1, c.r}}};
    case FiberingTag::EvenHalf: return {0, {{c.k, 1}, {c.k, 1}}};
    case FiberingTag::OddEqual:
      return {0, {{c.k, (1 + c.k) / 2}, {c.k, (1 - c.k) / 2}}};
  }
  return {};
}

/// Normal form: exceptional pairs with 0 < beta < alpha (sorted) plus the
/// Euler number e = -sum(beta/alpha), which absorbs all integer shifts.
struct SeifertNormalForm {
  std::vector<SeifertPair> exceptional;
  Rational euler_number;
  friend bool operator==(const SeifertNormalForm&, const SeifertNormalForm&) = default;
};

inline SeifertNormalForm seifert_normal_form(const SeifertInvariants& inv) {
  SeifertNormalForm nf;
  nf.euler_number = 0;
  for (const auto& pr : inv.pairs) {
    if (pr.alpha < 1 || std::gcd(pr.alpha, pr.beta) != 1)
      fail(Errc::InvalidArgument, "invalid Seifert pair in " + inv.str());
    nf.euler_number -= Rational(pr.beta, pr.alpha);
    if (pr.alpha > 1)
      nf.exceptional.push_back({pr.alpha, detail::floor_mod(pr.beta, pr.alpha)});
  }
  std::sort(nf.exceptional.begin(), nf.exceptional.end());
  return nf;
}

inline SeifertInvariants reverse_orientation(SeifertInvariants inv) {
  for (auto& pr : inv.pairs)
    pr.beta = -pr.beta;
  return inv;
}

/// Same Seifert fibered space, up to orientation of the total space.
inline bool seifert_equivalent(const SeifertInvariants& a, const SeifertInvariants& b) {
  if (a.base_genus != b.base_genus)
    return false;
  auto na = seifert_normal_form(a);
  return na == seifert_normal_form(b) ||
         na == seifert_normal_form(reverse_orientation(b));
}

} // namespace besse

#endif
