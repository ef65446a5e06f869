// Finite subgroups of O(3) as explicit matrix sets.
//
// Groups are generated from standard generators in standard position
// (main axis z, dihedral 2-fold axis x), closed under multiplication with a
// rounding key for hashing, and classified back to a Schoenflies label by a
// decision tree on order, inversion, reflection count and axis geometry.
// The quotient S^2/G is computed from rotation poles: orbits of poles give
// the singular points, a reflection fixing a pole turns it into a corner.

#ifndef BESSE_POINT_GROUP_HPP_
#define BESSE_POINT_GROUP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "orbifold.hpp"

namespace besse {

// ---------------------------------------------------------------------------
// 3-vectors and 3x3 matrices

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}
inline double distance(const Vec3& a, const Vec3& b) {
  return norm(Vec3{a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

struct Mat3 {
  std::array<double, 9> a{};  // row-major

  double operator()(int i, int j) const { return a[3 * i + j]; }
  double& operator()(int i, int j) { return a[3 * i + j]; }

  static Mat3 identity() { return diag(1, 1, 1); }
  static Mat3 diag(double x, double y, double z) {
    Mat3 m;
    m(0, 0) = x;
    m(1, 1) = y;
    m(2, 2) = z;
    return m;
  }
  static Mat3 from_rows(std::array<double, 9> rows) { return Mat3{rows}; }

  /// Rotation by `angle` about `axis` (Rodrigues).
  static Mat3 rotation(const Vec3& axis, double angle) {
    Vec3 u = normalized(axis);
    double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
    return from_rows({t * u[0] * u[0] + c, t * u[0] * u[1] - s * u[2], t * u[0] * u[2] + s * u[1],
                      t * u[0] * u[1] + s * u[2], t * u[1] * u[1] + c, t * u[1] * u[2] - s * u[0],
                      t * u[0] * u[2] - s * u[1], t * u[1] * u[2] + s * u[0], t * u[2] * u[2] + c});
  }
  /// Reflection in the plane with the given normal.
  static Mat3 reflection(const Vec3& normal) {
    Vec3 u = normalized(normal);
    Mat3 m = identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m(i, j) -= 2 * u[i] * u[j];
    return m;
  }

  Mat3 transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        t(i, j) = (*this)(j, i);
    return t;
  }
  double det() const {
    const Mat3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
  double trace() const { return a[0] + a[4] + a[8]; }

  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    return r;
  }
  friend Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
            m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
            m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
  }
  friend Mat3 operator*(double s, const Mat3& m) {
    Mat3 r = m;
    for (double& x : r.a)
      x *= s;
    return r;
  }
  double max_abs_diff(const Mat3& o) const {
    double d = 0;
    for (int i = 0; i < 9; ++i)
      d = std::max(d, std::abs(a[i] - o.a[i]));
    return d;
  }
};

/// Entrywise tolerance for matrix equality.
inline constexpr double kMatrixTolerance = 1e-9;
/// Grid used by the hashing key of group closure.
inline constexpr double kKeyGrid = 1e-6;

using MatrixKey = std::array<long long, 9>;

inline MatrixKey matrix_key(const Mat3& m) {
  MatrixKey k;
  for (int i = 0; i < 9; ++i)
    k[i] = std::llround(m.a[i] / kKeyGrid);
  return k;
}

inline bool is_orthogonal(const Mat3& m, double tol = kMatrixTolerance) {
  return (m.transpose() * m).max_abs_diff(Mat3::identity()) < tol;
}

inline bool is_minus_identity(const Mat3& m) {
  return m.max_abs_diff(-1.0 * Mat3::identity()) < kMatrixTolerance;
}

/// Orientation-reversing with a fixed vector: exactly the plane reflections.
inline bool is_reflection(const Mat3& m) {
  return m.det() < 0 && std::abs(m.trace() - 1.0) < 1e-6;
}

/// Unit axis of a nontrivial rotation (det +1, m != I).
inline Vec3 rotation_axis(const Mat3& m) {
  Vec3 skew{m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)};
  if (norm(skew) > 1e-6)
    return normalized(skew);
  // half turn: m = 2 u u^T - I
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (m(i, i) > m(best, best))
      best = i;
  Vec3 col{(m(0, best) + (best == 0)) / 2, (m(1, best) + (best == 1)) / 2,
           (m(2, best) + (best == 2)) / 2};
  return normalized(col);
}

// ---------------------------------------------------------------------------
// Schoenflies labels

enum class PointGroupFamily { C, S, Ch, Cv, D, Dd, Dh, T, Td, Th, O, Oh, I, Ih };

struct SchoenfliesLabel {
  PointGroupFamily family = PointGroupFamily::C;
  int n = 1;  // ignored for the polyhedral families

  bool has_parameter() const { return family <= PointGroupFamily::Dh; }

  /// Group order determined by the label. S_2n is written with n = 2n.
  int order() const {
    switch (family) {
      case PointGroupFamily::C: return n;
      case PointGroupFamily::S: return n;
      case PointGroupFamily::Ch:
      case PointGroupFamily::Cv:
      case PointGroupFamily::D: return 2 * n;
      case PointGroupFamily::Dd:
      case PointGroupFamily::Dh: return 4 * n;
      case PointGroupFamily::T: return 12;
      case PointGroupFamily::Td:
      case PointGroupFamily::Th:
      case PointGroupFamily::O: return 24;
      case PointGroupFamily::Oh: return 48;
      case PointGroupFamily::I: return 60;
      case PointGroupFamily::Ih: return 120;
    }
    return 0;
  }

  /// Representative among labels naming conjugate groups:
  /// D1 = C2, C1v = C1h, D1h = C2v, D1d = C2h.
  SchoenfliesLabel canonical() const {
    using F = PointGroupFamily;
    if (n == 1) {
      switch (family) {
        case F::D: return {F::C, 2};
        case F::Cv: return {F::Ch, 1};
        case F::Dh: return {F::Cv, 2};
        case F::Dd: return {F::Ch, 2};
        default: break;
      }
    }
    if (!has_parameter())
      return {family, 1};
    return *this;
  }

  std::string str() const {
    using F = PointGroupFamily;
    std::string num = std::to_string(n);
    switch (family) {
      case F::C: return "C" + num;
      case F::S: return "S" + num;
      case F::Ch: return "C" + num + "h";
      case F::Cv: return "C" + num + "v";
      case F::D: return "D" + num;
      case F::Dd: return "D" + num + "d";
      case F::Dh: return "D" + num + "h";
      case F::T: return "T";
      case F::Td: return "Td";
      case F::Th: return "Th";
      case F::O: return "O";
      case F::Oh: return "Oh";
      case F::I: return "I";
      case F::Ih: return "Ih";
    }
    return "?";
  }

  static SchoenfliesLabel parse(std::string_view text);

  friend bool operator==(const SchoenfliesLabel&, const SchoenfliesLabel&) = default;
};

inline bool same_group_type(const SchoenfliesLabel& a, const SchoenfliesLabel& b) {
  return a.canonical() == b.canonical();
}

inline SchoenfliesLabel SchoenfliesLabel::parse(std::string_view text) {
  using F = PointGroupFamily;
  std::string_view s = detail::trim(text);
  if (s == "Ci")
    return {F::S, 2};
  if (s == "Cs")
    return {F::Ch, 1};
  static const std::map<std::string_view, F> fixed = {
      {"T", F::T}, {"Td", F::Td}, {"Th", F::Th}, {"O", F::O},
      {"Oh", F::Oh}, {"I", F::I}, {"Ih", F::Ih}};
  if (auto it = fixed.find(s); it != fixed.end())
    return {it->second, 1};
  if (s.size() < 2 || (s[0] != 'C' && s[0] != 'D' && s[0] != 'S'))
    fail(Errc::InvalidLabel, "unknown Schoenflies label '" + std::string(text) + "'");
  char head = s[0];
  s.remove_prefix(1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || n < 1)
    fail(Errc::InvalidLabel, "bad parameter in '" + std::string(text) + "'");
  std::string_view suffix(ptr, s.data() + s.size() - ptr);
  if (head == 'S') {
    if (!suffix.empty() || n % 2 != 0)
      fail(Errc::InvalidLabel, "S_k needs even k: '" + std::string(text) + "'");
    return {F::S, n};
  }
  if (suffix.empty())
    return {head == 'C' ? F::C : F::D, n};
  if (suffix == "h")
    return {head == 'C' ? F::Ch : F::Dh, n};
  if (suffix == "v" && head == 'C')
    return {F::Cv, n};
  if (suffix == "d" && head == 'D')
    return {F::Dd, n};
  fail(Errc::InvalidLabel, "unknown Schoenflies label '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Point groups

class PointGroup;
SchoenfliesLabel identify_label(const std::vector<Mat3>& elements);

class PointGroup {
public:
  /// Takes a closed set of orthogonal matrices and classifies it.
  explicit PointGroup(std::vector<Mat3> elements)
    : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end(), [](const Mat3& x, const Mat3& y) {
      return matrix_key(x) < matrix_key(y);
    });
    label_ = identify_label(elements_);
  }

  const std::vector<Mat3>& elements() const { return elements_; }
  const SchoenfliesLabel& label() const { return label_; }
  int order() const { return static_cast<int>(elements_.size()); }

  bool contains(const Mat3& m) const {
    auto key = matrix_key(m);
    return std::any_of(elements_.begin(), elements_.end(), [&](const Mat3& e) {
      return matrix_key(e) == key || e.max_abs_diff(m) < kMatrixTolerance;
    });
  }
  bool contains_inversion() const { return contains(-1.0 * Mat3::identity()); }
  bool is_orientation_preserving() const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [](const Mat3& m) { return m.det() > 0; });
  }

  /// Same matrix set (within tolerance).
  bool same_elements(const PointGroup& o) const {
    if (order() != o.order())
      return false;
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](const Mat3& m) { return o.contains(m); });
  }

private:
  std::vector<Mat3> elements_;
  SchoenfliesLabel label_;
};

/// Closure of a generator set under multiplication.
inline std::vector<Mat3> close_group(const std::vector<Mat3>& generators,
                                     std::size_t expected_order) {
  std::map<MatrixKey, Mat3> seen;
  std::vector<Mat3> frontier{Mat3::identity()};
  seen.emplace(matrix_key(Mat3::identity()), Mat3::identity());
  const std::size_t limit = 10 * std::max<std::size_t>(expected_order, 1);
  while (!frontier.empty()) {
    std::vector<Mat3> next;
    for (const Mat3& x : frontier)
      for (const Mat3& g : generators) {
        Mat3 y = g * x;
        if (seen.emplace(matrix_key(y), y).second) {
          next.push_back(y);
          if (seen.size() > limit)
            fail(Errc::ClosureOverflow,
                 "closure exceeded " + std::to_string(limit) + " elements");
        }
      }
    frontier = std::move(next);
  }
  std::vector<Mat3> out;
  out.reserve(seen.size());
  for (auto& [k, m] : seen)
    out.push_back(m);
  return out;
}

namespace detail {

inline Mat3 rot_z(double angle) { return Mat3::rotation({0, 0, 1}, angle); }

// Rotation group of the tetrahedron with 2-fold axes along x, y, z.
inline std::vector<Mat3> tetrahedral_generators() {
  return {Mat3::from_rows({0, 0, 1, 1, 0, 0, 0, 1, 0}), Mat3::diag(1, -1, -1)};
}

inline constexpr double golden = std::numbers::phi;

} // namespace detail

/// Group generated by the standard generators for `label`.
inline PointGroup group_from_label(const SchoenfliesLabel& label) {
  using F = PointGroupFamily;
  const double pi = std::numbers::pi;
  const int n = label.n;
  if (label.has_parameter() && n < 1)
    fail(Errc::InvalidLabel, "parameter must be >= 1");
  const Mat3 sigma_h = Mat3::diag(1, 1, -1);
  const Mat3 sigma_v = Mat3::diag(1, -1, 1);       // xz plane
  const Mat3 flip_x = Mat3::diag(1, -1, -1);       // half turn about x
  const Mat3 inversion = -1.0 * Mat3::identity();
  std::vector<Mat3> gens;
  switch (label.family) {
    case F::C: gens = {detail::rot_z(2 * pi / n)}; break;
    case F::S: gens = {detail::rot_z(2 * pi / n) * sigma_h}; break;
    case F::Ch: gens = {detail::rot_z(2 * pi / n), sigma_h}; break;
    case F::Cv: gens = {detail::rot_z(2 * pi / n), sigma_v}; break;
    case F::D: gens = {detail::rot_z(2 * pi / n), flip_x}; break;
    case F::Dh: gens = {detail::rot_z(2 * pi / n), flip_x, sigma_h}; break;
    case F::Dd: {
      // vertical mirror bisecting adjacent 2-fold axes
      double beta = pi / (2 * n);
      gens = {detail::rot_z(2 * pi / n), flip_x,
              Mat3::reflection({-std::sin(beta), std::cos(beta), 0})};
      break;
    }
    case F::T: gens = detail::tetrahedral_generators(); break;
    case F::Td:
      gens = detail::tetrahedral_generators();
      gens.push_back(Mat3::from_rows({0, 1, 0, 1, 0, 0, 0, 0, 1}));
      break;
    case F::Th:
      gens = detail::tetrahedral_generators();
      gens.push_back(inversion);
      break;
    case F::O:
    case F::Oh:
      gens = detail::tetrahedral_generators();
      gens.push_back(detail::rot_z(pi / 2));
      if (label.family == F::Oh)
        gens.push_back(inversion);
      break;
    case F::I:
    case F::Ih:
      // icosahedron with vertices (0, +-1, +-phi) and cyclic permutations
      gens = detail::tetrahedral_generators();
      gens.push_back(Mat3::rotation({0, 1, detail::golden}, 2 * pi / 5));
      if (label.family == F::Ih)
        gens.push_back(inversion);
      break;
  }
  auto elements = close_group(gens, static_cast<std::size_t>(label.order()));
  if (static_cast<int>(elements.size()) != label.order())
    fail(Errc::ClosureOverflow, label.str() + " generated " +
                                    std::to_string(elements.size()) + " elements");
  return PointGroup(std::move(elements));
}

/// G+ = G cap SO(3).
inline PointGroup orientation_subgroup(const PointGroup& g) {
  std::vector<Mat3> out;
  for (const Mat3& m : g.elements())
    if (m.det() > 0)
      out.push_back(m);
  return PointGroup(std::move(out));
}

/// G^x = {det(g) g}; lands in SO(3), 2-to-1 when -1 is in G.
inline PointGroup det_twist(const PointGroup& g) {
  std::map<MatrixKey, Mat3> unique;
  for (const Mat3& m : g.elements()) {
    Mat3 t = m.det() > 0 ? m : -1.0 * m;
    unique.emplace(matrix_key(t), t);
  }
  std::vector<Mat3> out;
  for (auto& [k, m] : unique)
    out.push_back(m);
  return PointGroup(std::move(out));
}

/// G* = <G, -1>.
inline PointGroup extend_with_inversion(const PointGroup& g) {
  if (g.contains_inversion())
    return g;
  std::vector<Mat3> out = g.elements();
  for (const Mat3& m : g.elements())
    out.push_back(-1.0 * m);
  return PointGroup(std::move(out));
}

// ---------------------------------------------------------------------------
// Poles and the quotient orbifold

struct Pole {
  Vec3 direction;
  int stabilizer_order;  // order of the rotation stabilizer
};

inline constexpr double kPoleTolerance = 1e-6;

/// Distinct rotation poles of the orientation-preserving elements.
inline std::vector<Pole> rotation_poles(const std::vector<Mat3>& elements) {
  std::vector<Vec3> dirs;
  auto known = [&](const Vec3& v) {
    return std::any_of(dirs.begin(), dirs.end(),
                       [&](const Vec3& d) { return distance(d, v) < kPoleTolerance; });
  };
  for (const Mat3& m : elements) {
    if (m.det() < 0 || m.max_abs_diff(Mat3::identity()) < kMatrixTolerance)
      continue;
    Vec3 axis = rotation_axis(m);
    for (Vec3 v : {axis, Vec3{-axis[0], -axis[1], -axis[2]}})
      if (!known(v))
        dirs.push_back(v);
  }
  std::vector<Pole> poles;
  for (const Vec3& d : dirs) {
    int stab = 0;
    for (const Mat3& m : elements)
      if (m.det() > 0 && distance(m * d, d) < kPoleTolerance)
        ++stab;
    poles.push_back({d, stab});
  }
  return poles;
}

/// Signature of S^2/G from pole orbits: each G-orbit of poles is one singular
/// point of order |Stab+|; it sits on the mirror (a corner) iff a reflection of
/// G fixes it. Base: sphere if G < SO(3), disk if G has reflections, else RP^2.
inline OrbifoldSignature quotient_signature(const PointGroup& g) {
  const auto& elems = g.elements();
  bool orientation_preserving = g.is_orientation_preserving();
  bool has_reflection = std::any_of(elems.begin(), elems.end(), is_reflection);
  auto poles = rotation_poles(elems);

  std::vector<bool> visited(poles.size(), false);
  std::vector<int> cones, corners;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (visited[i])
      continue;
    for (const Mat3& m : elems) {
      Vec3 image = m * poles[i].direction;
      for (std::size_t j = 0; j < poles.size(); ++j)
        if (!visited[j] && distance(poles[j].direction, image) < kPoleTolerance)
          visited[j] = true;
    }
    bool on_mirror = std::any_of(elems.begin(), elems.end(), [&](const Mat3& m) {
      return is_reflection(m) &&
             distance(m * poles[i].direction, poles[i].direction) < kPoleTolerance;
    });
    (on_mirror ? corners : cones).push_back(poles[i].stabilizer_order);
  }
  BaseSurface base = orientation_preserving ? BaseSurface::Sphere
                     : has_reflection       ? BaseSurface::Disk
                                            : BaseSurface::ProjectivePlane;
  return OrbifoldSignature(base, std::move(cones), std::move(corners));
}

/// Fixed catalog of S^2/G per Schoenflies family (an independent route to
/// quotient_signature, used for cross-checks).
inline OrbifoldSignature catalog_signature(const SchoenfliesLabel& label) {
  using F = PointGroupFamily;
  using S = OrbifoldSignature;
  const int n = label.n;
  switch (label.family) {
    case F::C: return S::sphere({n, n});
    case F::S: return S::projective_plane({n / 2});
    case F::Ch: return S::disk({n}, {});
    case F::Cv: return S::disk({}, {n, n});
    case F::D: return S::sphere({2, 2, n});
    case F::Dd: return S::disk({2}, {n});
    case F::Dh: return S::disk({}, {2, 2, n});
    case F::T: return S::sphere({2, 3, 3});
    case F::Td: return S::disk({}, {2, 3, 3});
    case F::Th: return S::disk({3}, {2});
    case F::O: return S::sphere({2, 3, 4});
    case F::Oh: return S::disk({}, {2, 3, 4});
    case F::I: return S::sphere({2, 3, 5});
    case F::Ih: return S::disk({}, {2, 3, 5});
  }
  fail(Errc::InvalidLabel, "unreachable");
}

/// Schoenflies label of a closed orthogonal matrix group, canonical among
/// conjugate labels (see SchoenfliesLabel::canonical). Conjugation invariant.
inline SchoenfliesLabel identify_label(const std::vector<Mat3>& elements) {
  using F = PointGroupFamily;
  const int order = static_cast<int>(elements.size());
  auto unrecognized = [&](const std::string& why) -> SchoenfliesLabel {
    fail(Errc::UnrecognizedGroup, "order " + std::to_string(order) + ": " + why);
  };
  if (order == 0)
    return unrecognized("empty set");
  for (const Mat3& m : elements)
    if (!is_orthogonal(m, 1e-6))
      return unrecognized("non-orthogonal element");

  std::vector<Mat3> rotations;
  int reflections = 0;
  bool inversion = false;
  for (const Mat3& m : elements) {
    if (m.det() > 0)
      rotations.push_back(m);
    else if (is_reflection(m))
      ++reflections;
    if (is_minus_identity(m))
      inversion = true;
  }
  const int rot_order = static_cast<int>(rotations.size());
  if (order != rot_order && order != 2 * rot_order)
    return unrecognized("rotation subgroup has wrong index");

  // rotation subgroup
  auto poles = rotation_poles(rotations);
  int high_axes = 0;  // poles with rotation order >= 3
  for (const Pole& p : poles)
    if (p.stabilizer_order >= 3)
      ++high_axes;
  enum class Rot { Cyclic, Dihedral, T, O, I } rot;
  if (poles.size() <= 2) {
    rot = Rot::Cyclic;
  } else if (high_axes > 2) {
    if (rot_order == 12) rot = Rot::T;
    else if (rot_order == 24) rot = Rot::O;
    else if (rot_order == 60) rot = Rot::I;
    else return unrecognized("polyhedral axes with unexpected order");
  } else {
    if (rot_order % 2 != 0)
      return unrecognized("dihedral rotation group of odd order");
    rot = Rot::Dihedral;
  }

  SchoenfliesLabel label;
  if (order == rot_order) {
    switch (rot) {
      case Rot::Cyclic: label = {F::C, rot_order}; break;
      case Rot::Dihedral: label = {F::D, rot_order / 2}; break;
      case Rot::T: label = {F::T}; break;
      case Rot::O: label = {F::O}; break;
      case Rot::I: label = {F::I}; break;
    }
  } else {
    switch (rot) {
      case Rot::Cyclic: {
        const int n = rot_order;
        if (inversion)
          label = n % 2 == 0 ? SchoenfliesLabel{F::Ch, n} : SchoenfliesLabel{F::S, 2 * n};
        else if (reflections == 0)
          label = {F::S, 2 * n};
        else if (reflections == 1 && n % 2 == 1 && n > 1)
          label = {F::Ch, n};
        else if (reflections == n && n >= 2)
          label = {F::Cv, n};
        else if (reflections == 1 && n == 1)
          label = {F::Ch, 1};
        else
          return unrecognized("cyclic extension with " + std::to_string(reflections) +
                              " reflections");
        break;
      }
      case Rot::Dihedral: {
        const int n = rot_order / 2;
        if (reflections == n + 1)
          label = {F::Dh, n};
        else if (reflections == n)
          label = {F::Dd, n};
        else
          return unrecognized("dihedral extension with " + std::to_string(reflections) +
                              " reflections");
        break;
      }
      case Rot::T:
        if (reflections == 6 && !inversion) label = {F::Td};
        else if (reflections == 3 && inversion) label = {F::Th};
        else return unrecognized("tetrahedral extension");
        break;
      case Rot::O:
        if (!inversion)
          return unrecognized("octahedral extension without inversion");
        label = {F::Oh};
        break;
      case Rot::I:
        if (!inversion)
          return unrecognized("icosahedral extension without inversion");
        label = {F::Ih};
        break;
    }
  }
  if (label.order() != order)
    return unrecognized("label " + label.str() + " has order " +
                        std::to_string(label.order()));
  return label.canonical();
}

/// Group as a JSON array of 3x3 row-major matrices.
inline nlohmann::ordered_json to_json(const PointGroup& g) {
  nlohmann::ordered_json out;
  out["label"] = g.label().str();
  out["order"] = g.order();
  auto mats = nlohmann::ordered_json::array();
  for (const Mat3& m : g.elements()) {
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < 3; ++i) {
      auto row = nlohmann::ordered_json::array();
      for (int j = 0; j < 3; ++j)
        row.push_back(std::abs(m(i, j)) < 1e-15 ? 0.0 : m(i, j));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  out["elements"] = mats;
  return out;
}

} // namespace besse

#endif
