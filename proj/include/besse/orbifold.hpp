// Closed 2-orbifolds of positive Euler characteristic: signatures, the
// orbifold Euler characteristic, the Besse admissibility test and the
// orientation double cover.
//
// A signature |O|(n1,...,nl; m1,...,mk) is stored in normal form: order-1
// entries are dropped and both order lists are kept sorted descending.
// Text form is BASE(n1,...;m1,...) with BASE in {S2, D2, RP2} and orders
// printed ascending, e.g. S2(2,3,5), D2(;2,2,3), D2(3;2), RP2(4).

#ifndef BESSE_ORBIFOLD_HPP_
#define BESSE_ORBIFOLD_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace besse {

using Rational = boost::rational<std::int64_t>;

enum class BaseSurface { Sphere, Disk, ProjectivePlane };

inline std::string_view base_name(BaseSurface b) {
  switch (b) {
    case BaseSurface::Sphere: return "S2";
    case BaseSurface::Disk: return "D2";
    case BaseSurface::ProjectivePlane: return "RP2";
  }
  return "?";
}

/// Euler characteristic of the underlying surface |O|.
inline int surface_euler_characteristic(BaseSurface b) {
  return b == BaseSurface::Sphere ? 2 : 1;
}

class OrbifoldSignature {
public:
  OrbifoldSignature() = default;

  OrbifoldSignature(BaseSurface base, std::vector<int> cones = {},
                    std::vector<int> corners = {})
    : base_(base), cones_(normalize(std::move(cones))),
      corners_(normalize(std::move(corners))) {
    if (!corners_.empty() && base_ != BaseSurface::Disk)
      fail(Errc::InvalidSignature,
           "corner reflectors require a disk base: " + str());
  }

  static OrbifoldSignature sphere(std::vector<int> cones = {}) {
    return {BaseSurface::Sphere, std::move(cones)};
  }
  static OrbifoldSignature disk(std::vector<int> cones = {},
                                std::vector<int> corners = {}) {
    return {BaseSurface::Disk, std::move(cones), std::move(corners)};
  }
  static OrbifoldSignature projective_plane(std::vector<int> cones = {}) {
    return {BaseSurface::ProjectivePlane, std::move(cones)};
  }

  BaseSurface base() const { return base_; }
  /// Interior cone orders, descending.
  const std::vector<int>& cone_orders() const { return cones_; }
  /// Corner reflector orders, descending.
  const std::vector<int>& corner_orders() const { return corners_; }

  bool has_boundary() const { return base_ == BaseSurface::Disk; }
  bool is_manifold() const {
    return cones_.empty() && corners_.empty() && base_ != BaseSurface::Disk;
  }

  std::string str() const {
    std::string s(base_name(base_));
    auto ascending = [](const std::vector<int>& v) {
      std::string out;
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (!out.empty())
          out += ',';
        out += std::to_string(*it);
      }
      return out;
    };
    if (base_ == BaseSurface::Disk)
      return s + "(" + ascending(cones_) + ";" + ascending(corners_) + ")";
    if (cones_.empty())
      return s;
    return s + "(" + ascending(cones_) + ")";
  }

  static OrbifoldSignature parse(std::string_view text);

  friend bool operator==(const OrbifoldSignature&,
                         const OrbifoldSignature&) = default;
  friend auto operator<=>(const OrbifoldSignature&,
                          const OrbifoldSignature&) = default;

private:
  static std::vector<int> normalize(std::vector<int> v) {
    for (int x : v)
      if (x < 1)
        fail(Errc::InvalidSignature,
             "singularity orders must be positive, got " + std::to_string(x));
    std::erase(v, 1);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  }

  BaseSurface base_ = BaseSurface::Sphere;
  std::vector<int> cones_;
  std::vector<int> corners_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Comma separated positive integers; empty text gives an empty list.
inline std::vector<int> parse_int_list(std::string_view s,
                                       std::string_view whole) {
  std::vector<int> out;
  s = trim(s);
  if (s.empty())
    return out;
  while (true) {
    auto comma = s.find(',');
    std::string_view tok = trim(s.substr(0, comma));
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      fail(Errc::ParseError, "bad order '" + std::string(tok) + "' in '" +
                                 std::string(whole) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

} // namespace detail

inline OrbifoldSignature OrbifoldSignature::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  BaseSurface base;
  if (s.starts_with("RP2")) {
    base = BaseSurface::ProjectivePlane;
    s.remove_prefix(3);
  } else if (s.starts_with("S2")) {
    base = BaseSurface::Sphere;
    s.remove_prefix(2);
  } else if (s.starts_with("D2")) {
    base = BaseSurface::Disk;
    s.remove_prefix(2);
  } else {
    fail(Errc::ParseError, "unknown base in '" + std::string(text) + "'");
  }
  s = detail::trim(s);
  if (s.empty())
    return OrbifoldSignature(base);
  if (s.front() != '(' || s.back() != ')')
    fail(Errc::ParseError, "expected parenthesised orders in '" +
                               std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  auto semi = s.find(';');
  if (semi == std::string_view::npos) {
    if (base == BaseSurface::Disk)
      fail(Errc::ParseError, "D2 needs 'cones;corners': '" + std::string(text) + "'");
    return OrbifoldSignature(base, detail::parse_int_list(s, text));
  }
  if (base != BaseSurface::Disk)
    fail(Errc::ParseError,
         "';' (corner reflectors) only allowed for D2: '" + std::string(text) + "'");
  if (s.find(';', semi + 1) != std::string_view::npos)
    fail(Errc::ParseError, "more than one ';' in '" + std::string(text) + "'");
  return OrbifoldSignature(base, detail::parse_int_list(s.substr(0, semi), text),
                           detail::parse_int_list(s.substr(semi + 1), text));
}

/// chi(|O|) - sum(1 - 1/n_i) - 1/2 sum(1 - 1/m_j), exact.
inline Rational euler_characteristic(const OrbifoldSignature& sig) {
  Rational chi(surface_euler_characteristic(sig.base()));
  for (int n : sig.cone_orders())
    chi -= Rational(1) - Rational(1, n);
  for (int m : sig.corner_orders())
    chi -= (Rational(1) - Rational(1, m)) / 2;
  return chi;
}

/// A 2-orbifold carries a Besse metric iff its Euler characteristic is positive.
inline bool admits_besse(const OrbifoldSignature& sig) {
  return euler_characteristic(sig) > 0;
}

/// Bad orbifolds: S2(p,q) and D2(;p,q) with p != q (teardrops included).
inline bool is_bad(const OrbifoldSignature& sig) {
  auto unequal_pair = [](const std::vector<int>& v) {
    return v.size() == 1 || (v.size() == 2 && v[0] != v[1]);
  };
  if (sig.base() == BaseSurface::Sphere)
    return unequal_pair(sig.cone_orders());
  if (sig.base() == BaseSurface::Disk)
    return sig.cone_orders().empty() && unequal_pair(sig.corner_orders());
  return false;
}

/// The orientable double: doubling along the mirror boundary for disks, the
/// orientation cover S2 -> RP2 for projective planes.
inline OrbifoldSignature orientation_double_cover(const OrbifoldSignature& sig) {
  const auto& cones = sig.cone_orders();
  switch (sig.base()) {
    case BaseSurface::Sphere:
      fail(Errc::AlreadyOrientable, sig.str() + " is already orientable");
    case BaseSurface::Disk: {
      std::vector<int> out = cones;
      out.insert(out.end(), cones.begin(), cones.end());
      out.insert(out.end(), sig.corner_orders().begin(), sig.corner_orders().end());
      return OrbifoldSignature::sphere(std::move(out));
    }
    case BaseSurface::ProjectivePlane: {
      std::vector<int> out = cones;
      out.insert(out.end(), cones.begin(), cones.end());
      return OrbifoldSignature::sphere(std::move(out));
    }
  }
  fail(Errc::InvalidSignature, "unreachable");
}

// ---------------------------------------------------------------------------
// Family rows. Every signature with positive Euler characteristic belongs to
// exactly one of the rows below; `n` is the family parameter, `p`/`q` the
// spindle or half-spindle orders (p >= q >= 1, 1 meaning a regular point).

struct FamilyRow {
  std::string tag;   // "1", "1'", "2", ..., "7", "7'", "8", ..., "19"
  int n = 0;
  int p = 0;
  int q = 0;
  friend bool operator==(const FamilyRow&, const FamilyRow&) = default;
};

/// All row tags in table order.
inline const std::vector<std::string>& family_row_tags() {
  static const std::vector<std::string> tags = {
    "1", "1'", "2", "3", "4", "5", "6", "7", "7'", "8", "9", "10",
    "11", "12", "13", "14", "15", "16", "17", "18", "19"};
  return tags;
}

inline int family_row_index(std::string_view tag) {
  const auto& tags = family_row_tags();
  auto it = std::find(tags.begin(), tags.end(), tag);
  return it == tags.end() ? -1 : static_cast<int>(it - tags.begin());
}

/// Matches a signature against the row shapes; nullopt iff chi <= 0.
inline std::optional<FamilyRow> family_row(const OrbifoldSignature& sig) {
  const auto& c = sig.cone_orders();
  const auto& k = sig.corner_orders();
  auto pad_pair = [](const std::vector<int>& v, int& p, int& q) {
    p = v.size() > 0 ? v[0] : 1;
    q = v.size() > 1 ? v[1] : 1;
  };
  auto triangle = [](const std::vector<int>& v, const char* dihedral_odd,
                     const char* dihedral_even, const char* tet,
                     const char* oct, const char* ico) -> std::optional<FamilyRow> {
    if (v[1] == 2 && v[2] == 2)
      return v[0] % 2 ? FamilyRow{dihedral_odd, (v[0] - 1) / 2}
                      : FamilyRow{dihedral_even, v[0] / 2};
    if (v[1] == 3 && v[2] == 2 && v[0] >= 3 && v[0] <= 5)
      return FamilyRow{v[0] == 3 ? tet : v[0] == 4 ? oct : ico};
    return std::nullopt;
  };

  switch (sig.base()) {
    case BaseSurface::Sphere:
      if (c.size() <= 2) {
        FamilyRow row;
        pad_pair(c, row.p, row.q);
        row.tag = (row.p + row.q) % 2 == 0 ? "1" : "1'";
        return row;
      }
      if (c.size() == 3)
        return triangle(c, "3", "2", "4", "5", "6");
      return std::nullopt;
    case BaseSurface::ProjectivePlane:
      if (c.empty())
        return FamilyRow{"13", 0};
      if (c.size() == 1)
        return c[0] % 2 ? FamilyRow{"13", (c[0] - 1) / 2} : FamilyRow{"8", c[0] / 2};
      return std::nullopt;
    case BaseSurface::Disk:
      if (c.empty()) {
        if (k.size() <= 2) {
          FamilyRow row;
          pad_pair(k, row.p, row.q);
          row.tag = (row.p + row.q) % 2 == 0 ? "7" : "7'";
          return row;
        }
        if (k.size() == 3)
          return triangle(k, "11", "16", "12", "18", "19");
        return std::nullopt;
      }
      if (c.size() == 1 && k.empty())
        return c[0] % 2 ? FamilyRow{"9", (c[0] - 1) / 2} : FamilyRow{"14", c[0] / 2};
      if (c.size() == 1 && k.size() == 1) {
        if (c[0] == 2)
          return k[0] % 2 ? FamilyRow{"15", (k[0] - 1) / 2} : FamilyRow{"10", k[0] / 2};
        if (c[0] == 3 && k[0] == 2)
          return FamilyRow{"17"};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

struct EnumeratedSignature {
  FamilyRow row;
  OrbifoldSignature signature;
};

/// Every Besse-admissible signature whose orders are all <= max_order,
/// grouped by family row (table order) and sorted within each row.
inline std::vector<EnumeratedSignature> enumerate_besse_signatures(int max_order) {
  if (max_order < 1)
    fail(Errc::InvalidArgument, "max_order must be >= 1");
  std::vector<OrbifoldSignature> sigs;
  using S = OrbifoldSignature;
  for (int p = 1; p <= max_order; ++p)
    for (int q = 1; q <= p; ++q) {
      sigs.push_back(S::sphere({p, q}));
      sigs.push_back(S::disk({}, {p, q}));
    }
  for (int m = 2; m <= max_order; ++m) {
    sigs.push_back(S::sphere({2, 2, m}));
    sigs.push_back(S::disk({}, {2, 2, m}));
    sigs.push_back(S::projective_plane({m}));
    sigs.push_back(S::disk({m}, {}));
    sigs.push_back(S::disk({2}, {m}));
  }
  sigs.push_back(S::projective_plane());
  for (int top = 3; top <= std::min(5, max_order); ++top) {
    sigs.push_back(S::sphere({2, 3, top}));
    sigs.push_back(S::disk({}, {2, 3, top}));
  }
  if (max_order >= 3)
    sigs.push_back(S::disk({3}, {2}));

  std::sort(sigs.begin(), sigs.end());
  sigs.erase(std::unique(sigs.begin(), sigs.end()), sigs.end());

  std::vector<EnumeratedSignature> out;
  for (auto& s : sigs) {
    auto row = family_row(s);
    if (!row || !admits_besse(s))
      fail(Errc::InvalidSignature, "enumeration produced " + s.str());
    out.push_back({*row, std::move(s)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return family_row_index(a.row.tag) < family_row_index(b.row.tag);
  });
  return out;
}

} // namespace besse

#endif
