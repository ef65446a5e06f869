// Orbifolds of geodesics and labeled period spectra of Besse 2-orbifolds.
//
// For a Besse 2-orbifold O the space of oriented prime geodesics is an
// orbifold O_g; time reversal i acts on it with quotient O_g/i. The period
// spectrum (1_inf, ~k1, ..., k'1, ...) lists the exceptional geodesic classes
// by the ratio of the regular period to their period. An overlined entry
// (printed "~k") is a pair of classes swapped by i, a plain entry is
// self-inverse, and 1_inf marks infinitely many self-inverse regular
// geodesics. Entries of order 1 are regular and never listed, so the round
// sphere and RP^2 print "()".

#ifndef BESSE_CLASSIFIER_HPP_
#define BESSE_CLASSIFIER_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "orbifold.hpp"
#include "point_group.hpp"

namespace besse {

struct SpectrumEntry {
  int order = 2;
  bool self_inverse = true;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
  friend auto operator<=>(const SpectrumEntry&, const SpectrumEntry&) = default;
};

class PeriodSpectrum {
public:
  PeriodSpectrum() = default;
  PeriodSpectrum(bool one_inf, std::vector<SpectrumEntry> entries)
    : one_inf_(one_inf), entries_(std::move(entries)) {
    std::erase_if(entries_, [](const SpectrumEntry& e) { return e.order < 2; });
    // ascending order; at equal order the paired entry comes first
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
      return a.order != b.order ? a.order < b.order : !a.self_inverse && b.self_inverse;
    });
  }

  bool has_self_inverse_regular() const { return one_inf_; }
  const std::vector<SpectrumEntry>& exceptional() const { return entries_; }

  std::vector<int> orders() const {
    std::vector<int> out;
    for (const auto& e : entries_)
      out.push_back(e.order);
    return out;
  }

  /// Table notation, e.g. "(1_inf,~2,3)".
  std::string str() const {
    std::string s = "(";
    bool first = true;
    if (one_inf_) {
      s += "1_inf";
      first = false;
    }
    for (const auto& e : entries_) {
      if (!first)
        s += ',';
      first = false;
      if (!e.self_inverse)
        s += '~';
      s += std::to_string(e.order);
    }
    return s + ")";
  }

  static PeriodSpectrum parse(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
      fail(Errc::ParseError, "expected '(...)': '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    bool one_inf = false;
    std::vector<SpectrumEntry> entries;
    while (!s.empty()) {
      auto comma = s.find(',');
      std::string_view tok = detail::trim(s.substr(0, comma));
      if (tok == "1_inf") {
        one_inf = true;
      } else {
        bool paired = !tok.empty() && tok.front() == '~';
        if (paired)
          tok.remove_prefix(1);
        auto v = detail::parse_int_list(tok, text);
        if (v.size() != 1 || v[0] < 2)
          fail(Errc::ParseError, "bad spectrum entry in '" + std::string(text) + "'");
        entries.push_back({v[0], !paired});
      }
      if (comma == std::string_view::npos)
        break;
      s.remove_prefix(comma + 1);
    }
    return PeriodSpectrum(one_inf, std::move(entries));
  }

  friend bool operator==(const PeriodSpectrum&, const PeriodSpectrum&) = default;

private:
  bool one_inf_ = false;
  std::vector<SpectrumEntry> entries_;
};

struct GeodesicOrbifolds {
  OrbifoldSignature oriented;      // O_g
  OrbifoldSignature non_oriented;  // O_g / i
  friend bool operator==(const GeodesicOrbifolds&, const GeodesicOrbifolds&) = default;
};

struct Classification {
  FamilyRow row;
  GeodesicOrbifolds orbifolds;
  PeriodSpectrum spectrum;
};

/// Self-inverse geodesics exist iff some geodesic meets an even-order cone
/// point or the mirror boundary perpendicularly, i.e. iff O has an even cone
/// order or a boundary.
inline bool self_inverse_exists(const OrbifoldSignature& sig) {
  if (!admits_besse(sig))
    fail(Errc::NotBesse, sig.str() + ": orbifold Euler characteristic not positive");
  if (sig.has_boundary())
    return true;
  const auto& c = sig.cone_orders();
  return std::any_of(c.begin(), c.end(), [](int n) { return n % 2 == 0; });
}

/// O_g, O_g/i and the labeled period spectrum, by family row.
inline Classification classify(const OrbifoldSignature& sig) {
  auto row = family_row(sig);
  if (!row || !admits_besse(sig))
    fail(Errc::NotBesse, sig.str() + ": orbifold Euler characteristic not positive");
  using S = OrbifoldSignature;
  const int n = row->n;
  const int p = row->p, q = row->q;
  const std::string& t = row->tag;
  auto paired = [](int k) { return SpectrumEntry{k, false}; };
  auto plain = [](int k) { return SpectrumEntry{k, true}; };

  GeodesicOrbifolds orb;
  PeriodSpectrum spec;
  if (t == "1") {
    const int k = (p + q) / 2;
    orb.oriented = S::sphere({k, k});
    if ((p * q) % 2 == 0) {
      orb.non_oriented = S::disk({k}, {});
      spec = {true, {paired(k)}};
    } else {
      orb.non_oriented = S::projective_plane({k});
      spec = {false, {paired(k)}};
    }
  } else if (t == "1'") {
    orb = {S::sphere({p + q, p + q}), S::disk({p + q}, {})};
    spec = {true, {paired(p + q)}};
  } else if (t == "2") {
    orb = {S::sphere({2, 2, 2 * n}), S::disk({}, {2, 2, 2 * n})};
    spec = {true, {plain(2), plain(2), plain(2 * n)}};
  } else if (t == "3") {
    orb = {S::sphere({2, 2, 2 * n + 1}), S::disk({2}, {2 * n + 1})};
    spec = {true, {paired(2), plain(2 * n + 1)}};
  } else if (t == "4") {
    orb = {S::sphere({2, 3, 3}), S::disk({3}, {2})};
    spec = {true, {plain(2), paired(3)}};
  } else if (t == "5") {
    orb = {S::sphere({2, 3, 4}), S::disk({}, {2, 3, 4})};
    spec = {true, {plain(2), plain(3), plain(4)}};
  } else if (t == "6") {
    orb = {S::sphere({2, 3, 5}), S::disk({}, {2, 3, 5})};
    spec = {true, {plain(2), plain(3), plain(5)}};
  } else if (t == "7") {
    const int k = (p + q) / 2;
    orb.oriented = S::sphere({2, 2, k});
    orb.non_oriented = (p * q) % 2 == 0 ? S::disk({}, {2, 2, k}) : S::disk({2}, {k});
    spec = {true, {plain(k)}};
  } else if (t == "7'") {
    orb = {S::sphere({2, 2, p + q}), S::disk({}, {2, 2, p + q})};
    spec = {true, {plain(2), plain(p + q)}};
  } else if (t == "8") {
    orb = {S::sphere({4 * n, 4 * n}), S::disk({4 * n}, {})};
    spec = {true, {paired(4 * n)}};
  } else if (t == "9") {
    orb = {S::sphere({4 * n + 2, 4 * n + 2}), S::disk({4 * n + 2}, {})};
    spec = {true, {paired(2 * n + 1)}};
  } else if (t == "10") {
    orb = {S::sphere({2, 2, 4 * n}), S::disk({}, {2, 2, 4 * n})};
    spec = {true, {plain(2), plain(4 * n)}};
  } else if (t == "11") {
    orb = {S::sphere({2, 2, 4 * n + 2}), S::disk({}, {2, 2, 4 * n + 2})};
    spec = {true, {plain(2), plain(2 * n + 1)}};
  } else if (t == "12") {
    orb = {S::sphere({2, 3, 4}), S::disk({}, {2, 3, 4})};
    spec = {true, {plain(3), plain(4)}};
  } else if (t == "13") {
    orb = {S::sphere({2 * n + 1, 2 * n + 1}), S::projective_plane({2 * n + 1})};
    spec = {false, {paired(2 * n + 1)}};
  } else if (t == "14") {
    orb = {S::sphere({2 * n, 2 * n}), S::disk({2 * n}, {})};
    spec = {true, {paired(n)}};
  } else if (t == "15") {
    orb = {S::sphere({2, 2, 2 * n + 1}), S::disk({2}, {2 * n + 1})};
    spec = {true, {plain(2 * n + 1)}};
  } else if (t == "16") {
    orb = {S::sphere({2, 2, 2 * n}), S::disk({}, {2, 2, 2 * n})};
    spec = {true, {plain(n)}};
  } else if (t == "17") {
    orb = {S::sphere({2, 3, 3}), S::disk({3}, {2})};
    spec = {true, {paired(3)}};
  } else if (t == "18") {
    orb = {S::sphere({2, 3, 4}), S::disk({}, {2, 3, 4})};
    spec = {true, {plain(2), plain(3)}};
  } else if (t == "19") {
    orb = {S::sphere({2, 3, 5}), S::disk({}, {2, 3, 5})};
    spec = {true, {plain(3), plain(5)}};
  } else {
    fail(Errc::NotBesse, "no family row for " + sig.str());
  }
  return {*row, orb, spec};
}

/// O_g = S^2/G^x and O_g/i = S^2/G*, with the spectrum of S^2/G.
inline Classification classify_from_group(const PointGroup& g) {
  Classification c = classify(quotient_signature(g));
  c.orbifolds = {quotient_signature(det_twist(g)),
                 quotient_signature(extend_with_inversion(g))};
  return c;
}

/// Period on O of a geodesic whose lift to the orientable double has period
/// `cover_period`: halved iff the deck involution maps it to itself without
/// fixing it pointwise.
inline Rational project_period_under_double_cover(bool invariant_under_deck,
                                                  bool pointwise_fixed,
                                                  Rational cover_period) {
  if (pointwise_fixed && !invariant_under_deck)
    fail(Errc::InconsistentFlags, "a pointwise fixed geodesic is invariant");
  if (invariant_under_deck && !pointwise_fixed)
    return cover_period / 2;
  return cover_period;
}

/// Group G in O(3) with O = S^2/G for the good members of a row; nullopt for
/// bad spindles and half-spindles.
inline std::optional<SchoenfliesLabel> table_group(const FamilyRow& row) {
  using F = PointGroupFamily;
  const int n = row.n;
  const std::string& t = row.tag;
  if (t == "1" || t == "1'")
    return row.p == row.q ? std::optional<SchoenfliesLabel>({F::C, row.p}) : std::nullopt;
  if (t == "7" || t == "7'")
    return row.p == row.q ? std::optional<SchoenfliesLabel>({F::Cv, row.p}) : std::nullopt;
  if (t == "2") return SchoenfliesLabel{F::D, 2 * n};
  if (t == "3") return SchoenfliesLabel{F::D, 2 * n + 1};
  if (t == "4") return SchoenfliesLabel{F::T};
  if (t == "5") return SchoenfliesLabel{F::O};
  if (t == "6") return SchoenfliesLabel{F::I};
  if (t == "8") return SchoenfliesLabel{F::S, 4 * n};
  if (t == "9") return SchoenfliesLabel{F::Ch, 2 * n + 1};
  if (t == "10") return SchoenfliesLabel{F::Dd, 2 * n};
  if (t == "11") return SchoenfliesLabel{F::Dh, 2 * n + 1};
  if (t == "12") return SchoenfliesLabel{F::Td};
  if (t == "13") return SchoenfliesLabel{F::S, 4 * n + 2};
  if (t == "14") return SchoenfliesLabel{F::Ch, 2 * n};
  if (t == "15") return SchoenfliesLabel{F::Dd, 2 * n + 1};
  if (t == "16") return SchoenfliesLabel{F::Dh, 2 * n};
  if (t == "17") return SchoenfliesLabel{F::Th};
  if (t == "18") return SchoenfliesLabel{F::Oh};
  if (t == "19") return SchoenfliesLabel{F::Ih};
  return std::nullopt;
}

/// Member of a family row with the given parameters.
inline OrbifoldSignature row_signature(const FamilyRow& row) {
  using S = OrbifoldSignature;
  const int n = row.n;
  const std::string& t = row.tag;
  if (t == "1" || t == "1'") return S::sphere({row.p, row.q});
  if (t == "7" || t == "7'") return S::disk({}, {row.p, row.q});
  if (auto g = table_group(row))
    return catalog_signature(*g);
  fail(Errc::InvalidArgument, "unknown row " + t + " n=" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Table regeneration

struct TableEntry {
  FamilyRow row;
  std::optional<SchoenfliesLabel> group;
  OrbifoldSignature signature;
  Classification classification;

  std::string group_column() const {
    const std::string& t = row.tag;
    if (t == "1" || t == "1'" || t == "7" || t == "7'") {
      std::string g = group ? group->str() : "-";
      return g + "(p=" + std::to_string(row.p) + ",q=" + std::to_string(row.q) + ")";
    }
    if (group->has_parameter())
      return group->str() + "(n=" + std::to_string(row.n) + ")";
    return group->str();
  }
};

/// One entry per concrete signature: family parameters n in [1, max_n]
/// (plus RP2 as the n = 0 member of row 13) and spindle or half-spindle
/// orders 1 <= q <= p <= max_pq.
inline std::vector<TableEntry> table_entries(int max_n, int max_pq) {
  if (max_n < 1 || max_pq < 1)
    fail(Errc::InvalidArgument, "table bounds must be >= 1");
  std::vector<FamilyRow> rows;
  for (int p = 1; p <= max_pq; ++p)
    for (int q = 1; q <= p; ++q) {
      const bool even = (p + q) % 2 == 0;
      rows.push_back({even ? "1" : "1'", 0, p, q});
      rows.push_back({even ? "7" : "7'", 0, p, q});
    }
  for (const char* fixed : {"4", "5", "6", "12", "17", "18", "19"})
    rows.push_back({fixed});
  rows.push_back({"13", 0});
  for (int n = 1; n <= max_n; ++n)
    for (const char* t : {"2", "3", "8", "9", "10", "11", "13", "14", "15", "16"})
      rows.push_back({t, n});
  std::stable_sort(rows.begin(), rows.end(), [](const FamilyRow& a, const FamilyRow& b) {
    return family_row_index(a.tag) < family_row_index(b.tag);
  });

  std::vector<TableEntry> out;
  for (const auto& row : rows) {
    OrbifoldSignature sig = row_signature(row);
    out.push_back({row, table_group(row), sig, classify(sig)});
  }
  return out;
}

inline std::string render_table(const std::vector<TableEntry>& entries, bool csv) {
  std::string out;
  const char* sep = csv ? "," : " | ";
  auto cell = [&](const std::string& s) {
    return csv && s.find_first_of(",\"") != std::string::npos ? "\"" + s + "\"" : s;
  };
  out += csv ? "row,G,O,O_g,O_g_mod_i,periods\n"
             : "row | G | O | O_g | O_g/i | periods\n";
  for (const auto& e : entries) {
    const auto& c = e.classification;
    out += cell(e.row.tag) + sep + cell(e.group_column()) + sep +
           cell(e.signature.str()) + sep + cell(c.orbifolds.oriented.str()) + sep +
           cell(c.orbifolds.non_oriented.str()) + sep + cell(c.spectrum.str()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const PeriodSpectrum& s) {
  nlohmann::ordered_json j;
  j["one_inf"] = s.has_self_inverse_regular();
  auto ex = nlohmann::ordered_json::array();
  for (const auto& e : s.exceptional())
    ex.push_back({{"order", e.order}, {"paired", !e.self_inverse}});
  j["exceptional"] = ex;
  return j;
}

inline nlohmann::ordered_json classification_json(const std::string& input,
                                                  const Classification& c) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["input"] = input;
  j["row"] = c.row.tag;
  j["O_g"] = c.orbifolds.oriented.str();
  j["O_g_mod_i"] = c.orbifolds.non_oriented.str();
  j["spectrum"] = to_json(c.spectrum);
  j["periods"] = c.spectrum.str();
  return j;
}

} // namespace besse

#endif
