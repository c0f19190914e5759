#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrwit/error.hpp"

namespace corrwit {

enum class Verdict {
  Representable,
  NotRepresentable,
  MultipleRepresentable,
  MultipleNotRepresentable,
  ConjecturallyRepresentable,
  ConjecturallyNotRepresentable,
};

enum class Reason {
  // satisfied conditions
  HyperbolicInequality,
  PositiveCoefficients,
  UnitClass,
  CornerUnit,
  LogConcaveNoInternalZeros,
  SpatialInequalities,
  // failed conditions
  NegativeCoefficient,
  ZeroBNotUnit,
  ZeroMiddleNotUnit,
  DegenerateNotUnit,
  IndexInequality,
  CornerMultiplier,
  ZeroSequence,
  InternalZeros,
  NotLogConcave,
};

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Representable: return "Representable";
    case Verdict::NotRepresentable: return "NotRepresentable";
    case Verdict::MultipleRepresentable: return "MultipleRepresentable";
    case Verdict::MultipleNotRepresentable: return "MultipleNotRepresentable";
    case Verdict::ConjecturallyRepresentable: return "ConjecturallyRepresentable";
    case Verdict::ConjecturallyNotRepresentable: return "ConjecturallyNotRepresentable";
  }
  return "Unknown";
}

constexpr std::string_view to_string(Reason r) noexcept {
  switch (r) {
    case Reason::HyperbolicInequality: return "HyperbolicInequality";
    case Reason::PositiveCoefficients: return "PositiveCoefficients";
    case Reason::UnitClass: return "UnitClass";
    case Reason::CornerUnit: return "CornerUnit";
    case Reason::LogConcaveNoInternalZeros: return "LogConcaveNoInternalZeros";
    case Reason::SpatialInequalities: return "SpatialInequalities";
    case Reason::NegativeCoefficient: return "NegativeCoefficient";
    case Reason::ZeroBNotUnit: return "ZeroBNotUnit";
    case Reason::ZeroMiddleNotUnit: return "ZeroMiddleNotUnit";
    case Reason::DegenerateNotUnit: return "DegenerateNotUnit";
    case Reason::IndexInequality: return "IndexInequality";
    case Reason::CornerMultiplier: return "CornerMultiplier";
    case Reason::ZeroSequence: return "ZeroSequence";
    case Reason::InternalZeros: return "InternalZeros";
    case Reason::NotLogConcave: return "NotLogConcave";
  }
  return "Unknown";
}

struct Decision {
  Verdict verdict;
  Reason reason;

  /// Representable, or representable up to a multiple, or conjecturally so.
  bool affirmative() const noexcept {
    return verdict == Verdict::Representable || verdict == Verdict::MultipleRepresentable ||
           verdict == Verdict::ConjecturallyRepresentable;
  }
  bool conjectural() const noexcept {
    return verdict == Verdict::ConjecturallyRepresentable || verdict == Verdict::ConjecturallyNotRepresentable;
  }

  friend bool operator==(const Decision&, const Decision&) = default;
};

/// a[P2 x P0] + b[P1 x P1] + c[P0 x P2].
struct ClassP2P2 {
  Int a = 0;
  Int b = 0;
  Int c = 0;
};

/// a[P3 x P0] + b[P2 x P1] + c[P1 x P2] + d[P0 x P3].
struct ClassP3P3 {
  Int a = 0;
  Int b = 0;
  Int c = 0;
  Int d = 0;
};

namespace detail {
inline __int128 sq(Int v) { return static_cast<__int128>(v) * v; }
inline __int128 prod(Int u, Int v) { return static_cast<__int128>(u) * v; }
}  // namespace detail

/// Evaluation order: nonnegativity, then the b = 0 unit cases, then b^2 >= ac.
inline Decision decide_p2p2(const ClassP2P2& x) {
  const auto [a, b, c] = x;
  if (a < 0 || b < 0 || c < 0) return {Verdict::NotRepresentable, Reason::NegativeCoefficient};
  if (b == 0) {
    if ((a == 1 && c == 0) || (a == 0 && c == 1)) return {Verdict::Representable, Reason::UnitClass};
    return {Verdict::NotRepresentable, Reason::ZeroBNotUnit};
  }
  if (detail::sq(b) >= detail::prod(a, c)) return {Verdict::Representable, Reason::HyperbolicInequality};
  return {Verdict::NotRepresentable, Reason::IndexInequality};
}

/// a[P2 x P0] + b[P1 x P1] in P2 x P1.
inline Decision decide_p2p1(Int a, Int b) {
  if (a < 0 || b < 0) return {Verdict::NotRepresentable, Reason::NegativeCoefficient};
  if (b > 0) return {Verdict::Representable, Reason::PositiveCoefficients};
  if (a == 1) return {Verdict::Representable, Reason::UnitClass};
  return {Verdict::NotRepresentable, Reason::ZeroBNotUnit};
}

/// a[P1 x P0] + b[P0 x P1] in P1 x P1.
inline Decision decide_p1p1(Int a, Int b) {
  if (a < 0 || b < 0) return {Verdict::NotRepresentable, Reason::NegativeCoefficient};
  if (a > 0 && b > 0) return {Verdict::Representable, Reason::PositiveCoefficients};
  if ((a == 1 && b == 0) || (a == 0 && b == 1)) return {Verdict::Representable, Reason::UnitClass};
  return {Verdict::NotRepresentable, Reason::DegenerateNotUnit};
}

/// Conjectural criterion for P3 x P3. The conditions are known to be
/// necessary; their sufficiency is open.
inline Decision check_spatial(const ClassP3P3& x) {
  const auto [a, b, c, d] = x;
  if (a < 0 || b < 0 || c < 0 || d < 0) return {Verdict::ConjecturallyNotRepresentable, Reason::NegativeCoefficient};
  if (b == 0 && c == 0) {
    if ((a == 1 && d == 0) || (a == 0 && d == 1)) return {Verdict::ConjecturallyRepresentable, Reason::UnitClass};
    return {Verdict::ConjecturallyNotRepresentable, Reason::ZeroMiddleNotUnit};
  }
  if (detail::sq(b) >= detail::prod(a, c) && detail::sq(c) >= detail::prod(b, d)) {
    return {Verdict::ConjecturallyRepresentable, Reason::SpatialInequalities};
  }
  return {Verdict::ConjecturallyNotRepresentable, Reason::IndexInequality};
}

// ---------------------------------------------------------------------------
// P^n x P^m up to a positive multiple
// ---------------------------------------------------------------------------

/// e_{i-1} e_{i+1} <= e_i^2 at every interior index.
inline bool log_concave(std::span<const Int> e) {
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    if (detail::prod(e[i - 1], e[i + 1]) > detail::sq(e[i])) return false;
  }
  return true;
}

/// No zero lies strictly between two nonzero entries.
inline bool no_internal_zeros(std::span<const Int> e) {
  const auto first = std::find_if(e.begin(), e.end(), [](Int v) { return v != 0; });
  if (first == e.end()) return true;
  const auto last = std::find_if(e.rbegin(), e.rend(), [](Int v) { return v != 0; }).base();
  return std::find(first, last, 0) == last;
}

/// sum_i e_i [P^i x P^{k-i}] in A_k(P^n x P^m); e is indexed from
/// index_low() = max(0, k-m) to index_high() = min(n, k).
struct MultiDegreeSequence {
  Int n = 0;
  Int m = 0;
  Int k = 0;
  std::vector<Int> e;

  Int index_low() const noexcept { return std::max<Int>(0, k - m); }
  Int index_high() const noexcept { return std::min(n, k); }

  Int coefficient(Int i) const { return e.at(static_cast<std::size_t>(i - index_low())); }

  void validate() const {
    if (n < 0 || m < 0 || k < 0) throw Error(ErrorCode::InvalidIndexRange, "negative ambient or degree");
    if (k > n + m) throw Error(ErrorCode::InvalidIndexRange, "k exceeds n + m");
    const auto expected = static_cast<std::size_t>(index_high() - index_low() + 1);
    if (e.size() != expected) {
      throw Error(ErrorCode::InvalidIndexRange, "expected " + std::to_string(expected) + " coefficients for indices " +
                                                    std::to_string(index_low()) + ".." + std::to_string(index_high()) +
                                                    ", got " + std::to_string(e.size()));
    }
  }
};

enum class CornerClass { Fundamental, FirstFactor, SecondFactor, Point };

constexpr std::string_view to_string(CornerClass c) noexcept {
  switch (c) {
    case CornerClass::Fundamental: return "[P^n x P^m]";
    case CornerClass::FirstFactor: return "[P^n x P^0]";
    case CornerClass::SecondFactor: return "[P^0 x P^m]";
    case CornerClass::Point: return "[P^0 x P^0]";
  }
  return "?";
}

struct CornerMatch {
  CornerClass kind;
  Int multiplier;
};

/// Whether s is an integer multiple (possibly 0 or negative) of the
/// fundamental class, one of the two factor classes, or the point class.
inline std::optional<CornerMatch> corner_class(const MultiDegreeSequence& s) {
  s.validate();
  auto supported_only_at = [&](Int i) {
    if (i < s.index_low() || i > s.index_high()) return false;
    for (Int j = s.index_low(); j <= s.index_high(); ++j) {
      if (j != i && s.coefficient(j) != 0) return false;
    }
    return true;
  };
  const struct {
    CornerClass kind;
    Int degree;
    Int index;
  } corners[] = {
      {CornerClass::Fundamental, s.n + s.m, s.n},
      {CornerClass::FirstFactor, s.n, s.n},
      {CornerClass::SecondFactor, s.m, 0},
      {CornerClass::Point, 0, 0},
  };
  for (const auto& c : corners) {
    if (s.k == c.degree && supported_only_at(c.index)) return CornerMatch{c.kind, s.coefficient(c.index)};
  }
  return std::nullopt;
}

/// Exact verdict for multiples of corner classes; otherwise a verdict about
/// some positive multiple of the class, never the class itself.
inline Decision decide_multiple(const MultiDegreeSequence& s) {
  s.validate();
  if (const auto corner = corner_class(s)) {
    if (corner->multiplier == 1) return {Verdict::Representable, Reason::CornerUnit};
    return {Verdict::NotRepresentable, Reason::CornerMultiplier};
  }
  const std::span<const Int> e = s.e;
  if (std::any_of(e.begin(), e.end(), [](Int v) { return v < 0; })) {
    return {Verdict::MultipleNotRepresentable, Reason::NegativeCoefficient};
  }
  if (std::all_of(e.begin(), e.end(), [](Int v) { return v == 0; })) {
    return {Verdict::MultipleNotRepresentable, Reason::ZeroSequence};
  }
  if (!no_internal_zeros(e)) return {Verdict::MultipleNotRepresentable, Reason::InternalZeros};
  if (!log_concave(e)) return {Verdict::MultipleNotRepresentable, Reason::NotLogConcave};
  return {Verdict::MultipleRepresentable, Reason::LogConcaveNoInternalZeros};
}

}  // namespace corrwit
