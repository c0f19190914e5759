#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrwit/error.hpp"
#include "corrwit/lattice.hpp"

namespace corrwit {

// ---------------------------------------------------------------------------
// De Jonquieres-type vectors
// ---------------------------------------------------------------------------

/// True iff x = (d, m1, ..., mn) with d >= 1, n >= 2d-1, m1 = d-1, every
/// m_i (i >= 2) in {0, 1}, and at most 2d-2 of them equal to one.
inline bool is_dj_type(const LatticeVector& x) {
  const Int d = x[0];
  if (d < 1 || x.size() < 2) return false;
  const auto n = static_cast<__int128>(x.dimension());
  if (n < 2 * static_cast<__int128>(d) - 1 || x[1] != d - 1) return false;
  Int ones = 0;
  for (std::size_t i = 2; i < x.size(); ++i) {
    if (x[i] != 0 && x[i] != 1) return false;
    ones += x[i];
  }
  return ones <= 2 * static_cast<__int128>(d) - 2;
}

/// A lattice vector known to be of De Jonquieres type.
class DJVector {
 public:
  explicit DJVector(LatticeVector v) : vec_(std::move(v)) {
    if (!is_dj_type(vec_)) throw Error(ErrorCode::NotDeJonquieresType, vec_.to_string());
  }

  const LatticeVector& vec() const noexcept { return vec_; }
  Int degree() const noexcept { return vec_[0]; }
  std::size_t ambient_n() const noexcept { return vec_.dimension(); }

  friend bool operator==(const DJVector&, const DJVector&) = default;

 private:
  LatticeVector vec_;
};

// ---------------------------------------------------------------------------
// Sums of squares
// ---------------------------------------------------------------------------

struct FourSquares {
  Int n = 0;
  std::array<Int, 4> parts{};  // nonincreasing
};

/// Lexicographically largest nonincreasing (n1, n2, n3, n4) with
/// n1^2 + n2^2 + n3^2 + n4^2 = n, found by descending exhaustive search.
inline FourSquares four_squares(Int n) {
  if (n < 0) throw Error(ErrorCode::PreconditionViolated, "four_squares of a negative number");
  for (Int n1 = isqrt(n); n1 >= 0; --n1) {
    const Int r1 = n - n1 * n1;
    if (r1 > 3 * static_cast<__int128>(n1) * n1) break;
    for (Int n2 = std::min(n1, isqrt(r1)); n2 >= 0; --n2) {
      const Int r2 = r1 - n2 * n2;
      if (r2 > 2 * static_cast<__int128>(n2) * n2) break;
      for (Int n3 = std::min(n2, isqrt(r2)); n3 >= 0; --n3) {
        const Int r3 = r2 - n3 * n3;
        if (r3 > n3 * n3) break;
        const Int n4 = isqrt(r3);
        if (n4 * n4 == r3) return {n, {n1, n2, n3, n4}};
      }
    }
  }
  throw Error(ErrorCode::InternalInvariantBroken, "no four-square decomposition of " + std::to_string(n));
}

namespace detail {

inline void collect_square_sums(Int remaining, std::size_t slots, Int cap, std::vector<Int>& prefix,
                                std::vector<std::vector<Int>>& out) {
  if (slots == 0) {
    if (remaining == 0) out.push_back(prefix);
    return;
  }
  if (static_cast<__int128>(slots) * cap * cap < remaining) return;
  for (Int v = std::min(cap, isqrt(remaining)); v >= 0; --v) {
    prefix.push_back(v);
    collect_square_sums(remaining - v * v, slots - 1, v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Every nonincreasing k-tuple of nonnegative integers whose squares sum to
/// n, in lexicographically descending order.
inline std::vector<std::vector<Int>> sum_of_squares_representations(Int n, std::size_t k) {
  if (n < 0) throw Error(ErrorCode::PreconditionViolated, "negative n");
  if (k == 0) throw Error(ErrorCode::PreconditionViolated, "k must be positive");
  std::vector<std::vector<Int>> out;
  std::vector<Int> prefix;
  prefix.reserve(k);
  detail::collect_square_sums(n, k, isqrt(n), prefix, out);
  return out;
}

// ---------------------------------------------------------------------------
// Linear regime builders
// ---------------------------------------------------------------------------

namespace detail {

struct LinearParams {
  Triple normalized;  // c <= a
  bool swapped = false;
  Int r1 = 0;
  Int r2 = 0;
  Int r3 = 0;
  bool even = false;
};

inline void require_linear(const Triple& t) {
  if (!t.positive()) throw Error(ErrorCode::PreconditionViolated, "target " + t.to_string() + " is not positive");
  if (!t.linear_regime()) throw Error(ErrorCode::PreconditionViolated, "target " + t.to_string() + " has 2b < a+c");
}

inline LinearParams linear_params(const Triple& t) {
  LinearParams p;
  p.swapped = t.a < t.c;
  p.normalized = p.swapped ? t.transposed() : t;
  const auto& [a, b, c] = p.normalized;
  p.r1 = c / 2;
  p.r2 = b - c;
  p.r3 = checked::sub(checked::mul(2, b), checked::add(a, c));
  p.even = c % 2 == 0;
  return p;
}

/// The two leading slots and the parity slot shared by both builders.
inline std::pair<std::vector<Int>, std::vector<Int>> linear_heads(const LinearParams& p, std::size_t width) {
  std::vector<Int> x(width, 0), y(width, 0);
  x[1] = checked::add(p.r1, p.r2);
  x[0] = checked::add(x[1], 1);
  y[0] = p.r1 + 1;
  y[1] = p.r1;
  x[2] = y[2] = p.even ? 1 : 0;
  return {std::move(x), std::move(y)};
}

struct NormalizedBase {
  LatticeVector x;
  LatticeVector y;
  bool swapped;
};

/// DJ-type pair for the normalized triple (c <= a) in width n+1; r3 unit
/// entries occupy slots 3, 4, ... from the left.
inline NormalizedBase linear_dj_normalized(const Triple& t, Int n) {
  require_linear(t);
  if (n < 2 || 2 * static_cast<__int128>(t.b) > n) {
    throw Error(ErrorCode::PreconditionViolated,
                "b = " + std::to_string(t.b) + " exceeds floor(n/2) for n = " + std::to_string(n));
  }
  const LinearParams p = linear_params(t);
  auto [x, y] = linear_heads(p, static_cast<std::size_t>(n) + 1);
  if (p.r3 > n - 2) throw Error(ErrorCode::InternalInvariantBroken, "no room for unit entries");
  for (Int i = 0; i < p.r3; ++i) x[static_cast<std::size_t>(3 + i)] = 1;
  return {LatticeVector(std::move(x)), LatticeVector(std::move(y)), p.swapped};
}

}  // namespace detail

/// Witness over N^7 for a positive triple with 2b >= a+c: two leading slots,
/// a parity slot, and a four-square decomposition of 2b-a-c.
inline WitnessPair represent_linear_nat7(const Triple& t) {
  detail::require_linear(t);
  const detail::LinearParams p = detail::linear_params(t);
  auto [x, y] = detail::linear_heads(p, 7);
  const auto fs = four_squares(p.r3);
  std::copy(fs.parts.begin(), fs.parts.end(), x.begin() + 3);
  WitnessPair w(LatticeVector(std::move(x)), LatticeVector(std::move(y)), FormKind::Lorentzian, p.normalized);
  if (p.swapped) w = w.exchanged();
  if (!verify_witness(w)) throw Error(ErrorCode::InternalInvariantBroken, "N^7 builder failed for " + t.to_string());
  return w;
}

/// Pair of DJ-type vectors in Z^{n+1} realizing a linear-regime triple with b <= floor(n/2).
inline std::pair<DJVector, DJVector> represent_linear_dj(const Triple& t, Int n) {
  auto base = detail::linear_dj_normalized(t, n);
  if (base.swapped) std::swap(base.x, base.y);
  if (!is_dj_type(base.x) || !is_dj_type(base.y)) {
    throw Error(ErrorCode::InternalInvariantBroken, "constructed vector is not of DJ type for " + t.to_string());
  }
  if (!verify_witness(WitnessPair(base.x, base.y, FormKind::Lorentzian, t))) {
    throw Error(ErrorCode::InternalInvariantBroken, "DJ builder failed for " + t.to_string());
  }
  return {DJVector(std::move(base.x)), DJVector(std::move(base.y))};
}

// ---------------------------------------------------------------------------
// Reduction and certificates
// ---------------------------------------------------------------------------

enum class Move { Swap, Shear };

constexpr std::string_view to_string(Move m) noexcept { return m == Move::Swap ? "swap" : "shear"; }

/// One reduction (a, b, c) -> (a, b-a, a+c-2b), after swapping so that a <= c.
/// `moves` is in reduction order ([Swap,] Shear); lifting a witness of
/// `reduced` back to the input applies them in reverse.
struct ReductionStep {
  Triple reduced;
  std::vector<Move> moves;
};

inline ReductionStep reduce_step(const Triple& t) {
  if (!t.positive() || !t.hyperbolic() || t.linear_regime()) {
    throw Error(ErrorCode::PreconditionViolated,
                "reduce_step needs a positive triple with b^2 >= ac and 2b < a+c, got " + t.to_string());
  }
  ReductionStep step;
  Triple s = t;
  if (s.a > s.c) {
    s = s.transposed();
    step.moves.push_back(Move::Swap);
  }
  step.moves.push_back(Move::Shear);
  step.reduced = {s.a, s.b - s.a, checked::sub(checked::add(s.a, s.c), checked::mul(2, s.b))};
  return step;
}

/// Base pair of DJ-type vectors plus the moves (applied base-outward) that
/// carry it to a representation of `target`.
class WitnessCertificate {
 public:
  WitnessCertificate(DJVector base_x, DJVector base_y, std::vector<Move> moves, Triple target, Int ambient_n)
      : base_x_(std::move(base_x)),
        base_y_(std::move(base_y)),
        moves_(std::move(moves)),
        target_(target),
        ambient_n_(ambient_n) {
    if (ambient_n_ < 0 || base_x_.ambient_n() != static_cast<std::size_t>(ambient_n_) ||
        base_y_.ambient_n() != static_cast<std::size_t>(ambient_n_)) {
      throw Error(ErrorCode::LengthMismatch, "base vectors do not live in ambient n = " + std::to_string(ambient_n_));
    }
  }

  const DJVector& base_x() const noexcept { return base_x_; }
  const DJVector& base_y() const noexcept { return base_y_; }
  const std::vector<Move>& moves() const noexcept { return moves_; }
  const Triple& target() const noexcept { return target_; }
  Int ambient_n() const noexcept { return ambient_n_; }

  friend bool operator==(const WitnessCertificate&, const WitnessCertificate&) = default;

 private:
  DJVector base_x_;
  DJVector base_y_;
  std::vector<Move> moves_;
  Triple target_;
  Int ambient_n_;
};

/// n = max(2b, 6).
inline Int default_ambient(const Triple& t) { return std::max<Int>(checked::mul(2, t.b), 6); }

inline WitnessCertificate represent_general(const Triple& t, std::optional<Int> n = std::nullopt) {
  if (t.a < 0 || t.b < 0 || t.c < 0) {
    throw Error(ErrorCode::PreconditionViolated, "negative coordinate in " + t.to_string());
  }
  if (!t.positive()) {
    throw Error(ErrorCode::DegenerateTarget,
                t.to_string() + " has a zero entry; such classes are decided, not constructed (see decide_p2p2)");
  }
  if (!t.hyperbolic()) {
    throw Error(ErrorCode::NotRepresentableAsPositiveTriple, t.to_string() + " has b^2 < ac");
  }
  const Int ambient = n.value_or(default_ambient(t));
  if (ambient < default_ambient(t)) {
    throw Error(ErrorCode::PreconditionViolated,
                "ambient n = " + std::to_string(ambient) + " is below max(2b, 6) for " + t.to_string());
  }

  std::vector<ReductionStep> steps;
  Triple current = t;
  while (!current.linear_regime()) {
    steps.push_back(reduce_step(current));
    current = steps.back().reduced;
  }

  auto base = detail::linear_dj_normalized(current, ambient);
  std::vector<Move> moves;
  if (base.swapped) moves.push_back(Move::Swap);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) moves.insert(moves.end(), it->moves.rbegin(), it->moves.rend());

  return WitnessCertificate(DJVector(std::move(base.x)), DJVector(std::move(base.y)), std::move(moves), t, ambient);
}

/// Coefficients of a replay vector over the two base DJ-type summands.
struct SummandCounts {
  Int base_x = 0;
  Int base_y = 0;

  friend bool operator==(const SummandCounts&, const SummandCounts&) = default;
};

struct ReplayState {
  LatticeVector x;
  LatticeVector y;
  SummandCounts x_summands;
  SummandCounts y_summands;
};

/// The base pair followed by the state after each move. Does not verify.
inline std::vector<ReplayState> replay_trace(const WitnessCertificate& cert) {
  std::vector<ReplayState> trace;
  trace.reserve(cert.moves().size() + 1);
  trace.push_back({cert.base_x().vec(), cert.base_y().vec(), {1, 0}, {0, 1}});
  for (Move m : cert.moves()) {
    ReplayState next = trace.back();
    if (m == Move::Swap) {
      std::swap(next.x, next.y);
      std::swap(next.x_summands, next.y_summands);
    } else {
      next.y = next.x + next.y;
      next.y_summands = {checked::add(next.x_summands.base_x, next.y_summands.base_x),
                         checked::add(next.x_summands.base_y, next.y_summands.base_y)};
    }
    trace.push_back(std::move(next));
  }
  return trace;
}

/// Applies the moves and checks the result against the target.
inline WitnessPair replay(const WitnessCertificate& cert) {
  const auto trace = replay_trace(cert);
  for (const auto& s : trace) {
    if (!s.x.nonnegative() || !s.y.nonnegative()) {
      throw Error(ErrorCode::ReplayMismatch, "negative coordinate during replay");
    }
  }
  WitnessPair w(trace.back().x, trace.back().y, FormKind::Lorentzian, cert.target());
  if (!verify_witness(w)) {
    throw Error(ErrorCode::ReplayMismatch, "replayed pair does not realize " + cert.target().to_string());
  }
  return w;
}

// ---------------------------------------------------------------------------
// Linear-system reading of a certificate
// ---------------------------------------------------------------------------

struct LinearSystemEntry {
  std::string role;  // "x" or "y"
  LatticeVector m;
  SummandCounts summands;
  std::string text;
};

struct LinearSystemDescription {
  std::vector<LinearSystemEntry> entries;
  std::vector<LatticeVector> dj_summands;  // base_x, base_y
  std::string disclaimer;

  std::string render_text() const {
    std::string out;
    for (const auto& e : entries) {
      out += e.role + ": " + e.text + "\n";
      out += "   = " + std::to_string(e.summands.base_x) + " * base_x + " + std::to_string(e.summands.base_y) +
             " * base_y\n";
    }
    out += "base_x: " + dj_summands[0].to_string() + " (De Jonquieres type, degree " +
           std::to_string(dj_summands[0][0]) + ")\n";
    out += "base_y: " + dj_summands[1].to_string() + " (De Jonquieres type, degree " +
           std::to_string(dj_summands[1][0]) + ")\n";
    out += "note: " + disclaimer + "\n";
    return out;
  }
};

namespace detail {

inline std::string describe_system(const LatticeVector& m) {
  std::string s = "L(p, " + m.to_string() + "): plane curves of degree " + std::to_string(m[0]);
  // Group base points by multiplicity, in order of first appearance.
  std::vector<std::pair<Int, std::vector<std::size_t>>> groups;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == m[i]; });
    if (it == groups.end()) {
      groups.push_back({m[i], {i}});
    } else {
      it->second.push_back(i);
    }
  }
  if (groups.empty()) return s + ", no assigned base points";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    s += g == 0 ? " with multiplicity >= " : "; multiplicity >= ";
    s += std::to_string(groups[g].first) + " at ";
    for (std::size_t j = 0; j < groups[g].second.size(); ++j) {
      if (j) s += ", ";
      s += "p" + std::to_string(groups[g].second[j]);
    }
  }
  return s;
}

}  // namespace detail

inline LinearSystemDescription linear_system_description(const WitnessCertificate& cert) {
  const auto trace = replay_trace(cert);
  const auto& last = trace.back();
  LinearSystemDescription d;
  d.entries.push_back({"x", last.x, last.x_summands, detail::describe_system(last.x)});
  d.entries.push_back({"y", last.y, last.y_summands, detail::describe_system(last.y)});
  d.dj_summands = {cert.base_x().vec(), cert.base_y().vec()};
  d.disclaimer =
      "the points p1, ..., p" + std::to_string(cert.ambient_n()) +
      " must be sufficiently general; no genericity test is performed";
  return d;
}

}  // namespace corrwit
