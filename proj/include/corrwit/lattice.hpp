#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "corrwit/error.hpp"

namespace corrwit {

/// A point (x0, x1, ..., xn) of the integer lattice. Slot 0 is the degree
/// slot; it carries the positive sign of the Lorentzian form.
class LatticeVector {
 public:
  explicit LatticeVector(std::vector<Int> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorCode::PreconditionViolated, "lattice vector needs at least one coordinate");
  }
  LatticeVector(std::initializer_list<Int> coords) : LatticeVector(std::vector<Int>(coords)) {}

  /// The zero vector with `width` coordinates.
  static LatticeVector zero(std::size_t width) { return LatticeVector(std::vector<Int>(width, 0)); }

  std::size_t size() const noexcept { return coords_.size(); }
  /// n, for a vector living in Z^{n+1}.
  std::size_t dimension() const noexcept { return coords_.size() - 1; }

  Int operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Int> coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  Int max_coordinate() const noexcept { return *std::max_element(coords_.begin(), coords_.end()); }
  Int min_coordinate() const noexcept { return *std::min_element(coords_.begin(), coords_.end()); }
  bool nonnegative() const noexcept { return min_coordinate() >= 0; }

  /// Appends zeros up to `width` coordinates. Never shrinks.
  LatticeVector padded(std::size_t width) const {
    if (width < coords_.size()) throw Error(ErrorCode::LengthMismatch, "cannot pad to a smaller width");
    auto out = coords_;
    out.resize(width, 0);
    return LatticeVector(std::move(out));
  }

  friend LatticeVector operator+(const LatticeVector& x, const LatticeVector& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "vector sum of different lengths");
    std::vector<Int> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked::add(x[i], y[i]);
    return LatticeVector(std::move(out));
  }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<Int> coords_;
};

enum class FormKind { Euclidean, Lorentzian };

constexpr std::string_view to_string(FormKind f) noexcept {
  return f == FormKind::Euclidean ? "euclidean" : "lorentzian";
}

/// Target intersection numbers (a, b, c) = (x.x, x.y, y.y).
struct Triple {
  Int a = 0;
  Int b = 0;
  Int c = 0;

  bool positive() const noexcept { return a > 0 && b > 0 && c > 0; }

  /// b^2 >= ac, compared in 128-bit so it never overflows.
  bool hyperbolic() const noexcept {
    return static_cast<__int128>(b) * b >= static_cast<__int128>(a) * c;
  }

  /// 2b >= a + c.
  bool linear_regime() const noexcept {
    return 2 * static_cast<__int128>(b) >= static_cast<__int128>(a) + c;
  }

  Int discriminant() const { return checked::sub(checked::mul(b, b), checked::mul(a, c)); }

  /// (c, b, a): the target of the exchanged pair (y, x).
  Triple transposed() const noexcept { return {c, b, a}; }

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;

  std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

/// Exact value of the chosen bilinear form:
///   Euclidean  x*y = x0 y0 + x1 y1 + ... + xn yn
///   Lorentzian x.y = x0 y0 - x1 y1 - ... - xn yn
inline Int inner(FormKind form, const LatticeVector& x, const LatticeVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "inner product of lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  Int acc = checked::mul(x[0], y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const Int term = checked::mul(x[i], y[i]);
    acc = form == FormKind::Euclidean ? checked::add(acc, term) : checked::sub(acc, term);
  }
  return acc;
}

inline bool is_time_like(const LatticeVector& x) { return inner(FormKind::Lorentzian, x, x) > 0; }

/// A candidate representation of `target` by the pair (x, y).
struct WitnessPair {
  LatticeVector x;
  LatticeVector y;
  FormKind form = FormKind::Lorentzian;
  Triple target;

  WitnessPair(LatticeVector x_, LatticeVector y_, FormKind form_, Triple target_)
      : x(std::move(x_)), y(std::move(y_)), form(form_), target(target_) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "witness vectors of different lengths");
  }

  /// (y, x) represents the transposed target.
  WitnessPair exchanged() const { return WitnessPair(y, x, form, target.transposed()); }

  friend bool operator==(const WitnessPair&, const WitnessPair&) = default;
};

/// Re-evaluates all three Gram equations. Trusts nothing about how `w` was built.
inline bool verify_witness(const WitnessPair& w) {
  return inner(w.form, w.x, w.x) == w.target.a && inner(w.form, w.x, w.y) == w.target.b &&
         inner(w.form, w.y, w.y) == w.target.c;
}

}  // namespace corrwit
