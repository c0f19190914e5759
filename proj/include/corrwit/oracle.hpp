#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "corrwit/construct.hpp"
#include "corrwit/error.hpp"
#include "corrwit/lattice.hpp"

namespace corrwit {

enum class LatticeKind { AllIntegers, Nonnegative };

/// A finite window onto Z^width or N^width: coordinates bounded by
/// |x_i| <= coordinate_bound.
struct LatticeSpec {
  LatticeKind kind = LatticeKind::Nonnegative;
  std::size_t width = 1;
  Int coordinate_bound = 0;

  void validate() const {
    if (width < 1) throw Error(ErrorCode::PreconditionViolated, "lattice width must be at least 1");
    if (coordinate_bound < 0) throw Error(ErrorCode::PreconditionViolated, "coordinate bound must be nonnegative");
  }

  /// "int:4" or "nat:7".
  std::string name() const { return (kind == LatticeKind::AllIntegers ? "int:" : "nat:") + std::to_string(width); }
};

struct SearchBudget {
  /// Maximum number of coordinate assignments one search may try.
  std::uint64_t node_cap = 500'000'000;
};

/// The default Lorentzian coordinate bound for a scan or search up to b: b^2 + b.
inline Int default_lorentzian_bound(Int b) { return checked::add(checked::mul(b, b), b); }

/// For the Euclidean form every coordinate of a witness is at most
/// floor(sqrt(max(a, c))), so exhausting that window proves nonexistence.
inline bool euclidean_conclusive(const LatticeSpec& spec, const Triple& t) {
  if (t.a < 0 || t.c < 0) return true;
  return spec.coordinate_bound >= isqrt(std::max(t.a, t.c));
}

/// Depth-first search for a witness pair inside a lattice window.
///
/// Both forms and both windows are invariant under permutations of slots
/// 1..n, and the integer window also under sign changes of single slots and
/// under (x, y) -> (-x, -y). The search therefore only visits canonical
/// pairs: x has nonincreasing (and, over Z, nonnegative) spatial part with
/// x0 >= 0 over Z; y is nonincreasing inside every run of equal x entries,
/// and nonnegative where x is zero over Z. Every witness has a canonical
/// image, so exhausting the canonical pairs exhausts the window. Within the
/// canonical pairs the order is lexicographic on (x, y), and pruning (exact
/// sum-of-squares feasibility and Cauchy-Schwarz on the remaining slots)
/// never removes a witness.
class PairSearcher {
 public:
  PairSearcher(LatticeSpec spec, FormKind form, SearchBudget budget = {})
      : spec_(spec), form_(form), budget_(budget) {
    spec_.validate();
    lo_ = spec_.kind == LatticeKind::Nonnegative ? 0 : -spec_.coordinate_bound;
    hi_ = spec_.coordinate_bound;
  }

  const LatticeSpec& spec() const noexcept { return spec_; }
  std::uint64_t nodes_visited() const noexcept { return nodes_; }

  std::optional<WitnessPair> find(const Triple& t) {
    target_ = t;
    nodes_ = 0;
    x_.assign(spec_.width, 0);
    y_.assign(spec_.width, 0);
    suffix_norm_.assign(spec_.width + 1, 0);
    // Spatial norms are at most bound^2 * (width - 1); Euclidean ones are at
    // most max(a, c), Lorentzian ones at most bound^2 - min(a, c).
    const __int128 b2 = static_cast<__int128>(spec_.coordinate_bound) * spec_.coordinate_bound;
    __int128 needed = b2 * static_cast<__int128>(spec_.width - 1);
    if (form_ == FormKind::Euclidean) needed = std::min<__int128>(needed, std::max(t.a, t.c));
    if (form_ == FormKind::Lorentzian) needed = std::min<__int128>(needed, b2 - std::min(t.a, t.c));
    ensure_table(static_cast<Int>(std::max<__int128>(needed, 0)));

    // x0 >= 0 over Z via (x, y) -> (-x, -y).
    for (Int v = std::max<Int>(lo_, 0); v <= hi_; ++v) {
      tick();
      const auto q = spatial_requirement(v, t.a);
      if (!q || !feasible(spec_.width - 1, *q)) continue;
      x_[0] = v;
      if (search_x(1, *q, hi_)) {
        WitnessPair w(LatticeVector(x_), LatticeVector(y_), form_, t);
        if (!verify_witness(w)) throw Error(ErrorCode::InternalInvariantBroken, "search produced a non-witness");
        return w;
      }
    }
    return std::nullopt;
  }

 private:
  void tick() {
    if (++nodes_ > budget_.node_cap) {
      throw Error(ErrorCode::BoundTooLargeForBudget,
                  "search for " + target_.to_string() + " in " + spec_.name() + " with bound " +
                      std::to_string(spec_.coordinate_bound) + " exceeded " + std::to_string(budget_.node_cap) +
                      " nodes");
    }
  }

  /// Required sum of squares of slots 1..n given slot 0 and the norm.
  std::optional<Int> spatial_requirement(Int head, Int norm) const {
    const __int128 h2 = static_cast<__int128>(head) * head;
    const __int128 q = form_ == FormKind::Euclidean ? norm - h2 : h2 - norm;
    if (q < 0 || q > max_r_) return std::nullopt;
    return static_cast<Int>(q);
  }

  bool feasible(std::size_t slots, Int r) const {
    if (r < 0 || r > max_r_) return false;
    return table_[slots * static_cast<std::size_t>(max_r_ + 1) + static_cast<std::size_t>(r)] != 0;
  }

  // table_[k][r]: r is a sum of k squares of values in [lo, hi].
  void ensure_table(Int needed) {
    if (needed <= max_r_) return;
    max_r_ = std::max(needed, 2 * max_r_);
    const auto row = static_cast<std::size_t>(max_r_ + 1);
    table_.assign(spec_.width * row, 0);
    table_[0] = 1;
    const Int top = std::max(-lo_, hi_);
    for (std::size_t k = 1; k < spec_.width; ++k) {
      const char* prev = &table_[(k - 1) * row];
      char* cur = &table_[k * row];
      for (Int v = 0; v <= top; ++v) {
        const Int s = v * v;
        if (s > max_r_) break;
        for (Int r = s; r <= max_r_; ++r) {
          if (prev[r - s]) cur[r] = 1;
        }
      }
    }
  }

  // Spatial part of x: nonincreasing, nonnegative, each entry <= cap.
  bool search_x(std::size_t i, Int remaining, Int cap) {
    if (i == spec_.width) return remaining == 0 && start_y();
    const auto rest = static_cast<__int128>(spec_.width - i - 1);
    const Int top = std::min(cap, isqrt(remaining));
    for (Int v = 0; v <= top; ++v) {
      tick();
      const Int r = remaining - v * v;
      if (r > rest * v * v || !feasible(spec_.width - i - 1, r)) continue;
      x_[i] = v;
      if (search_x(i + 1, r, v)) return true;
    }
    return false;
  }

  bool start_y() {
    for (std::size_t i = spec_.width; i-- > 1;) suffix_norm_[i] = suffix_norm_[i + 1] + x_[i] * x_[i];
    for (Int v = lo_; v <= hi_; ++v) {
      tick();
      const auto q = spatial_requirement(v, target_.c);
      if (!q || !feasible(spec_.width - 1, *q)) continue;
      const __int128 head = static_cast<__int128>(x_[0]) * v;
      const __int128 dot = form_ == FormKind::Euclidean ? target_.b - head : head - target_.b;
      y_[0] = v;
      if (search_y(1, *q, dot)) return true;
    }
    return false;
  }

  // `dot` is what sum_{j >= i} x_j y_j must still equal.
  bool search_y(std::size_t i, Int remaining, __int128 dot) {
    if (i == spec_.width) return remaining == 0 && dot == 0;
    const __int128 xs = suffix_norm_[i];
    if (dot * dot > xs * remaining) return false;
    const std::size_t rest = spec_.width - i - 1;
    const Int root = isqrt(remaining);
    const bool same_run = i > 1 && x_[i] == x_[i - 1];
    Int low = std::max(lo_, -root);
    if (x_[i] == 0) low = std::max<Int>(low, 0);
    const Int high = same_run ? std::min(root, y_[i - 1]) : std::min(hi_, root);
    for (Int v = low; v <= high; ++v) {
      tick();
      const Int r = remaining - v * v;
      if (!feasible(rest, r)) continue;
      y_[i] = v;
      if (search_y(i + 1, r, dot - static_cast<__int128>(x_[i]) * v)) return true;
    }
    return false;
  }

  LatticeSpec spec_;
  FormKind form_;
  SearchBudget budget_;
  Int lo_ = 0;
  Int hi_ = 0;
  Int max_r_ = -1;
  std::vector<char> table_;
  Triple target_;
  std::uint64_t nodes_ = 0;
  std::vector<Int> x_;
  std::vector<Int> y_;
  std::vector<Int> suffix_norm_;
};

/// First witness for t inside the window, or none. For the Euclidean form a
/// none is a proof of nonexistence when euclidean_conclusive(spec, t);
/// for the Lorentzian form it only speaks about the window.
inline std::optional<WitnessPair> brute_search(const LatticeSpec& spec, FormKind form, const Triple& t,
                                               SearchBudget budget = {}) {
  return PairSearcher(spec, form, budget).find(t);
}

// ---------------------------------------------------------------------------
// Completeness scans
// ---------------------------------------------------------------------------

struct ScanEntry {
  Triple target;
  std::optional<WitnessPair> witness;
  /// True when the entry is settled: a witness exists, or the window was
  /// provably large enough (Euclidean form only).
  bool conclusive = false;
};

struct ScanReport {
  LatticeSpec spec;
  FormKind form = FormKind::Lorentzian;
  Int max_b = 0;
  Int norm_cap = 0;  // a, c <= norm_cap (Euclidean only; 0 for Lorentzian)
  std::vector<ScanEntry> entries;

  std::size_t witnessed() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const ScanEntry& e) { return e.witness.has_value(); }));
  }
  std::size_t unwitnessed() const { return entries.size() - witnessed(); }

  std::vector<Triple> unwitnessed_triples() const {
    std::vector<Triple> out;
    for (const auto& e : entries) {
      if (!e.witness) out.push_back(e.target);
    }
    return out;
  }
};

struct ScanOptions {
  std::size_t shards = 1;
  SearchBudget budget;
  /// Euclidean scans only: cap on a and c. Defaults to bound^2.
  std::optional<Int> norm_cap;
};

/// Positive triples with b <= max_b, ordered by (b, a, c). Lorentzian:
/// b^2 >= ac. Euclidean: b^2 <= ac with a, c <= norm_cap.
inline std::vector<Triple> scan_triples(FormKind form, Int max_b, Int norm_cap) {
  std::vector<Triple> out;
  for (Int b = 1; b <= max_b; ++b) {
    const Int b2 = checked::mul(b, b);
    if (form == FormKind::Lorentzian) {
      for (Int a = 1; a <= b2; ++a) {
        for (Int c = 1; c <= b2 / a; ++c) out.push_back({a, b, c});
      }
    } else {
      for (Int a = 1; a <= norm_cap; ++a) {
        for (Int c = (b2 + a - 1) / a; c <= norm_cap; ++c) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

/// Searches every triple in scan_triples. Shards split the triple list
/// round-robin and run concurrently with private searchers; the report is
/// assembled in canonical triple order, so it does not depend on `shards`.
inline ScanReport completeness_scan(LatticeSpec spec, FormKind form, Int max_b, Int bound, ScanOptions options = {}) {
  if (max_b < 1) throw Error(ErrorCode::PreconditionViolated, "max_b must be at least 1");
  if (options.shards < 1) throw Error(ErrorCode::PreconditionViolated, "shard count must be at least 1");
  spec.coordinate_bound = bound;
  spec.validate();

  ScanReport report;
  report.spec = spec;
  report.form = form;
  report.max_b = max_b;
  report.norm_cap = form == FormKind::Euclidean ? options.norm_cap.value_or(checked::mul(bound, bound)) : 0;

  const auto triples = scan_triples(form, max_b, report.norm_cap);
  report.entries.resize(triples.size());

  auto run_shard = [&](std::size_t shard) {
    PairSearcher searcher(spec, form, options.budget);
    for (std::size_t i = shard; i < triples.size(); i += options.shards) {
      ScanEntry& e = report.entries[i];
      e.target = triples[i];
      e.witness = searcher.find(triples[i]);
      e.conclusive = e.witness.has_value() || (form == FormKind::Euclidean && euclidean_conclusive(spec, triples[i]));
    }
  };

  if (options.shards == 1) {
    run_shard(0);
    return report;
  }
  std::vector<std::exception_ptr> errors(options.shards);
  {
    std::vector<std::jthread> workers;
    for (std::size_t s = 0; s < options.shards; ++s) {
      workers.emplace_back([&, s] {
        try {
          run_shard(s);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cross-validation of the constructor
// ---------------------------------------------------------------------------

struct CrossFailure {
  Triple target;
  std::string what;
};

struct CrossValidation {
  std::size_t checked = 0;
  std::vector<CrossFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Replays the certificate, re-checks the DJ property of both base vectors,
/// and asks brute_search for an independent witness in N^{n+1} within the
/// certificate's own coordinate range. Returns the first problem found.
inline std::optional<std::string> audit_certificate(const WitnessCertificate& cert, SearchBudget budget = {}) {
  if (!is_dj_type(cert.base_x().vec()) || !is_dj_type(cert.base_y().vec())) return "base vector not of DJ type";
  std::optional<WitnessPair> pair;
  try {
    pair = replay(cert);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  const LatticeSpec window{LatticeKind::Nonnegative, pair->x.size(),
                           std::max(pair->x.max_coordinate(), pair->y.max_coordinate())};
  try {
    if (!brute_search(window, FormKind::Lorentzian, cert.target(), budget)) return "brute_search found no witness";
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

/// Every positive triple with b <= max_b and b^2 >= ac must yield a
/// certificate that survives audit_certificate.
inline CrossValidation cross_validate(Int max_b, SearchBudget budget = {}) {
  CrossValidation result;
  for (const Triple& t : scan_triples(FormKind::Lorentzian, max_b, 0)) {
    ++result.checked;
    try {
      if (auto problem = audit_certificate(represent_general(t), budget)) result.failures.push_back({t, *problem});
    } catch (const Error& e) {
      result.failures.push_back({t, e.what()});
    }
  }
  return result;
}

}  // namespace corrwit
