#include "corrwit/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "corrwit/serialize.hpp"

namespace corrwit {
namespace {

constexpr LatticeSpec kZ4{LatticeKind::AllIntegers, 4, 5};

TEST(BruteSearch, IntegerFourSpaceMissesNineteen) {
  EXPECT_FALSE(brute_search(kZ4, FormKind::Euclidean, {1, 2, 19}).has_value());
  EXPECT_TRUE(euclidean_conclusive(kZ4, {1, 2, 19}));
  // 19 = 16+1+1+1 = 9+9+1+0 and neither pairs with a unit vector to give 2.
  EXPECT_EQ(sum_of_squares_representations(19, 4), (std::vector<std::vector<Int>>{{4, 1, 1, 1}, {3, 3, 1, 0}}));
}

TEST(BruteSearch, NaturalEightSpaceMissesEight) {
  const LatticeSpec n8{LatticeKind::Nonnegative, 8, 3};
  EXPECT_FALSE(brute_search(n8, FormKind::Euclidean, {8, 1, 8}).has_value());
  EXPECT_TRUE(euclidean_conclusive(n8, {8, 1, 8}));
  EXPECT_EQ(sum_of_squares_representations(8, 8).size(), 3u);
}

TEST(BruteSearch, UnitTarget) {
  const auto w = brute_search({LatticeKind::Nonnegative, 7, 1}, FormKind::Lorentzian, {1, 1, 1});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->x, (LatticeVector{1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(w->y, w->x);
}

TEST(BruteSearch, WidthOneIsSquares) {
  const LatticeSpec n1{LatticeKind::Nonnegative, 1, 2};
  EXPECT_FALSE(brute_search(n1, FormKind::Lorentzian, {1, 1, 2}).has_value());
  const auto w = brute_search(n1, FormKind::Lorentzian, {1, 2, 4});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->y, (LatticeVector{2}));
}

TEST(BruteSearch, FindsIntegerWitnessWithNegativeEntries) {
  // x*x = 2, x*y = 0, y*y = 2 needs opposite signs in some slot.
  const auto w = brute_search({LatticeKind::AllIntegers, 2, 1}, FormKind::Euclidean, {2, 0, 2});
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(verify_witness(*w));
  EXPECT_FALSE(brute_search({LatticeKind::Nonnegative, 2, 1}, FormKind::Euclidean, {2, 0, 2}).has_value());
}

// Independent enumeration of the whole window, no pruning or symmetry.
bool exists_naive(const LatticeSpec& spec, FormKind form, const Triple& t) {
  const Int lo = spec.kind == LatticeKind::Nonnegative ? 0 : -spec.coordinate_bound;
  const Int hi = spec.coordinate_bound;
  std::vector<LatticeVector> all;
  std::vector<Int> v(spec.width, lo);
  for (;;) {
    all.emplace_back(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == hi) v[i++] = lo;
    if (i == v.size()) break;
    ++v[i];
  }
  for (const auto& x : all) {
    if (inner(form, x, x) != t.a) continue;
    for (const auto& y : all) {
      if (inner(form, x, y) == t.b && inner(form, y, y) == t.c) return true;
    }
  }
  return false;
}

TEST(BruteSearch, AgreesWithNaiveEnumeration) {
  for (auto kind : {LatticeKind::Nonnegative, LatticeKind::AllIntegers}) {
    for (auto form : {FormKind::Euclidean, FormKind::Lorentzian}) {
      for (std::size_t width = 1; width <= 3; ++width) {
        const LatticeSpec spec{kind, width, 2};
        for (Int a = -3; a <= 6; ++a) {
          for (Int b = -3; b <= 4; ++b) {
            for (Int c = a; c <= 6; ++c) {
              const Triple t{a, b, c};
              ASSERT_EQ(brute_search(spec, form, t).has_value(), exists_naive(spec, form, t))
                  << spec.name() << " " << to_string(form) << " " << t.to_string();
            }
          }
        }
      }
    }
  }
}

TEST(BruteSearch, BudgetExceeded) {
  try {
    brute_search({LatticeKind::AllIntegers, 8, 6}, FormKind::Euclidean, {200, 1, 200}, SearchBudget{1000});
    FAIL() << "expected BoundTooLargeForBudget";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundTooLargeForBudget);
  }
}

TEST(BruteSearch, EuclideanConclusiveBound) {
  // A witness coordinate never exceeds floor(sqrt(max(a, c))).
  for (Int a = 1; a <= 20; ++a) {
    for (Int c = 1; c <= 20; ++c) {
      for (Int b = 0; b * b <= a * c; ++b) {
        const Triple t{a, b, c};
        const LatticeSpec wide{LatticeKind::AllIntegers, 3, 6};
        const auto w = brute_search(wide, FormKind::Euclidean, t);
        if (!w) continue;
        const Int cap = isqrt(std::max(a, c));
        for (Int v : w->x) ASSERT_LE(v * v, a);
        for (Int v : w->y) ASSERT_LE(v * v, c);
        ASSERT_EQ(brute_search({LatticeKind::AllIntegers, 3, cap}, FormKind::Euclidean, t).has_value(), true);
      }
    }
  }
}

TEST(Scan, NaturalSevenLorentzianSmall) {
  const auto r = completeness_scan({LatticeKind::Nonnegative, 7, 0}, FormKind::Lorentzian, 5, 6);
  EXPECT_GT(r.entries.size(), 0u);
  EXPECT_EQ(r.unwitnessed(), 0u);
  for (const auto& e : r.entries) {
    ASSERT_TRUE(e.witness.has_value());
    ASSERT_TRUE(verify_witness(*e.witness));
    ASSERT_TRUE(e.target.hyperbolic());
  }
}

TEST(Scan, IntegerFourEuclideanContainsNineteen) {
  const auto r = completeness_scan({LatticeKind::AllIntegers, 4, 0}, FormKind::Euclidean, 2, 5);
  const auto missing = r.unwitnessed_triples();
  EXPECT_NE(std::find(missing.begin(), missing.end(), Triple{1, 2, 19}), missing.end());
  for (const auto& e : r.entries) {
    ASSERT_TRUE(e.conclusive);
    if (e.witness) {
      ASSERT_TRUE(verify_witness(*e.witness));
    }
  }
}

TEST(Scan, WidthOneLorentzian) {
  // Squares only: x = (p), y = (q) with p^2 = a, pq = b, q^2 = c.
  const auto r = completeness_scan({LatticeKind::Nonnegative, 1, 0}, FormKind::Lorentzian, 2, 2);
  for (const auto& e : r.entries) {
    const Int p = isqrt(e.target.a);
    const Int q = isqrt(e.target.c);
    const bool square_pair = p * p == e.target.a && q * q == e.target.c && p * q == e.target.b;
    ASSERT_EQ(e.witness.has_value(), square_pair) << e.target.to_string();
  }
  EXPECT_EQ(r.unwitnessed_triples().front(), (Triple{1, 2, 1}));
}

TEST(Scan, TripleOrderAndRange) {
  const auto ts = scan_triples(FormKind::Lorentzian, 3, 0);
  EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end(), [](const Triple& l, const Triple& r) {
    return std::tie(l.b, l.a, l.c) < std::tie(r.b, r.a, r.c);
  }));
  for (const auto& t : ts) EXPECT_TRUE(t.positive() && t.hyperbolic());
  EXPECT_EQ(ts.front(), (Triple{1, 1, 1}));
  EXPECT_EQ(scan_triples(FormKind::Lorentzian, 1, 0).size(), 1u);
}

TEST(Scan, ShardingIsDeterministic) {
  const LatticeSpec spec{LatticeKind::Nonnegative, 5, 0};
  ScanOptions one;
  const auto base = json::scan_report_lines(completeness_scan(spec, FormKind::Lorentzian, 6, 8, one));
  for (std::size_t shards : {2u, 3u, 7u}) {
    ScanOptions opt;
    opt.shards = shards;
    EXPECT_EQ(json::scan_report_lines(completeness_scan(spec, FormKind::Lorentzian, 6, 8, opt)), base);
  }
  EXPECT_EQ(json::scan_report_lines(completeness_scan(spec, FormKind::Lorentzian, 6, 8, one)), base);
}

TEST(Scan, ShardErrorsPropagate) {
  ScanOptions opt;
  opt.shards = 3;
  opt.budget.node_cap = 10;
  EXPECT_THROW(completeness_scan({LatticeKind::Nonnegative, 7, 0}, FormKind::Lorentzian, 4, 20, opt), Error);
  EXPECT_THROW(completeness_scan({LatticeKind::Nonnegative, 7, 0}, FormKind::Lorentzian, 0, 2), Error);
}

TEST(CrossValidate, SmallRange) {
  const auto r = cross_validate(1);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checked, 1u);
}

TEST(CrossValidate, UpToTen) {
  const auto r = cross_validate(10);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front().target.to_string() + ": " +
                                                        r.failures.front().what);
  EXPECT_EQ(r.checked, scan_triples(FormKind::Lorentzian, 10, 0).size());
}

TEST(CrossValidate, CorruptedCertificateIsReported) {
  const auto good = represent_general({1, 2, 4});
  EXPECT_FALSE(audit_certificate(good).has_value());
  const WitnessCertificate bad(good.base_x(), good.base_y(), good.moves(), {1, 2, 5}, good.ambient_n());
  EXPECT_TRUE(audit_certificate(bad).has_value());
  const WitnessCertificate extra(good.base_x(), good.base_y(), {Move::Shear, Move::Shear}, good.target(),
                                 good.ambient_n());
  EXPECT_TRUE(audit_certificate(extra).has_value());
}

}  // namespace
}  // namespace corrwit
