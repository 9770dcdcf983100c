#include <gtest/gtest.h>

#include "sdw/finite_field.hpp"
#include "sdw/grothendieck.hpp"

namespace sdw {
namespace {

// Full enumeration of F_q^dim with Q evaluated directly.
std::uint64_t naive_count(const CountSpec& s) {
  const int nz = 2 * s.n + 2;
  const bool with_mu = s.locus == Locus::Cone2Complement || s.locus == Locus::Cone2ComplementMinusHyperplanes;
  const int dim = nz + (with_mu ? 2 : 0);
  std::vector<std::int64_t> coeff(nz, 1);
  for (int a = 0; a < 4; ++a) coeff[a] = (s.w[a] % s.q + s.q) % s.q * ((s.w[a] % s.q + s.q) % s.q) % s.q;
  std::vector<std::uint32_t> x(dim, 0);
  std::uint64_t hits = 0;
  while (true) {
    std::int64_t q = 0;
    bool all_zero = true;
    for (int k = 0; k < nz; ++k) {
      q = (q + coeff[k] * x[k] % s.q * x[k]) % s.q;
      all_zero = all_zero && x[k] == 0;
    }
    bool keep = false;
    switch (s.locus) {
      case Locus::QuadricComplementAffine:
      case Locus::Cone2Complement: keep = q != 0; break;
      case Locus::Cone2ComplementMinusHyperplanes: {
        const std::uint32_t mu2 = x[nz + 1];
        keep = q != 0 && mu2 != 1 && mu2 != s.q - 1;
        break;
      }
      case Locus::QuadricProjective: keep = q == 0 && !all_zero; break;
    }
    hits += keep;
    int k = 0;
    while (k < dim && ++x[k] == s.q) x[k++] = 0;
    if (k == dim) break;
  }
  if (s.locus == Locus::QuadricProjective) hits /= s.q - 1;
  return hits;
}

TEST(PointCount, MatchesNaiveEnumeration) {
  for (std::uint32_t q : {5u, 13u})
    for (auto w : {std::array<std::int64_t, 4>{1, 1, 1, 1}, std::array<std::int64_t, 4>{1, 2, 1, 3}})
      for (Locus l : {Locus::QuadricComplementAffine, Locus::QuadricProjective, Locus::Cone2Complement,
                      Locus::Cone2ComplementMinusHyperplanes}) {
        CountSpec s{1, q, w, l};
        if (q == 13 && (l == Locus::Cone2Complement || l == Locus::Cone2ComplementMinusHyperplanes)) continue;
        EXPECT_EQ(count_points(s), naive_count(s)) << q << " " << locus_name(l);
      }
  CountSpec s2{2, 5, {1, 2, 1, 3}, Locus::QuadricComplementAffine};
  EXPECT_EQ(count_points(s2), naive_count(s2));
}

TEST(PointCount, RealizesGrothendieckClasses) {
  for (std::uint32_t q : {5u, 13u, 17u})
    for (int n : {1, 2})
      for (Locus l : {Locus::QuadricComplementAffine, Locus::QuadricProjective, Locus::Cone2Complement,
                      Locus::Cone2ComplementMinusHyperplanes}) {
        CountSpec s{n, q, {1, 2, 1, 3}, l};
        try {
          EXPECT_EQ(mpz_class(std::to_string(count_points(s))), expected_class(s).eval(q))
              << q << " n=" << n << " " << locus_name(l);
        } catch (const CountGuardError&) {
        }
      }
}

TEST(PointCount, KnownValues) {
  EXPECT_EQ(count_points({1, 5, {1, 1, 1, 1}, Locus::QuadricComplementAffine}), 480u);
  EXPECT_EQ(c2n_closed(1).eval(5), 480);
  EXPECT_EQ(count_points({1, 5, {1, 2, 1, 3}, Locus::Cone2ComplementMinusHyperplanes}), 7200u);
  EXPECT_EQ(expected_class({1, 5, {1, 1, 1, 1}, Locus::QuadricProjective}), quadric_class(1));
}

TEST(PointCount, Guard) {
  EXPECT_THROW(count_points({4, 13, {1, 1, 1, 1}, Locus::QuadricComplementAffine}), CountGuardError);
}

TEST(Validate, RejectsBadFields) {
  EXPECT_THROW(validate({1, 7, {1, 1, 1, 1}, Locus::QuadricComplementAffine}), std::invalid_argument);
  EXPECT_THROW(validate({1, 9, {1, 1, 1, 1}, Locus::QuadricComplementAffine}), std::invalid_argument);
  EXPECT_THROW(validate({1, 5, {1, 5, 1, 1}, Locus::QuadricComplementAffine}), std::invalid_argument);
  EXPECT_NO_THROW(validate({1, 13, {1, 2, 1, 3}, Locus::QuadricComplementAffine}));
}

TEST(FieldHelpers, PrimesAndSquareRoots) {
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(9));
  EXPECT_FALSE(is_prime(1));
  for (std::uint64_t q : {5u, 13u, 17u, 29u, 97u}) {
    const auto r = sqrt_minus_one(q);
    ASSERT_TRUE(r.has_value()) << q;
    EXPECT_EQ(*r * *r % q, q - 1);
  }
  EXPECT_FALSE(sqrt_minus_one(7).has_value());
  EXPECT_FALSE(sqrt_minus_one(11).has_value());
}

TEST(Locus, Names) {
  for (Locus l : {Locus::QuadricComplementAffine, Locus::QuadricProjective, Locus::Cone2Complement,
                  Locus::Cone2ComplementMinusHyperplanes})
    EXPECT_EQ(parse_locus(locus_name(l)), l);
  EXPECT_EQ(parse_locus("quadric-complement"), Locus::QuadricComplementAffine);
  EXPECT_THROW(parse_locus("bogus"), std::invalid_argument);
}

TEST(SplitForm, IdentityHolds) {
  for (std::uint64_t q : {5u, 13u, 17u})
    for (auto w : {std::array<std::int64_t, 4>{1, 1, 1, 1}, std::array<std::int64_t, 4>{1, 2, 1, 3},
                   std::array<std::int64_t, 4>{2, 3, 4, 1}})
      for (int n : {1, 2, 3}) EXPECT_TRUE(split_form_check(q, w, n)) << q << " n=" << n;
  EXPECT_THROW(split_form_check(7, {1, 1, 1, 1}), std::invalid_argument);
}

}  // namespace
}  // namespace sdw
