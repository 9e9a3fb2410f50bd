#include <cmath>
#include <numbers>

#include "conewave/errors.hpp"
#include "conewave/spectrum.hpp"
#include "doctest.h"

using namespace conewave;

TEST_CASE("sphere harmonic multiplicities") {
  for (int k = 0; k < 6; ++k) {
    CHECK(sphere_multiplicity(3, k) == 2 * k + 1);
    CHECK(sphere_multiplicity(4, k) == (k + 1) * (k + 1));
  }
  CHECK(sphere_multiplicity(2, 0) == 1);
  CHECK(sphere_multiplicity(2, 3) == 2);
}

TEST_CASE("orders of the round sphere") {
  // Without potential, ν_k = k + (n-2)/2.
  const auto s3 = build_sphere_spectrum(3, 1.0, 0.0, 4);
  REQUIRE(s3.size() == 5);
  for (std::size_t k = 0; k < s3.size(); ++k) CHECK(s3.nu(k) == doctest::Approx(k + 0.5));
  CHECK(s3.total_multiplicity() == 25);

  const auto s5 = build_sphere_spectrum(5, 1.0, 0.0, 2);
  CHECK(s5.nu0() == doctest::Approx(1.5));
  CHECK(s5.eigenvalue(1) == doctest::Approx(4.0));

  // Potential shifts ν0² by v0; radius scales the eigenvalues.
  const auto sv = build_sphere_spectrum(3, 2.0, 0.75, 1);
  CHECK(sv.nu0() == doctest::Approx(1.0));
  CHECK(sv.eigenvalue(1) == doctest::Approx(2.0 / 4.0 + 0.75));
}

TEST_CASE("non-positive operator is rejected") {
  CHECK_THROWS_AS(build_sphere_spectrum(3, 1.0, -0.25, 0), NonPositiveOperator);
  CHECK_THROWS_AS(build_sphere_spectrum(3, 1.0, -0.3, 0), NonPositiveOperator);
  CHECK_THROWS_AS(SpectralData(3, {{0.0, 1}}), NonPositiveOperator);
  CHECK_NOTHROW(build_sphere_spectrum(3, 1.0, -0.24, 0));
}

TEST_CASE("modes are sorted and json round trips") {
  SpectralData s(4, {{2.5, 3}, {0.7, 1}, {1.2, 2}}, "custom", 2.0);
  CHECK(s.nu0() == doctest::Approx(0.7));
  CHECK(s.nu(2) == doctest::Approx(2.5));
  const auto back = spectral_from_json(to_json(s));
  CHECK(back == s);
  CHECK(back.hash() == s.hash());
  SpectralData t(4, {{2.5, 3}, {0.7, 1}, {1.2, 1}}, "custom", 2.0);
  CHECK(t.hash() != s.hash());
}

TEST_CASE("extended reals") {
  const auto inf = ExtendedReal::infinity();
  CHECK(inf.is_infinite());
  CHECK(inf.reciprocal() == 0.0);
  CHECK(ExtendedReal(4.0).reciprocal() == 0.25);
  CHECK(extended_from_json("inf") == inf);
  CHECK(extended_from_json(nlohmann::json(3.0)) == ExtendedReal(3.0));
  CHECK(extended_from_json(to_json(inf)) == inf);
  CHECK(to_string(inf) == "inf");
}

TEST_CASE("admissible pairs") {
  const auto inf = ExtendedReal::infinity();
  CHECK(scaling_regularity(inf, 2.0, 3) == doctest::Approx(0.0));
  CHECK(scaling_regularity(4.0, 4.0, 3) == doctest::Approx(0.5));
  CHECK(in_lambda_s({inf, 2.0, 0.0}, 3));
  CHECK(in_lambda_s({4.0, 4.0, {}}, 3));
  CHECK_FALSE(in_lambda_s({2.0, inf, {}}, 3));  // endpoint excluded in n = 3
  CHECK(in_lambda_s({2.0, inf, {}}, 4));
  CHECK_FALSE(in_lambda_s({2.0, 4.0, {}}, 3));  // above the wave line
  CHECK_FALSE(in_lambda_s({4.0, 4.0, 0.7}, 3));  // wrong claimed s

  // Tip restriction 1/r > 1/2 - (1+ν0)/n.
  CHECK(in_lambda_s_nu0({4.0, 4.0, {}}, 3, 0.5));
  CHECK_FALSE(in_lambda_s_nu0({4.0, 100.0, {}}, 3, 0.3));
  CHECK(in_lambda_s({4.0, 100.0, {}}, 3));
  CHECK(in_lambda_s_nu0({4.0, 100.0, {}}, 3, 0.6));
}

TEST_CASE("cone distance") {
  CHECK(cone_distance({1.0}, {2.0}, 0.0) == doctest::Approx(1.0));
  CHECK(cone_distance({1.0}, {1.0}, std::numbers::pi / 3) == doctest::Approx(1.0));
  CHECK(cone_distance({1.0}, {2.0}, std::numbers::pi) == doctest::Approx(3.0));
  CHECK(cone_distance({1.0}, {2.0}, 4.0) == doctest::Approx(3.0));
  // Law of cosines below π.
  const double d = 1.1;
  CHECK(cone_distance({2.0}, {3.0}, d) == doctest::Approx(std::sqrt(4 + 9 - 12 * std::cos(d))));
}
