#include <doctest.h>

#include <sstream>

#include "hclab/errors.hpp"
#include "hclab/profile.hpp"
#include "hclab/structure.hpp"
#include "oracles.hpp"

using namespace hclab;

TEST_CASE("small profiles") {
  const auto p1 = bivariate_profile(1);
  CHECK(p1.at(0, 0) == 1);
  CHECK(p1.at(1, 0) == 1);
  CHECK(p1.at(0, 1) == 1);
  CHECK(p1.total() == 3);

  const auto p2 = bivariate_profile(2);
  CHECK(p2.at(1, 0) == 2);
  CHECK(p2.at(2, 0) == 1);
  CHECK(p2.at(1, 1) == 0);
  CHECK(p2.total() == 7);
  CHECK(p2.size_counts() == std::vector<BigInt>{1, 4, 2, 0, 0});

  CHECK_THROWS_AS(bivariate_profile(7), DimensionTooLarge);
  CHECK_THROWS_AS(p2.at(3, 0), RangeError);
}

TEST_CASE("profiles match the backtracking oracle entry by entry") {
  for (int d = 1; d <= 5; ++d) {
    const auto p = bivariate_profile(d);
    const auto o = oracle::backtrack_profile(d);
    for (std::size_t a = 0; a <= p.side_size(); ++a)
      for (std::size_t b = 0; b <= p.side_size(); ++b) {
        auto it = o.find({static_cast<int>(a), static_cast<int>(b)});
        CHECK(p.at(a, b) == (it == o.end() ? 0 : it->second));
      }
  }
}

TEST_CASE("partition function values") {
  CHECK(evaluate_partition(bivariate_profile(1), Rational(2)) == 5);
  for (auto [d, z] : std::vector<std::pair<int, int>>{{2, 7}, {3, 35}, {4, 743}, {5, 254475}})
    CHECK(evaluate_partition(bivariate_profile(d), Rational(1)) == z);
  const auto p2 = bivariate_profile(2);
  // 1 + 4 lambda + 2 lambda^2 at lambda = 1/3.
  CHECK(evaluate_partition(p2, Rational(1, 3)) == Rational(23, 9));
  CHECK(evaluate_partition(p2, LogValue::from_double(1.0 / 3)).value() == doctest::Approx(23.0 / 9).epsilon(1e-12));
  CHECK_THROWS_AS(evaluate_partition(p2, Rational(0)), NonpositiveLambda);
  CHECK_THROWS_AS(evaluate_partition(p2, Rational(-1)), NonpositiveLambda);

  // Trivial lower bound 2(1+lambda)^{2^{d-1}} - 1.
  for (int d = 1; d <= 5; ++d) {
    const auto p = bivariate_profile(d);
    for (Rational l : {Rational(1, 7), Rational(1), Rational(5, 2)})
      CHECK(evaluate_partition(p, l) >= 2 * pow_rational(1 + l, static_cast<unsigned>(p.side_size())) - 1);
  }
}

TEST_CASE("min-side law") {
  const auto pmf2 = min_side_pmf(bivariate_profile(2), Rational(1));
  CHECK(pmf2[0].value == 1);
  CHECK(min_side_pmf(bivariate_profile(1), Rational(1))[0].value == 1);
  const auto pmf3 = min_side_pmf(bivariate_profile(3), Rational(1));
  CHECK(pmf3[1].value > 0);
  for (int d = 1; d <= 5; ++d) {
    for (Rational l : {Rational(1, 5), Rational(1), Rational(4)}) {
      Rational sum = 0;
      for (const auto& p : min_side_pmf(bivariate_profile(d), l)) {
        CHECK(p.value >= 0);
        CHECK(p.value <= 1);
        sum += p.value;
      }
      CHECK(sum == 1);
    }
  }
  const ExactProbability half{Rational(2, 4)};
  CHECK(half.numerator() == 1);
  CHECK(half.denominator() == 2);
  CHECK(half.log_value().log() == doctest::Approx(std::log(0.5)));
}

TEST_CASE("restricted profiles") {
  const VertexSet none2(2);
  const auto r = restricted_profile(2, VertexSet::parse(2, {"11"}), none2);
  CHECK(r.at(1, 0) == 1);
  CHECK(r.at(2, 0) == 1);
  CHECK(r.total() == 2);
  CHECK_THROWS_AS(restricted_profile(2, VertexSet::parse(2, {"00", "01"}), none2), NotIndependentError);
  CHECK_THROWS_AS(restricted_profile(2, VertexSet::parse(2, {"00"}), VertexSet::parse(2, {"00"})), PreconditionError);
  for (int d = 1; d <= 4; ++d) CHECK(restricted_profile(d, VertexSet(d), VertexSet(d)) == bivariate_profile(d));

  // Forced odd vertex, forced-out vertices: compare against the backtracking oracle.
  const int d = 4;
  const VertexSet in = VertexSet::parse(d, {"0001", "0111"});
  const VertexSet out = VertexSet::parse(d, {"0000", "1110"});
  std::uint64_t expected = 0;
  oracle::for_each_independent(d, [&](oracle::Mask s) {
    expected += (s >> 1 & 1) && (s >> 7 & 1) && !(s & 1) && !(s >> 14 & 1);
  });
  CHECK(restricted_profile(d, in, out).total() == expected);
}

TEST_CASE("conditional occupancy") {
  CHECK(conditional_occupancy(2, Rational(1), parse_vertex("11"), parse_vertex("00")).value == Rational(1, 2));
  CHECK(conditional_occupancy(2, Rational(1), parse_vertex("01"), parse_vertex("00")).value == 0);
  CHECK_THROWS_AS(conditional_occupancy(2, Rational(1), 0, 0), PreconditionError);
  CHECK_THROWS_AS(conditional_occupancy(6, Rational(1), 0, 3), DimensionTooLarge);
  const int d = 4;
  for (Vertex t : {Vertex{3}, Vertex{7}, Vertex{15}}) {
    const auto p = conditional_occupancy(d, Rational(3, 2), 0, t);
    CHECK(p.to_double() == doctest::Approx(oracle::conditional_occupancy(d, 1.5, 0, t)).epsilon(1e-12));
    // Flipping coordinate 0 on both vertices is an automorphism.
    CHECK(conditional_occupancy(d, Rational(3, 2), 1, t ^ 1).value == p.value);
  }
}

TEST_CASE("profile file round trip") {
  for (int d = 1; d <= 5; ++d) {
    const auto p = bivariate_profile(d);
    const std::string text = profile_to_string(p);
    CHECK(profile_from_string(text) == p);
    CHECK(profile_to_string(profile_from_string(text)) == text);
  }
  CHECK(profile_to_string(bivariate_profile(1)) == "d=1\n0 0 1\n0 1 1\n1 0 1\n");
  CHECK_THROWS_AS(profile_from_string("d=1\n0 0 1\n1 0 1\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(profile_from_string("d=1\n0 0 1"), ParseError);
  CHECK_THROWS_AS(profile_from_string("d=1\n0 0 01\n"), ParseError);
  CHECK_THROWS_AS(profile_from_string("d=1\n0  0 1\n"), ParseError);
  CHECK_THROWS_AS(profile_from_string("x=1\n"), ParseError);
}

TEST_CASE("structure of the minority side") {
  const auto s2 = structure_pmf(2, Rational(1));
  REQUIRE(s2.size() == 1);
  CHECK(s2.begin()->first == StructureOutcome{0, 0, 0});
  CHECK(s2.begin()->second.value == 1);

  const auto s3 = structure_pmf(3, Rational(1));
  CHECK(s3.at(StructureOutcome{0, 0, 0}).value == Rational(31, 35));
  CHECK(s3.at(StructureOutcome{1, 1, 1}).value == Rational(4, 35));

  for (int d = 1; d <= 5; ++d) {
    const auto sp = structure_profile(d);
    const auto marginal = sp.min_side_marginal();
    const auto p = bivariate_profile(d);
    std::vector<BigInt> expect(p.side_size() + 1, BigInt(0));
    for (std::size_t a = 0; a <= p.side_size(); ++a)
      for (std::size_t b = 0; b <= p.side_size(); ++b) expect[std::min(a, b)] += p.at(a, b);
    CHECK(marginal == expect);
    for (const auto& [key, count] : sp.counts)
      if (key.min_size == 0) CHECK((key.k == 0 && key.cl == 0));
  }
  // Ties go to the even side.
  CHECK(minority_side(3, (1u << 0) | (1u << 7)) == std::vector<Vertex>{0});
}
