#include <doctest.h>

#include "accwb/error.hpp"
#include "accwb/multilinear.hpp"
#include "support.hpp"

using namespace accwb;
using testsupport::naive_poly_eval;
using testsupport::point;
using testsupport::random_poly;

namespace {

MultilinearPoly or2() {
  return MultilinearPoly::from_terms(2, {Term{0b01, 1}, Term{0b10, 1}, Term{0b11, -1}});
}

std::vector<BigInt> values(const PointValues& v) {
  std::vector<BigInt> out;
  for (std::uint64_t i = 0; i < v.size(); ++i) out.push_back(v.at(i));
  return out;
}

std::vector<BigInt> ints(std::initializer_list<int> xs) {
  std::vector<BigInt> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("construction merges and drops zeros") {
  const auto p = MultilinearPoly::from_terms(3, {Term{1, 2}, Term{4, 1}, Term{1, -2}, Term{4, 1}});
  CHECK(p.size() == 1);
  CHECK(p.coefficient(4) == 2);
  CHECK(p.coefficient(1) == 0);
  CHECK_THROWS_AS(MultilinearPoly::from_terms(2, {Term{4, 1}}), Error);
}

TEST_CASE("eval_point") {
  CHECK(eval_point(or2(), Bits{1, 1}) == 1);
  CHECK(eval_point(MultilinearPoly::constant(4, 5), Bits{0, 1, 0, 1}) == 5);
  CHECK_THROWS_AS(eval_point(or2(), Bits{1}), Error);
  Rng rng(3);
  for (int round = 0; round < 100; ++round) {
    const auto p = random_poly(10, 30, rng);
    const Bits x = rng.bits(10);
    CHECK(eval_point(p, x) == naive_poly_eval(p, x));
  }
}

TEST_CASE("coefficient_to_point examples") {
  CHECK(values(coefficient_to_point(MultilinearPoly::variable(1, 0))) == ints({0, 1}));
  CHECK(values(coefficient_to_point(or2())) == ints({0, 1, 1, 1}));
  CHECK(values(coefficient_to_point(MultilinearPoly::constant(0, -3))) == ints({-3}));
  CHECK(values(coefficient_to_point(MultilinearPoly(3))) == ints({0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("coefficient_to_point matches eval_point exhaustively") {
  Rng rng(5);
  for (std::size_t n = 0; n <= 12; ++n) {
    const auto p = random_poly(n, 50, rng);
    std::uint64_t ops = 0;
    const PointValues v = coefficient_to_point(p, kDefaultPointCap, &ops);
    REQUIRE(v.size() == (std::uint64_t{1} << n));
    for (std::uint64_t i = 0; i < v.size(); ++i) REQUIRE(v.at(i) == naive_poly_eval(p, point(i, n)));
    CHECK(ops <= n * (std::uint64_t{1} << n) / 2 + (std::uint64_t{1} << n) + p.size());
  }
}

TEST_CASE("coefficient_to_point widths") {
  // Large coefficients force the 64-bit and the unbounded paths.
  const BigInt big64 = BigInt(1) << 40;
  const BigInt huge = BigInt(1) << 100;
  const auto p64 = MultilinearPoly::from_terms(3, {Term{1, big64}, Term{6, -big64}, Term{0, 7}});
  const auto pbig = MultilinearPoly::from_terms(3, {Term{1, huge}, Term{6, -huge}, Term{7, 1}});
  const PointValues v64 = coefficient_to_point(p64);
  const PointValues vbig = coefficient_to_point(pbig);
  CHECK(v64.width() == PointValues::Width::I64);
  CHECK(vbig.width() == PointValues::Width::Big);
  for (std::uint64_t i = 0; i < 8; ++i) {
    CHECK(v64.at(i) == naive_poly_eval(p64, point(i, 3)));
    CHECK(vbig.at(i) == naive_poly_eval(pbig, point(i, 3)));
  }
  // Values right at the 32-bit boundary stay exact.
  const BigInt edge = 0x7fffffff;
  const auto pedge = MultilinearPoly::from_terms(2, {Term{1, edge - 1}, Term{2, 1}});
  CHECK(coefficient_to_point(pedge).width() == PointValues::Width::I32);
  CHECK(coefficient_to_point(pedge).at(3) == edge);
}

TEST_CASE("coefficient_to_point is linear") {
  Rng rng(7);
  for (int round = 0; round < 10; ++round) {
    const auto p = random_poly(9, 40, rng);
    const auto q = random_poly(9, 40, rng);
    const PointValues a = coefficient_to_point(p), b = coefficient_to_point(q), s = coefficient_to_point(p + q);
    for (std::uint64_t i = 0; i < s.size(); ++i) REQUIRE(s.at(i) == a.at(i) + b.at(i));
  }
}

TEST_CASE("coefficient_to_point cap") { CHECK_THROWS_AS(coefficient_to_point(MultilinearPoly(27)), Error); }

TEST_CASE("split") {
  const auto p = MultilinearPoly::from_terms(2, {Term{0b11, 1}, Term{0b10, 1}});
  const auto [q1, q2] = split(p, 0);
  CHECK(q1 == MultilinearPoly::variable(2, 1));
  CHECK(q2 == MultilinearPoly::variable(2, 1));
  const auto [c1, c2] = split(MultilinearPoly::constant(3, 4), 1);
  CHECK(c1.is_zero());
  CHECK(c2 == MultilinearPoly::constant(3, 4));

  Rng rng(9);
  for (int round = 0; round < 50; ++round) {
    const auto r = random_poly(8, 30, rng);
    const auto var = static_cast<std::size_t>(rng.below(8));
    const auto [a, b] = split(r, var);
    for (const Term& t : a.terms()) REQUIRE(((t.mask >> var) & 1U) == 0);
    for (const Term& t : b.terms()) REQUIRE(((t.mask >> var) & 1U) == 0);
    CHECK(MultilinearPoly::variable(8, var) * a + b == r);
  }
}

TEST_CASE("products reduce squares") {
  const auto x = MultilinearPoly::variable(2, 0);
  CHECK(x * x == x);
  const auto one = MultilinearPoly::constant(2, 1);
  const auto y = MultilinearPoly::variable(2, 1);
  CHECK(one - (one - x) * (one - y) == or2());
}

TEST_CASE("compose_eval_all") {
  const auto sum2 = MultilinearPoly::variable(2, 0) + MultilinearPoly::variable(2, 1);
  const auto atleast1 = SymFunction::from_predicate(0, 2, [](std::int64_t v) { return v >= 1; });
  CHECK(compose_eval_all(atleast1, sum2).to_string() == "0111");

  const auto sum3 = MultilinearPoly::variable(3, 0) + MultilinearPoly::variable(3, 1) + MultilinearPoly::variable(3, 2);
  const auto even = SymFunction::from_predicate(0, 3, [](std::int64_t v) { return v % 2 == 0; });
  CHECK(compose_eval_all(even, sum3).to_string() == "10010110");

  const auto narrow = SymFunction::from_predicate(0, 1, [](std::int64_t) { return true; });
  try {
    compose_eval_all(narrow, sum2);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Range);
    CHECK(std::string(e.what()).find("h(11)") != std::string::npos);
  }
  CHECK(compose_eval_point(even, sum3, Bits{1, 1, 0}));
  CHECK_THROWS_AS(narrow(2), Error);
}

TEST_CASE("text format round trip") {
  Rng rng(11);
  const auto p = random_poly(12, 20, rng, 1000000);
  CHECK(poly_from_text(poly_to_text(p)) == p);
  CHECK(poly_to_text(or2()) == "poly n=2\n1 1\n1 2\n-1 3\n");
  CHECK_THROWS_AS(poly_from_text("poly n=2\n1 4\n"), Error);
  CHECK_THROWS_AS(poly_from_text("nope"), Error);
}
