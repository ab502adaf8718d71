#include <doctest.h>

#include "degseq/errors.hpp"
#include "degseq/exact.hpp"

using namespace degseq;

namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

MPoly monomial(std::size_t nvars, Exponents e, const Rational& c) {
  MPoly p(nvars);
  p.add_term(e, c);
  return p;
}

Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace

TEST_CASE("v_factor") {
  CHECK(v_factor(2, 0) == R(1));
  CHECK(v_factor(0, 3) == R(6));
  CHECK(v_factor(4, 0) == R(3));
  CHECK(v_factor(6, 2) == factorial(8) / (R(8) * R(6)));
  CHECK_THROWS_AS(v_factor(3, 0), DomainError);
}

TEST_CASE("graph_gf small instances") {
  CHECK(graph_gf(GraphClassParams::from_counts(2, 0, 2)).poly == MPoly::variable(2, 2));
  CHECK(graph_gf(GraphClassParams::from_counts(2, 1, 3)).poly == MPoly::variable(3, 3) * R(3));
  CHECK(graph_gf(GraphClassParams::from_counts(0, 3, 3)).poly == MPoly::variable(3, 3));
  CHECK(graph_gf(GraphClassParams::from_counts(4, 0, 2)).poly == monomial(2, {0, 2}, R(3)));
  CHECK(graph_gf(GraphClassParams::from_counts(0, 4, 4)).poly == MPoly::variable(4, 4) * R(3));
}

TEST_CASE("graph_gf is zero for odd n1") {
  const auto g = graph_gf(GraphClassParams::from_counts(3, 2, 3));
  CHECK(g.odd_degree_sum);
  CHECK(g.poly.is_zero());
  CHECK(g.total == 0);
}

TEST_CASE("graph_gf counts labelled paths for n1 = 2") {
  // Graphs that are a single path on k + 2 vertices; for k >= 3 the class
  // also holds a shorter path plus cycles.
  for (long k = 0; k <= 8; ++k) {
    const int q = static_cast<int>(k + 2);
    const auto g = graph_gf(GraphClassParams::from_counts(2, k, q));
    CHECK(g.poly.coefficient(MPoly::variable(static_cast<std::size_t>(q), static_cast<std::size_t>(q))
                                 .terms()
                                 .begin()
                                 ->first) == factorial(k + 2) / R(2));
    if (k <= 2) CHECK(g.total == factorial(k + 2) / R(2));
  }
}

TEST_CASE("graph_gf equals brute-force simple enumeration") {
  for (long n1 = 0; n1 <= 8; n1 += 2) {
    for (long n2 = 0; n1 + n2 <= 8; ++n2) {
      for (int q : {2, 3, static_cast<int>(std::max(2L, n1 + n2))}) {
        const auto p = GraphClassParams::from_counts(n1, n2, q);
        CAPTURE(n1);
        CAPTURE(n2);
        CAPTURE(q);
        CHECK(graph_gf(p).poly == brute_force_simple(p).poly);
      }
    }
  }
  CHECK(brute_force_simple(GraphClassParams::from_counts(0, 2, 2)).total == 0);
  CHECK(brute_force_simple(GraphClassParams::from_counts(3, 1, 2)).total == 0);
  CHECK_THROWS_AS(brute_force_simple(GraphClassParams::from_counts(4, 7, 2)), DomainError);
}

TEST_CASE("brute_force_multigraph examples") {
  const auto edge = brute_force_multigraph(GraphClassParams::from_counts(2, 0, 2, Model::multigraph));
  CHECK(edge.poly == MPoly::variable(2, 2));
  CHECK(edge.total == 1);

  const auto loop = brute_force_multigraph(GraphClassParams::from_counts(0, 1, 2, Model::multigraph));
  CHECK(loop.poly == MPoly::variable(2, 1) * R(1, 2));

  // Two loops (1 matching) or a double edge (2 matchings), each matching 1/4.
  const auto two = brute_force_multigraph(GraphClassParams::from_counts(0, 2, 2, Model::multigraph));
  CHECK(two.poly == monomial(2, {2, 0}, R(1, 4)) + MPoly::variable(2, 2) * R(1, 2));

  CHECK_THROWS_AS(brute_force_multigraph(GraphClassParams::from_counts(4, 5, 2, Model::multigraph)),
                  DomainError);
}

TEST_CASE("multigraph graph_gf equals matching enumeration") {
  for (long n1 = 0; n1 / 2 <= 6; n1 += 2) {
    for (long n2 = 0; n1 / 2 + n2 <= 6; ++n2) {
      for (int q : {2, static_cast<int>(std::max(2L, n1 + n2))}) {
        const auto p = GraphClassParams::from_counts(n1, n2, q, Model::multigraph);
        CAPTURE(n1);
        CAPTURE(n2);
        CAPTURE(q);
        CHECK(graph_gf(p).poly == brute_force_multigraph(p).poly);
      }
    }
  }
}

TEST_CASE("joint_pmf") {
  const auto single = joint_pmf(GraphClassParams::from_counts(2, 0, 2));
  REQUIRE(single.size() == 1);
  CHECK(single.begin()->first == CountVector{0, 1});
  CHECK(single.begin()->second == 1);

  CHECK(joint_pmf(GraphClassParams::from_counts(4, 0, 2)).at(CountVector{0, 2}) == 1);

  const auto p = GraphClassParams::from_counts(2, 2, 4);
  const auto pmf = joint_pmf(p);
  CHECK(pmf == pmf_from_census(brute_force_simple(p)));
  Rational sum(0);
  for (const auto& [m, prob] : pmf) sum += prob;
  CHECK(sum == 1);

  for (long n1 : {2L, 4L, 6L}) {
    Rational s(0);
    for (const auto& [m, prob] : joint_pmf(GraphClassParams::from_counts(n1, 5, 4, Model::multigraph)))
      s += prob;
    CHECK(s == 1);
  }

  CHECK_THROWS_AS(joint_pmf(GraphClassParams::from_counts(0, 2, 2)), DomainError);
  CHECK_THROWS_AS(joint_pmf(GraphClassParams::from_counts(1, 2, 2)), DomainError);
}

TEST_CASE("marginal_pmf agrees with the joint law") {
  const auto p = GraphClassParams::from_counts(6, 5, 4);
  const auto joint = joint_pmf(p);
  for (int j = 2; j <= 4; ++j) {
    std::vector<Rational> from_joint;
    for (const auto& [m, prob] : joint) {
      const std::size_t k = m[static_cast<std::size_t>(j - 1)];
      if (from_joint.size() <= k) from_joint.resize(k + 1, Rational(0));
      from_joint[k] += prob;
    }
    CHECK(marginal_pmf(p, j) == from_joint);
  }
}

TEST_CASE("graph_gf_value matches polynomial evaluation") {
  const auto p = GraphClassParams::from_counts(4, 3, 3, Model::multigraph);
  const std::vector<Rational> u{R(1, 2), R(3, 4), R(5, 3)};
  CHECK(graph_gf_value(p, u) == graph_gf(p).poly.evaluate(u));
  CHECK(path_cycle_coefficient(p, u) * v_factor(4, 3) == graph_gf_value(p, u));
}

TEST_CASE("params from alpha use floor") {
  const auto p = GraphClassParams::from_alpha(0.7, 10, 3);
  CHECK(p.n2 == 3);
  CHECK(p.alpha == 0.7);
  CHECK_THROWS_AS(GraphClassParams::from_alpha(0.0, 10, 3), DomainError);
}
