#pragma once

#include <map>
#include <vector>

#include "degseq/mpoly.hpp"
#include "degseq/series.hpp"

namespace degseq {

// Problem instance: n1 vertices of degree 1, n2 of degree 2, components of
// size 2..q (1..q for multigraphs) marked.
struct GraphClassParams {
  long n1 = 0;
  long n2 = 0;
  int q = 2;
  Model model = Model::simple;
  double alpha = 0.0;  // 2 n2 / n1 unless built from (alpha, n1)

  static GraphClassParams from_counts(long n1, long n2, int q, Model model = Model::simple);
  // n2 = floor(alpha n1 / 2).
  static GraphClassParams from_alpha(double alpha, long n1, int q, Model model = Model::simple);

  long vertex_count() const { return n1 + n2; }
  long edge_count() const { return n1 / 2 + n2; }
  void validate() const;
};

// Polynomial whose [u_1^{m_1}..u_q^{m_q}] coefficient counts the graphs
// (or compensation-factor mass of multigraphs) with m_j components of size j.
struct CensusPolynomial {
  MPoly poly;
  Rational total;
  // Set when n1 is odd: the class is empty and poly is zero.
  bool odd_degree_sum = false;
};

// (n1+n2)! / (2^{n1/2} (n1/2)!).
Rational v_factor(long n1, long n2);

CensusPolynomial graph_gf(const GraphClassParams& params);

// G_{n1,n2}(u) at a rational point; u[j-1] is u_j.
Rational graph_gf_value(const GraphClassParams& params, const std::vector<Rational>& u);

// [z^{n2}] e^{Cycle(z,u)} Path(z,u)^{n1/2} at a rational point, i.e. G / v.
Rational path_cycle_coefficient(const GraphClassParams& params, const std::vector<Rational>& u);

using CountVector = std::vector<std::uint32_t>;  // m_1..m_q
using JointPmf = std::map<CountVector, Rational>;

JointPmf joint_pmf(const GraphClassParams& params);
JointPmf pmf_from_census(const CensusPolynomial& census);

// Distribution of U_j alone (every other u set to 1); index m holds P(U_j = m).
std::vector<Rational> marginal_pmf(const GraphClassParams& params, int j);

// Enumerates every simple graph on n1+n2 labelled vertices with the given
// degree counts. Requires n1 + n2 <= 10.
CensusPolynomial brute_force_simple(const GraphClassParams& params);

// Enumerates every perfect matching of the stubs, summed over the choices of
// which vertices carry one stub. Requires n1/2 + n2 <= 6.
CensusPolynomial brute_force_multigraph(const GraphClassParams& params);

inline constexpr long kBruteForceSimpleMaxVertices = 10;
inline constexpr long kBruteForceMultigraphMaxEdges = 6;

}  // namespace degseq
