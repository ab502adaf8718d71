#include "degseq/exact.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

GraphClassParams GraphClassParams::from_counts(long n1, long n2, int q, Model model) {
  GraphClassParams p;
  p.n1 = n1;
  p.n2 = n2;
  p.q = q;
  p.model = model;
  p.alpha = n1 > 0 ? 2.0 * static_cast<double>(n2) / static_cast<double>(n1) : 0.0;
  return p;
}

GraphClassParams GraphClassParams::from_alpha(double alpha, long n1, int q, Model model) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  GraphClassParams p;
  p.n1 = n1;
  p.n2 = static_cast<long>(std::floor(alpha * static_cast<double>(n1) / 2.0));
  p.q = q;
  p.model = model;
  p.alpha = alpha;
  return p;
}

void GraphClassParams::validate() const {
  if (n1 < 0 || n2 < 0) throw DomainError("vertex counts must be non-negative");
  if (q < 2) throw DomainError("q must be at least 2");
}

Rational v_factor(long n1, long n2) {
  if (n1 < 0 || n2 < 0) throw DomainError("vertex counts must be non-negative");
  if (n1 % 2 != 0) throw DomainError("n1 must be even");
  mpz_class num, pairs_fact, pow2;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n1 + n2));
  mpz_fac_ui(pairs_fact.get_mpz_t(), static_cast<unsigned long>(n1 / 2));
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n1 / 2));
  Rational v(num, pow2 * pairs_fact);
  v.canonicalize();
  return v;
}

namespace {

MPoly extract_coefficient(const GraphClassParams& params, const TruncatedSeries& path,
                          const TruncatedSeries& cycle) {
  const TruncatedSeries product =
      series_mul(series_exp(cycle), series_pow(path, static_cast<unsigned long>(params.n1 / 2)));
  return product[static_cast<std::size_t>(params.n2)];
}

TruncatedSeries specialize_all(TruncatedSeries s, const std::vector<Rational>& u) {
  if (u.size() != s.nvars()) throw std::invalid_argument("u must have q entries");
  for (std::size_t j = 1; j <= u.size(); ++j) s = s.specialize(j, u[j - 1]);
  return s;
}

}  // namespace

CensusPolynomial graph_gf(const GraphClassParams& params) {
  params.validate();
  const auto nvars = static_cast<std::size_t>(params.q);
  CensusPolynomial out{MPoly(nvars), Rational(0), false};
  if (params.n1 % 2 != 0) {
    out.odd_degree_sum = true;
    return out;
  }
  const auto order = static_cast<std::size_t>(params.n2);
  const TruncatedSeries path = build_path_series(params.q, order);
  const TruncatedSeries cycle = build_cycle_series(params.q, order, params.model);
  out.poly = extract_coefficient(params, path, cycle) * v_factor(params.n1, params.n2);
  out.total = out.poly.value_at_one();
  return out;
}

Rational path_cycle_coefficient(const GraphClassParams& params, const std::vector<Rational>& u) {
  params.validate();
  if (params.n1 % 2 != 0) return Rational(0);
  const auto order = static_cast<std::size_t>(params.n2);
  const TruncatedSeries path = specialize_all(build_path_series(params.q, order), u);
  const TruncatedSeries cycle =
      specialize_all(build_cycle_series(params.q, order, params.model), u);
  return extract_coefficient(params, path, cycle).constant_term();
}

Rational graph_gf_value(const GraphClassParams& params, const std::vector<Rational>& u) {
  if (params.n1 % 2 != 0) return Rational(0);
  return path_cycle_coefficient(params, u) * v_factor(params.n1, params.n2);
}

JointPmf pmf_from_census(const CensusPolynomial& census) {
  if (sgn(census.total) <= 0) throw DomainError("empty class: no graph to draw from");
  JointPmf pmf;
  for (const auto& [e, c] : census.poly.terms()) pmf.emplace(e, c / census.total);
  return pmf;
}

JointPmf joint_pmf(const GraphClassParams& params) { return pmf_from_census(graph_gf(params)); }

std::vector<Rational> marginal_pmf(const GraphClassParams& params, int j) {
  params.validate();
  if (j < 1 || j > params.q) throw std::out_of_range("marginal_pmf: j outside 1..q");
  if (params.n1 % 2 != 0) throw DomainError("empty class: n1 odd");
  const auto order = static_cast<std::size_t>(params.n2);
  TruncatedSeries path = build_path_series(params.q, order);
  TruncatedSeries cycle = build_cycle_series(params.q, order, params.model);
  for (int k = 1; k <= params.q; ++k) {
    if (k == j) continue;
    path = path.specialize(static_cast<std::size_t>(k), Rational(1));
    cycle = cycle.specialize(static_cast<std::size_t>(k), Rational(1));
  }
  const MPoly poly = extract_coefficient(params, path, cycle);
  const Rational total = poly.value_at_one();
  if (sgn(total) <= 0) throw DomainError("empty class: no graph to draw from");
  std::vector<Rational> pmf;
  for (const auto& [e, c] : poly.terms()) {
    const std::size_t m = e[static_cast<std::size_t>(j - 1)];
    if (pmf.size() <= m) pmf.resize(m + 1, Rational(0));
    pmf[m] += c / total;
  }
  return pmf;
}

namespace {

struct SmallUnionFind {
  explicit SmallUnionFind(int n) : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
  std::vector<int> parent;
  std::vector<int> size;
};

Exponents census_monomial(int vertices, const std::vector<std::pair<int, int>>& edges, int q) {
  SmallUnionFind uf(vertices);
  for (auto [a, b] : edges) uf.unite(a, b);
  Exponents e(static_cast<std::size_t>(q), 0);
  for (int v = 0; v < vertices; ++v) {
    if (uf.find(v) != v) continue;
    const int s = uf.size[static_cast<std::size_t>(v)];
    if (s <= q) ++e[static_cast<std::size_t>(s - 1)];
  }
  return e;
}

class SimpleEnumerator {
 public:
  SimpleEnumerator(const GraphClassParams& p, MPoly& sink)
      : p_(p), n_(static_cast<int>(p.vertex_count())), degree_(static_cast<std::size_t>(n_), 0), sink_(sink) {}

  void run() { visit(0, 1, 0, 0); }

 private:
  // Decides pair (i, j); rows are processed in order so a vertex's degree is
  // final once its row is complete.
  void visit(int i, int j, long ones, long twos) {
    if (i >= n_ - 1 || n_ < 2) {
      finish(ones, twos);
      return;
    }
    if (j == n_) {
      const int d = degree_[static_cast<std::size_t>(i)];
      if (d == 0) return;
      const long o = ones + (d == 1);
      const long t = twos + (d == 2);
      if (o > p_.n1 || t > p_.n2) return;
      visit(i + 1, i + 2, o, t);
      return;
    }
    visit(i, j + 1, ones, twos);
    auto& di = degree_[static_cast<std::size_t>(i)];
    auto& dj = degree_[static_cast<std::size_t>(j)];
    if (di < 2 && dj < 2) {
      ++di;
      ++dj;
      edges_.emplace_back(i, j);
      visit(i, j + 1, ones, twos);
      edges_.pop_back();
      --di;
      --dj;
    }
  }

  void finish(long ones, long twos) {
    // The last vertex (or the lone vertex when n < 2) has no row of its own.
    for (int v = std::max(0, n_ - 1); v < n_; ++v) {
      const int d = degree_[static_cast<std::size_t>(v)];
      if (d == 0) return;
      ones += (d == 1);
      twos += (d == 2);
    }
    if (ones != p_.n1 || twos != p_.n2) return;
    sink_.add_term(census_monomial(n_, edges_, p_.q), Rational(1));
  }

  const GraphClassParams& p_;
  int n_;
  std::vector<int> degree_;
  std::vector<std::pair<int, int>> edges_;
  MPoly& sink_;
};

class MatchingEnumerator {
 public:
  MatchingEnumerator(const GraphClassParams& p, MPoly& sink, Rational weight)
      : p_(p), sink_(sink), weight_(std::move(weight)) {
    for (long v = 0; v < p.n1; ++v) stub_owner_.push_back(static_cast<int>(v));
    for (long v = p.n1; v < p.n1 + p.n2; ++v) {
      stub_owner_.push_back(static_cast<int>(v));
      stub_owner_.push_back(static_cast<int>(v));
    }
    used_.assign(stub_owner_.size(), false);
  }

  void run() { visit(); }

 private:
  void visit() {
    std::size_t first = 0;
    while (first < used_.size() && used_[first]) ++first;
    if (first == used_.size()) {
      sink_.add_term(census_monomial(static_cast<int>(p_.vertex_count()), edges_, p_.q), weight_);
      return;
    }
    used_[first] = true;
    for (std::size_t other = first + 1; other < used_.size(); ++other) {
      if (used_[other]) continue;
      used_[other] = true;
      edges_.emplace_back(stub_owner_[first], stub_owner_[other]);
      visit();
      edges_.pop_back();
      used_[other] = false;
    }
    used_[first] = false;
  }

  const GraphClassParams& p_;
  MPoly& sink_;
  Rational weight_;
  std::vector<int> stub_owner_;
  std::vector<bool> used_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace

CensusPolynomial brute_force_simple(const GraphClassParams& params) {
  params.validate();
  if (params.vertex_count() > kBruteForceSimpleMaxVertices)
    throw DomainError("brute_force_simple: n1 + n2 = " + std::to_string(params.vertex_count()) +
                      " exceeds the enumeration bound " +
                      std::to_string(kBruteForceSimpleMaxVertices));
  CensusPolynomial out{MPoly(static_cast<std::size_t>(params.q)), Rational(0), params.n1 % 2 != 0};
  SimpleEnumerator(params, out.poly).run();
  out.total = out.poly.value_at_one();
  return out;
}

// A multigraph with loop/double-edge counts (l, d) arises from 2^{n2} kappa(G)
// stub matchings, so each matching carries mass 2^{-n2}. Which n1 vertices
// carry a single stub is a free labelling choice that does not affect the
// census, contributing the factor binom(n1 + n2, n1).
CensusPolynomial brute_force_multigraph(const GraphClassParams& params) {
  params.validate();
  if (params.n1 % 2 != 0) {
    return CensusPolynomial{MPoly(static_cast<std::size_t>(params.q)), Rational(0), true};
  }
  if (params.edge_count() > kBruteForceMultigraphMaxEdges)
    throw DomainError("brute_force_multigraph: m = " + std::to_string(params.edge_count()) +
                      " exceeds the enumeration bound " +
                      std::to_string(kBruteForceMultigraphMaxEdges));
  mpz_class labelings, pow2;
  mpz_bin_uiui(labelings.get_mpz_t(), static_cast<unsigned long>(params.vertex_count()),
               static_cast<unsigned long>(params.n1));
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(params.n2));
  Rational weight(labelings, pow2);
  weight.canonicalize();
  CensusPolynomial out{MPoly(static_cast<std::size_t>(params.q)), Rational(0), false};
  MatchingEnumerator(params, out.poly, weight).run();
  out.total = out.poly.value_at_one();
  return out;
}

}  // namespace degseq
