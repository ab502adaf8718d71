#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "degseq/exact.hpp"
#include "degseq/mpoly.hpp"

namespace degseq {

using Rng = std::mt19937_64;

// splitmix64 finaliser applied to seed + stream; used to give every
// replication its own generator.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Vertices 0..n1-1 have degree 1, n1..n1+n2-1 degree 2. Loops are (v, v).
struct StubMultigraph {
  long n1 = 0;
  long n2 = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  long loop_count = 0;
  long double_edge_count = 0;

  long vertex_count() const { return n1 + n2; }
  bool is_simple() const { return loop_count == 0 && double_edge_count == 0; }
};

// Builds a multigraph from an explicit edge list, computing the loop and
// double-edge counts. Does not validate degrees (census does).
StubMultigraph make_multigraph(long n1, long n2,
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

struct ComponentCensus {
  std::vector<std::uint32_t> counts;  // counts[j-1] = U_j, j = 1..q
  std::uint64_t tail_count = 0;       // components of size > q
  std::uint64_t component_sizes_sum = 0;
  std::uint64_t path_count = 0;
  std::uint64_t cycle_count = 0;

  std::uint32_t count(int j) const { return counts.at(static_cast<std::size_t>(j - 1)); }
  int q() const { return static_cast<int>(counts.size()); }
};

// Throws StructuralError if a vertex has the wrong degree or a component is
// neither a path nor a cycle.
ComponentCensus census(const StubMultigraph& g, int q);

// 1 / (2^{loops} prod_e mult(e)!); equal to 1 exactly for simple graphs.
Rational compensation_factor(const StubMultigraph& g);

// True when no simple graph has this degree sequence (n1 = 0, n2 in {1, 2}).
bool simple_class_empty(long n1, long n2);

// Uniform perfect matching of the n1 + 2 n2 stubs (Fisher-Yates shuffle,
// then consecutive pairing).
StubMultigraph sample_multigraph(long n1, long n2, Rng& rng);
StubMultigraph sample_multigraph(long n1, long n2, std::uint64_t seed);

inline constexpr long kDefaultMaxAttempts = 1'000'000;

// Rejection sampler: uniform on simple graphs with the degree sequence.
StubMultigraph sample_simple(long n1, long n2, Rng& rng, long max_attempts = kDefaultMaxAttempts);
StubMultigraph sample_simple(long n1, long n2, std::uint64_t seed,
                             long max_attempts = kDefaultMaxAttempts);

struct ExperimentConfig {
  GraphClassParams params;
  long replications = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  long max_attempts = kDefaultMaxAttempts;
};

// Replication r always draws from derive_seed(seed, r), so the output is
// independent of the worker count.
std::vector<ComponentCensus> run_experiment(const ExperimentConfig& config);

// rep_id,U_1..U_q,tail_count
void write_census_csv(std::ostream& os, const std::vector<ComponentCensus>& samples, int q);

}  // namespace degseq
