#include "degseq/sampler.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "degseq/errors.hpp"

namespace degseq {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Unbiased draw in [0, bound) (Lemire's multiply-shift with rejection);
// spelled out so the stream is identical across standard libraries.
std::uint64_t bounded(Rng& rng, std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0U);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::uint32_t size(std::uint32_t root) const { return size_[root]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

void count_multiplicities(StubMultigraph& g) {
  g.loop_count = 0;
  g.double_edge_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> proper;
  proper.reserve(g.edges.size());
  for (auto [a, b] : g.edges) {
    if (a == b)
      ++g.loop_count;
    else
      proper.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(proper.begin(), proper.end());
  for (std::size_t i = 1; i < proper.size(); ++i)
    if (proper[i] == proper[i - 1]) ++g.double_edge_count;
}

}  // namespace

StubMultigraph make_multigraph(long n1, long n2,
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  StubMultigraph g;
  g.n1 = n1;
  g.n2 = n2;
  g.edges = std::move(edges);
  count_multiplicities(g);
  return g;
}

ComponentCensus census(const StubMultigraph& g, int q) {
  if (q < 1) throw DomainError("census needs q >= 1");
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::uint8_t> degree(n, 0);
  UnionFind uf(n);
  for (auto [a, b] : g.edges) {
    if (a >= n || b >= n) throw StructuralError("edge endpoint out of range");
    ++degree[a];
    ++degree[b];
    uf.unite(a, b);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const int want = v < static_cast<std::size_t>(g.n1) ? 1 : 2;
    if (degree[v] != want)
      throw StructuralError("vertex " + std::to_string(v) + " has degree " +
                            std::to_string(degree[v]) + ", expected " + std::to_string(want));
  }

  std::vector<std::uint32_t> edges_in(n, 0);
  std::vector<std::uint32_t> leaves_in(n, 0);
  for (auto [a, b] : g.edges) ++edges_in[uf.find(a)];
  for (std::size_t v = 0; v < static_cast<std::size_t>(g.n1); ++v)
    ++leaves_in[uf.find(static_cast<std::uint32_t>(v))];

  ComponentCensus c;
  c.counts.assign(static_cast<std::size_t>(q), 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto root = static_cast<std::uint32_t>(v);
    if (uf.find(root) != root) continue;
    const std::uint32_t size = uf.size(root);
    if (leaves_in[root] == 2 && edges_in[root] + 1 == size)
      ++c.path_count;
    else if (leaves_in[root] == 0 && edges_in[root] == size)
      ++c.cycle_count;
    else
      throw StructuralError("component rooted at " + std::to_string(v) +
                            " is neither a path nor a cycle");
    c.component_sizes_sum += size;
    if (size <= static_cast<std::uint32_t>(q))
      ++c.counts[size - 1];
    else
      ++c.tail_count;
  }
  return c;
}

Rational compensation_factor(const StubMultigraph& g) {
  // Degrees are at most 2, so multiplicities are 1 or 2.
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(g.loop_count + g.double_edge_count));
  return Rational(mpz_class(1), den);
}

bool simple_class_empty(long n1, long n2) { return n1 == 0 && (n2 == 1 || n2 == 2); }

StubMultigraph sample_multigraph(long n1, long n2, Rng& rng) {
  if (n1 < 0 || n2 < 0) throw DomainError("vertex counts must be non-negative");
  if (n1 % 2 != 0) throw DomainError("empty class: n1 odd");
  std::vector<std::uint32_t> stubs;
  stubs.reserve(static_cast<std::size_t>(n1 + 2 * n2));
  for (long v = 0; v < n1; ++v) stubs.push_back(static_cast<std::uint32_t>(v));
  for (long v = n1; v < n1 + n2; ++v) {
    stubs.push_back(static_cast<std::uint32_t>(v));
    stubs.push_back(static_cast<std::uint32_t>(v));
  }
  for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[bounded(rng, i)]);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
  return make_multigraph(n1, n2, std::move(edges));
}

StubMultigraph sample_multigraph(long n1, long n2, std::uint64_t seed) {
  Rng rng(seed);
  return sample_multigraph(n1, n2, rng);
}

StubMultigraph sample_simple(long n1, long n2, Rng& rng, long max_attempts) {
  if (n1 % 2 != 0) throw DomainError("empty class: n1 odd");
  if (simple_class_empty(n1, n2))
    throw SamplingError("empty class: no simple graph with n1 = " + std::to_string(n1) +
                            ", n2 = " + std::to_string(n2),
                        0.0);
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    StubMultigraph g = sample_multigraph(n1, n2, rng);
    if (g.is_simple()) return g;
  }
  throw SamplingError("no simple graph after " + std::to_string(max_attempts) +
                          " attempts (acceptance rate below " +
                          std::to_string(1.0 / static_cast<double>(max_attempts)) + ")",
                      0.0);
}

StubMultigraph sample_simple(long n1, long n2, std::uint64_t seed, long max_attempts) {
  Rng rng(seed);
  return sample_simple(n1, n2, rng, max_attempts);
}

std::vector<ComponentCensus> run_experiment(const ExperimentConfig& config) {
  const GraphClassParams& p = config.params;
  p.validate();
  if (config.replications < 1) throw DomainError("need at least one replication");
  if (p.n1 % 2 != 0) throw DomainError("empty class: n1 odd");
  if (p.model == Model::simple && simple_class_empty(p.n1, p.n2))
    throw SamplingError("empty class: no simple graph with this degree sequence", 0.0);

  const auto total = static_cast<std::size_t>(config.replications);
  std::vector<ComponentCensus> out(total);
  auto replicate = [&](std::size_t r) {
    Rng rng(derive_seed(config.seed, r));
    const StubMultigraph g = p.model == Model::simple
                                 ? sample_simple(p.n1, p.n2, rng, config.max_attempts)
                                 : sample_multigraph(p.n1, p.n2, rng);
    out[r] = census(g, p.q);
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(config.workers, static_cast<unsigned>(total)));
  if (workers == 1) {
    for (std::size_t r = 0; r < total; ++r) replicate(r);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t r = w; r < total; r += workers) replicate(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_census_csv(std::ostream& os, const std::vector<ComponentCensus>& samples, int q) {
  os << "rep_id";
  for (int j = 1; j <= q; ++j) os << ",U_" << j;
  os << ",tail_count\n";
  for (std::size_t r = 0; r < samples.size(); ++r) {
    os << r;
    for (int j = 1; j <= q; ++j) os << ',' << samples[r].count(j);
    os << ',' << samples[r].tail_count << '\n';
  }
}

}  // namespace degseq
