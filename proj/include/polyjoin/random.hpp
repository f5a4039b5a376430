#pragma once

// Seeded instance generators. Output depends only on the seed: the engine is
// std::mt19937_64 (fully specified by the standard) and ranges are drawn by
// rejection sampling rather than through the implementation-defined
// std::uniform_int_distribution.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "polyjoin/complex.hpp"
#include "polyjoin/operations.hpp"
#include "polyjoin/polyhedral_join.hpp"

namespace polyjoin {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi].
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    if (hi <= lo) return lo;
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::size_t>(x % range);
  }

  /// True with probability num/den.
  bool chance(std::size_t num, std::size_t den) { return uniform(0, den - 1) < num; }

  /// k distinct elements of `pool`, sorted.
  std::vector<VertexId> sample(std::vector<VertexId> pool, std::size_t k) {
    k = std::min(k, pool.size());
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[uniform(i, pool.size() - 1)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomComplexOptions {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 8;
  bool allow_ghosts = false;
};

/// Random complex on the given labels. Candidate facet sizes are weighted
/// towards low dimension (size s has weight n - s + 1). Without ghosts, every
/// uncovered vertex is added as an isolated point.
template <VertexMask Mask = WordMask>
BasicComplex<Mask> random_complex_on(Rng& rng, const std::vector<VertexId>& labels, bool allow_ghosts = false) {
  const std::size_t n = labels.size();
  std::vector<Simplex> facets;
  if (n > 0) {
    const std::size_t count = rng.uniform(1, n + 1);
    const std::size_t total_weight = n * (n + 1) / 2;
    for (std::size_t t = 0; t < count; ++t) {
      std::size_t pick = rng.uniform(1, total_weight);
      std::size_t size = 1;
      while (pick > n - size + 1) {
        pick -= n - size + 1;
        ++size;
      }
      facets.push_back(rng.sample(labels, size));
    }
    if (!allow_ghosts) {
      for (VertexId v : labels) {
        const bool used = std::any_of(facets.begin(), facets.end(), [&](const Simplex& f) {
          return std::binary_search(f.begin(), f.end(), v);
        });
        if (!used) facets.push_back({v});
      }
    }
  }
  return BasicComplex<Mask>(labels, facets);
}

template <VertexMask Mask = WordMask>
BasicComplex<Mask> random_complex(Rng& rng, const RandomComplexOptions& opt = {}) {
  const std::size_t n = rng.uniform(opt.min_vertices, opt.max_vertices);
  std::vector<VertexId> labels(n);
  std::iota(labels.begin(), labels.end(), VertexId{1});
  return random_complex_on<Mask>(rng, labels, opt.allow_ghosts);
}

/// A subcomplex of k on vertex_set(k): closure of up to three random nonempty
/// faces of k, possibly none.
template <VertexMask Mask>
BasicComplex<Mask> random_subcomplex(Rng& rng, const BasicComplex<Mask>& k) {
  auto all = face_masks(k);
  all.erase(std::remove_if(all.begin(), all.end(), [](const Mask& m) { return is_empty(m); }), all.end());
  std::vector<Mask> chosen;
  if (!all.empty()) {
    const std::size_t count = rng.uniform(0, std::min<std::size_t>(3, all.size()));
    for (std::size_t t = 0; t < count; ++t) chosen.push_back(all[rng.uniform(0, all.size() - 1)]);
  }
  return BasicComplex<Mask>::from_masks(k.vertices(), std::move(chosen));
}

struct RandomSpecOptions {
  std::size_t min_outer = 1;
  std::size_t max_outer = 4;
  std::size_t max_inner = 3;
  bool outer_ghosts = false;
  bool inner_ghosts = false;
};

/// Random spec: outer complex on 1..m, pairs with K_i on 1..k_i.
template <VertexMask Mask = WordMask>
PjpSpec<Mask> random_spec(Rng& rng, const RandomSpecOptions& opt = {}) {
  auto outer = random_complex<Mask>(rng, {opt.min_outer, opt.max_outer, opt.outer_ghosts});
  std::vector<ComplexPair<Mask>> pairs;
  for (std::size_t i = 0; i < outer.vertex_count(); ++i) {
    auto k = random_complex<Mask>(rng, {1, opt.max_inner, opt.inner_ghosts});
    auto l = random_subcomplex(rng, k);
    pairs.push_back({std::move(k), std::move(l)});
  }
  return PjpSpec<Mask>(std::move(outer), std::move(pairs));
}

template <VertexMask Mask>
struct SubstitutionInstance {
  BasicComplex<Mask> outer;
  std::vector<BasicComplex<Mask>> parts;
};

/// Ghost-free substitution input. Plain random complexes this small are
/// nearly always flag, so a third of the outer complexes and a sixth of the
/// parts are simplex boundaries.
template <VertexMask Mask = WordMask>
SubstitutionInstance<Mask> random_substitution(Rng& rng, std::size_t max_outer = 4, std::size_t max_inner = 3) {
  SubstitutionInstance<Mask> out;
  if (max_outer >= 3 && rng.chance(1, 3)) {
    out.outer = boundary_simplex<Mask>(rng.uniform(3, std::min<std::size_t>(max_outer, 4)));
  } else {
    out.outer = random_complex<Mask>(rng, {1, max_outer, false});
  }
  for (std::size_t i = 0; i < out.outer.vertex_count(); ++i) {
    if (max_inner >= 3 && rng.chance(1, 6)) {
      out.parts.push_back(boundary_simplex<Mask>(3));
    } else {
      out.parts.push_back(random_complex<Mask>(rng, {1, max_inner, false}));
    }
  }
  return out;
}

}  // namespace polyjoin
