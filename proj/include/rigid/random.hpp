#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rigid/graph.hpp"

namespace rigid {

/// splitmix64 step. Used only for seed derivation, never for sampling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d49bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from (master, stream tag, index).
/// Mixing the tag in character by character keeps distinct experiment names
/// on distinct streams even when indices collide.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  splitmix64(s);
  for (char c : tag) {
    s ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    splitmix64(s);
  }
  s ^= index;
  return splitmix64(s);
}

/// The single RNG used everywhere. Fixing the engine (not just the seed)
/// is what makes results reproducible across platforms; distributions from
/// <random> are implementation-defined, so we only draw raw 64-bit words
/// and uniform doubles built from the top 53 bits.
using Rng = std::mt19937_64;

/// Uniform double in [0,1) with exactly 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection, bias-free.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform permutation of {0..n-1} by Fisher-Yates; perm[i] is the image
/// of i.
inline std::vector<Vertex> random_permutation(int n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("random_permutation: negative n");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i],
              perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
  return perm;
}

/// G(n,p) sample. Enumerating all pairs is quadratic, so for small p we
/// jump between present edges with geometric skips: if each pair is kept
/// independently with probability p, the gap to the next kept pair is
/// geometric and can be drawn as floor(log(1-u)/log(1-p)).
inline Graph gnp_sample(int n, double p, Rng& rng) {
  if (n < 0) throw std::invalid_argument("gnp_sample: negative n");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("gnp_sample: p outside [0,1]");
  Graph g(n);
  if (n < 2 || p == 0.0) return g;
  if (p == 1.0) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  // Pairs (u,v), u<v, in lexicographic order, visited by skip distance.
  // Position is kept as (row, offset within row); rows have length n-1-row
  // and the index only moves forward, so advancing is amortised O(1).
  const double log1p_inv = 1.0 / std::log1p(-p);
  long long total = static_cast<long long>(n) * (n - 1) / 2;
  long long idx = -1;
  int row = 0;
  long long row_start = 0;
  for (;;) {
    double u = uniform01(rng);
    long long skip = 1 + static_cast<long long>(std::log1p(-u) * log1p_inv);
    if (skip < 1) skip = 1;  // guards rounding at u ~ 0
    idx += skip;
    if (idx >= total) break;
    while (idx - row_start >= n - 1 - row) {
      row_start += n - 1 - row;
      ++row;
    }
    g.add_edge(row, row + 1 + static_cast<int>(idx - row_start));
  }
  return g;
}

}  // namespace rigid
