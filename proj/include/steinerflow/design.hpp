#pragma once
// Core design types: t-(v,k,lambda) designs with canonical block order,
// coverage validation, derived designs, counting identities, and a stable
// content digest.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "steinerflow/common.hpp"

namespace steinerflow {

// Cyclic metadata: the design is the orbit expansion of `base_blocks` under
// x -> x+1 (mod v); `has_short` marks the presence of the short orbit
// {0, v/3, 2v/3} (only possible when v % 3 == 0).
struct CyclicInfo {
  int v = 0;
  std::vector<Block> base_blocks;  // full-orbit representatives
  bool has_short = false;
};

// How a design was produced, for reporting only; never affects semantics.
struct Provenance {
  std::string construction;
  std::map<std::string, std::string> inputs;
};

struct Design {
  int t = 0;
  int v = 0;
  int k = 0;
  int lam = 0;  // lambda
  std::vector<Block> blocks;               // canonical order (see canonicalize)
  std::vector<std::string> labels;         // optional point labels, size v or 0
  std::optional<CyclicInfo> cyclic;
  std::optional<Provenance> provenance;

  int b() const { return static_cast<int>(blocks.size()); }
};

// Sorts each block ascending, then sorts the block list lexicographically.
// Returns the permutation `perm` with canonical[i] = original[perm[i]]. If
// `values` is given (parallel to the original block order) it is permuted in
// step with the blocks.
inline std::vector<std::size_t> canonicalize(std::vector<Block>& blocks,
                                             std::vector<int>* values = nullptr) {
  for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
  std::vector<std::size_t> perm(blocks.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return blocks[a] < blocks[b]; });
  std::vector<Block> sorted_blocks(blocks.size());
  for (std::size_t i = 0; i < perm.size(); ++i) sorted_blocks[i] = blocks[perm[i]];
  blocks = std::move(sorted_blocks);
  if (values) {
    if (values->size() != blocks.size())
      throw PreconditionError("value list must be parallel to the block list");
    std::vector<int> sorted_values(values->size());
    for (std::size_t i = 0; i < perm.size(); ++i) sorted_values[i] = (*values)[perm[i]];
    *values = std::move(sorted_values);
  }
  return perm;
}

// Builds a Design after structural checks: point range, block size, repeated
// points within a block, duplicate blocks. Throws PreconditionError.
inline Design make_design(int t, int v, int k, int lam, std::vector<Block> blocks,
                          std::vector<std::string> labels = {}) {
  if (t < 1 || k < t || v < k || lam < 1)
    throw PreconditionError("design parameters must satisfy 1 <= t <= k <= v and lambda >= 1");
  for (const auto& blk : blocks) {
    if (static_cast<int>(blk.size()) != k)
      throw PreconditionError("every block must have exactly k points");
    for (int x : blk)
      if (x < 0 || x >= v) throw PreconditionError("block contains a point outside [0, v)");
  }
  Design d;
  d.t = t;
  d.v = v;
  d.k = k;
  d.lam = lam;
  d.blocks = std::move(blocks);
  canonicalize(d.blocks);
  for (auto& blk : d.blocks)
    if (std::adjacent_find(blk.begin(), blk.end()) != blk.end())
      throw PreconditionError("block contains a repeated point");
  if (std::adjacent_find(d.blocks.begin(), d.blocks.end()) != d.blocks.end())
    throw PreconditionError("design contains a duplicate block");
  if (!labels.empty() && static_cast<int>(labels.size()) != v)
    throw PreconditionError("label list must have exactly v entries");
  d.labels = std::move(labels);
  return d;
}

struct ValidationReport {
  bool valid = true;
  std::string message;                 // empty when valid
  std::vector<int> violating_subset;   // first t-subset (lex order) off count
  long long expected = 0;              // lambda
  long long observed = 0;              // count seen for violating_subset
};

// Checks that every t-subset of points lies in exactly lambda blocks.
// Structural problems are reported (not thrown) so the CLI can surface them
// uniformly. The first violation in lexicographic subset order is reported.
inline ValidationReport validate_design(const Design& d) {
  ValidationReport rep;
  rep.expected = d.lam;
  for (const auto& blk : d.blocks) {
    if (static_cast<int>(blk.size()) != d.k || !std::is_sorted(blk.begin(), blk.end()) ||
        std::adjacent_find(blk.begin(), blk.end()) != blk.end() || blk.front() < 0 ||
        blk.back() >= d.v) {
      rep.valid = false;
      rep.message = "structural: a block is not a sorted k-set of points in [0, v)";
      return rep;
    }
  }
  BinomialTable C(d.v, d.t);
  long long total = C(d.v, d.t);
  if (total > 50'000'000LL) {
    rep.valid = false;
    rep.message = "validation by full subset enumeration is limited to C(v,t) <= 5*10^7";
    return rep;
  }
  std::vector<long long> count(static_cast<std::size_t>(total), 0);
  std::vector<int> idx(d.t);
  for (const auto& blk : d.blocks) {
    // enumerate t-subsets of the block
    for (int i = 0; i < d.t; ++i) idx[i] = i;
    while (true) {
      std::vector<int> sub(d.t);
      for (int i = 0; i < d.t; ++i) sub[i] = blk[idx[i]];
      ++count[static_cast<std::size_t>(subset_rank(sub, d.v, C))];
      int i = d.t - 1;
      while (i >= 0 && idx[i] == d.k - d.t + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < d.t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  for (long long rk = 0; rk < total; ++rk) {
    if (count[static_cast<std::size_t>(rk)] != d.lam) {
      rep.valid = false;
      rep.violating_subset = subset_unrank(rk, d.v, d.t, C);
      rep.observed = count[static_cast<std::size_t>(rk)];
      std::ostringstream os;
      os << "subset {";
      for (std::size_t i = 0; i < rep.violating_subset.size(); ++i)
        os << (i ? "," : "") << rep.violating_subset[i];
      os << "} is covered " << rep.observed << " times, expected " << d.lam;
      rep.message = os.str();
      return rep;
    }
  }
  return rep;
}

// v x b 0/1 incidence matrix, rows = points, columns = canonical blocks.
inline std::vector<std::vector<int>> incidence_matrix(const Design& d) {
  std::vector<std::vector<int>> m(d.v, std::vector<int>(d.blocks.size(), 0));
  for (std::size_t j = 0; j < d.blocks.size(); ++j)
    for (int x : d.blocks[j]) m[x][j] = 1;
  return m;
}

struct DerivedDesign {
  Design design;                        // (t-1)-(v-1, k-1, lambda) design
  std::vector<std::size_t> source_blocks;  // canonical indices into the parent
};

// Derived design at point x: blocks through x with x removed; the remaining
// points are renumbered 0..v-2 preserving their order.
inline DerivedDesign derived_design(const Design& d, int x) {
  if (x < 0 || x >= d.v) throw PreconditionError("derivation point must lie in [0, v)");
  if (d.t < 2) throw PreconditionError("derivation needs t >= 2");
  DerivedDesign out;
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const Block& blk = d.blocks[j];
    if (!std::binary_search(blk.begin(), blk.end(), x)) continue;
    Block nb;
    nb.reserve(d.k - 1);
    for (int y : blk)
      if (y != x) nb.push_back(y < x ? y : y - 1);
    blocks.push_back(std::move(nb));
    out.source_blocks.push_back(j);
  }
  out.design = make_design(d.t - 1, d.v - 1, d.k - 1, d.lam, std::move(blocks));
  return out;
}

struct DesignCounts {
  long long b = 0;                 // number of blocks
  long long r = 0;                 // replication number of a point
  long long pair_replication = 0;  // blocks through a fixed pair (t >= 2)
};

// Standard counting identities lambda_i = lambda * C(v-i, t-i) / C(k-i, t-i).
inline DesignCounts design_counts(const Design& d) {
  BinomialTable C(d.v, d.t);
  auto lam_i = [&](int i) -> long long {
    long long num = d.lam * C(d.v - i, d.t - i);
    long long den = C(d.k - i, d.t - i);
    if (den == 0 || num % den != 0)
      throw PreconditionError("design parameters fail the divisibility conditions");
    return num / den;
  };
  DesignCounts dc;
  dc.b = lam_i(0);
  dc.r = lam_i(1);
  dc.pair_replication = (d.t >= 2) ? lam_i(2) : 0;
  return dc;
}

// Stable content digest over the canonical form; independent of labels,
// cyclic metadata, and provenance.
inline std::string design_hash(const Design& d) {
  std::ostringstream os;
  os << "design-v1|" << d.t << "|" << d.v << "|" << d.k << "|" << d.lam;
  for (const auto& blk : d.blocks) {
    os << "|";
    for (std::size_t i = 0; i < blk.size(); ++i) os << (i ? "," : "") << blk[i];
  }
  return to_hex16(fnv1a64(os.str()));
}

}  // namespace steinerflow
