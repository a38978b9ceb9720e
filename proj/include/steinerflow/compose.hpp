#pragma once
// Composition constructions for triple systems: the product construction
// STS(v) x STS(w) -> STS(vw) with transversal-weighted cross blocks, and the
// doubling construction STS(v) -> STS(2v+7) in a plain form and in a
// flow-carrying form built from half partitions and a width-2 weighted
// bipartite factorization.

#include <algorithm>
#include <string>
#include <vector>

#include "steinerflow/design.hpp"
#include "steinerflow/factorization.hpp"
#include "steinerflow/flow.hpp"
#include "steinerflow/latin.hpp"

namespace steinerflow {

struct DesignWithFlow {
  Design design;
  FlowAssignment flow;
};

namespace detail {
inline void require_valid_sts(const Design& d, const char* role) {
  if (d.t != 2 || d.k != 3 || d.lam != 1)
    throw PreconditionError(std::string(role) + " must be a 2-(v,3,1) design");
  if (d.v % 6 != 1 && d.v % 6 != 3)
    throw PreconditionError(std::string(role) +
                            " has an inadmissible order (v must be 1 or 3 mod 6)");
  auto rep = validate_design(d);
  if (!rep.valid)
    throw PreconditionError(std::string(role) + " is not a valid triple system: " + rep.message);
}

inline void require_verified_flow(const Design& d, const FlowAssignment& f, const char* role) {
  auto rep = verify_zero_sum(d, f);
  if (!rep.ok)
    throw PreconditionError(std::string(role) + " flow fails verification: " + rep.message);
}
}  // namespace detail

// Product construction: point (i,j) of STS(vw) is j*v + i, with i an inner
// point and j an outer point. Type A blocks are the w point-copies of the
// inner system, each inheriting the inner flow. Type B blocks come from each
// outer block {p,s,t}: the cyclic square L of order v contributes blocks
// {(i,p), (j,s), (L(i,j),t)}; the broken-diagonal transversal T_c containing
// (i,j) fixes the weight: T_1 -> +2, T_2 -> -1, T_3 -> -1, T_c -> (-1)^c
// (1-based, c >= 4). Output width is max(inner width, 3).
inline DesignWithFlow construct_product_sts(const Design& inner, const FlowAssignment& inner_flow,
                                            const Design& outer) {
  detail::require_valid_sts(inner, "the inner system");
  detail::require_valid_sts(outer, "the outer system");
  detail::require_verified_flow(inner, inner_flow, "the inner");
  const int v = inner.v, w = outer.v;
  auto point = [v](int i, int j) { return j * v + i; };

  std::vector<Block> blocks;
  std::vector<int> values;
  // Type A
  for (int j = 0; j < w; ++j)
    for (std::size_t b = 0; b < inner.blocks.size(); ++b) {
      Block nb;
      for (int x : inner.blocks[b]) nb.push_back(point(x, j));
      blocks.push_back(std::move(nb));
      values.push_back(inner_flow.values[b]);
    }
  // Type B; transversal weights in canonical broken-diagonal order
  auto transversal_weight = [](int c_zero_based) {
    int c = c_zero_based + 1;
    if (c == 1) return 2;
    if (c == 2 || c == 3) return -1;
    return (c % 2 == 0) ? 1 : -1;
  };
  LatinSquare L = cyclic_square(v);
  auto transversals = transversal_decomposition(L);
  std::vector<std::vector<int>> transversal_of(v, std::vector<int>(v, -1));
  for (std::size_t c = 0; c < transversals.size(); ++c)
    for (int i = 0; i < v; ++i) transversal_of[i][transversals[c].col_of_row[i]] = (int)c;
  for (const Block& ob : outer.blocks) {
    int p = ob[0], s = ob[1], t = ob[2];
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j) {
        blocks.push_back({point(i, p), point(j, s), point(L(i, j), t)});
        values.push_back(transversal_weight(transversal_of[i][j]));
      }
  }
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  canonicalize(blocks, &values);
  Design d = make_design(2, v * w, 3, 1, blocks);
  auto rep = validate_design(d);
  if (!rep.valid)
    throw std::logic_error("product construction produced an invalid design: " + rep.message);
  d.provenance = Provenance{
      "product", {{"inner", design_hash(inner)}, {"outer", design_hash(outer)}}};
  DesignWithFlow out{std::move(d), {}};
  out.flow = make_flow(out.design, std::move(values));
  auto frep = verify_zero_sum(out.design, out.flow);
  if (!frep.ok) throw std::logic_error("product flow failed verification: " + frep.message);
  return out;
}

// Doubling without a flow: new points v..2v+6 carry a triangles-plus-factors
// partition of K_{v+7}; factor F_i is joined to inner point i-1.
inline Design construct_plain_2v7(const Design& inner, long long budget = 200'000'000) {
  detail::require_valid_sts(inner, "the inner system");
  if (inner.v % 2 != 1) throw PreconditionError("the doubling construction needs odd v");
  const int v = inner.v, n = v + 7;
  auto p = triangle_factor_partition(n, budget);
  std::vector<Block> blocks = inner.blocks;
  for (const auto& tri : p.triangles)
    blocks.push_back({tri[0] + v, tri[1] + v, tri[2] + v});
  for (std::size_t f = 0; f < p.factors.size(); ++f)
    for (auto [a, b] : p.factors[f])
      blocks.push_back({static_cast<int>(f), a + v, b + v});
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  Design d = make_design(2, 2 * v + 7, 3, 1, blocks);
  auto rep = validate_design(d);
  if (!rep.valid)
    throw std::logic_error("doubling produced an invalid design: " + rep.message);
  d.provenance = Provenance{"double7-plain", {{"inner", design_hash(inner)}}};
  return d;
}

// Doubling with a flow. The v+7 new points split into halves K and K' of
// size t+7 each (t = (v-7)/2, odd and >= 3). Each half carries the same
// triangles-plus-factors partition: K's triangles get +1, K''s get -1; K's
// factor F_i joins inner point x_i (i = 1..t) with the canonical factor
// weights (-1,-1,-1,(-1)^j...), K''s factors join the same x_i with the
// negated weights. The bipartite edges between the halves carry a width-2
// weighted factorization of K_{t+7,t+7}, factor i joined to x_{t+i}.
inline DesignWithFlow construct_double_plus7_with_flow(const Design& inner,
                                                       const FlowAssignment& inner_flow,
                                                       long long budget = 200'000'000) {
  detail::require_valid_sts(inner, "the inner system");
  detail::require_verified_flow(inner, inner_flow, "the inner");
  const int v = inner.v;
  if (v % 4 != 1 || v <= 9)
    throw PreconditionError(
        "the flow-carrying doubling needs v = 1 (mod 4) with v > 9, so that the half size "
        "t = (v-7)/2 is an odd number at least 3; smaller or even t would force a weight of "
        "magnitude 3 on a factor");
  const int t = (v - 7) / 2;
  const int n = t + 7;  // half size, even, >= 10, != 6
  const int baseK = v, baseKp = v + n;
  auto part = triangle_factor_partition(n, budget);
  auto rw = decompose_partition_weights(part);
  auto bip = k_null_bipartite(n, 2);

  std::vector<Block> blocks = inner.blocks;
  std::vector<int> values = inner_flow.values;
  // triangles of K (+1) and K' (-1)
  for (const auto& tri : part.triangles) {
    blocks.push_back({tri[0] + baseK, tri[1] + baseK, tri[2] + baseK});
    values.push_back(1);
    blocks.push_back({tri[0] + baseKp, tri[1] + baseKp, tri[2] + baseKp});
    values.push_back(-1);
  }
  // factor-joined blocks at x_1..x_t (inner points 0..t-1)
  if (static_cast<int>(part.factors.size()) != t)
    throw std::logic_error("half partition must expose exactly t factors");
  for (int f = 0; f < t; ++f)
    for (auto [a, b] : part.factors[f]) {
      blocks.push_back({f, a + baseK, b + baseK});
      values.push_back(rw.factor_weights[f]);
      blocks.push_back({f, a + baseKp, b + baseKp});
      values.push_back(-rw.factor_weights[f]);
    }
  // bipartite factors at x_{t+1}..x_{t+n} (inner points t..t+n-1 = v-1)
  for (int f = 0; f < n; ++f)
    for (std::size_t e = 0; e < bip.base.factors[f].size(); ++e) {
      auto [a, b] = bip.base.factors[f][e];
      blocks.push_back({t + f, a + baseK, b + baseKp});
      values.push_back(bip.weights[f][e]);
    }
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  canonicalize(blocks, &values);
  Design d = make_design(2, 2 * v + 7, 3, 1, blocks);
  auto rep = validate_design(d);
  if (!rep.valid)
    throw std::logic_error("flow-carrying doubling produced an invalid design: " + rep.message);
  d.provenance = Provenance{"double7", {{"inner", design_hash(inner)}}};
  DesignWithFlow out{std::move(d), {}};
  out.flow = make_flow(out.design, std::move(values));
  auto frep = verify_zero_sum(out.design, out.flow);
  if (!frep.ok) throw std::logic_error("doubling flow failed verification: " + frep.message);
  return out;
}

}  // namespace steinerflow
