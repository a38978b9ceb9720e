// Steiner quadruple systems: the two small built-in systems with their
// flows, the doubling and product constructions with flow transport, the
// ternary completion operation, and flows from 2-resolutions.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinerflow/compose.hpp"
#include "steinerflow/design.hpp"
#include "steinerflow/factorization.hpp"
#include "steinerflow/flow.hpp"

namespace steinerflow {

namespace detail {

inline void require_valid_sqs(const Design& d, const char* role) {
  if (d.t != 3 || d.k != 4 || d.lam != 1)
    throw PreconditionError(std::string(role) + " must be a 3-(v,4,1) design");
  if (d.v % 6 != 2 && d.v % 6 != 4)
    throw PreconditionError(std::string(role) +
                            " has an inadmissible order (v must be 2 or 4 mod 6)");
  auto rep = validate_design(d);
  if (!rep.valid)
    throw PreconditionError(std::string(role) +
                            " is not a valid quadruple system: " + rep.message);
}

// Weight attached to 1-factor number i (1-based) when factor-indexed blocks
// are combined: 2, -1, -1, then (-1)^i.  With an odd factor count the tail
// i = 4..count has evenly many terms, so the weights sum to zero and every
// vertex (met once per factor) balances.
inline int factor_weight(int i) {
  if (i == 1) return 2;
  if (i == 2 || i == 3) return -1;
  return (i % 2 == 0) ? 1 : -1;
}

}  // namespace detail

// The unique 8- and 10-point quadruple systems with their published flow
// values (width 3 and 2). Tables are stored with 1-based symbols; symbol 0
// in the 10-point table is the tenth point (index 9), and the original
// symbols are preserved as point labels.
inline DesignWithFlow builtin_sqs(int n) {
  static const int table8[14][5] = {
      {1, 2, 4, 8, 1},  {3, 5, 6, 7, 1},  {2, 3, 5, 8, 1},  {1, 4, 6, 7, 1},
      {3, 4, 6, 8, 2},  {1, 2, 5, 7, 2},  {4, 5, 7, 8, -1}, {1, 2, 3, 6, -1},
      {1, 5, 6, 8, -1}, {2, 3, 4, 7, -1}, {2, 6, 7, 8, -1}, {1, 3, 4, 5, -1},
      {1, 3, 7, 8, -1}, {2, 4, 5, 6, -1}};
  static const int table10[30][5] = {
      {1, 2, 4, 5, 1},  {1, 2, 3, 7, -1}, {1, 3, 5, 8, 1},  {2, 3, 5, 6, -1},
      {2, 3, 4, 8, 1},  {2, 4, 6, 9, -1}, {3, 4, 6, 7, 1},  {3, 4, 5, 9, -1},
      {3, 5, 7, 0, 1},  {4, 5, 7, 8, -1}, {4, 5, 6, 0, 1},  {1, 4, 6, 8, -1},
      {5, 6, 8, 9, 1},  {1, 5, 6, 7, -1}, {2, 5, 7, 9, 1},  {6, 7, 9, 0, -1},
      {2, 6, 7, 8, 1},  {3, 6, 8, 0, -1}, {1, 7, 8, 0, 1},  {3, 7, 8, 9, -1},
      {1, 4, 7, 9, 1},  {1, 2, 8, 9, -1}, {4, 8, 9, 0, 1},  {2, 5, 8, 0, -1},
      {2, 3, 9, 0, 1},  {1, 5, 9, 0, -1}, {1, 3, 6, 9, 1},  {1, 3, 4, 0, -1},
      {1, 2, 6, 0, 1},  {2, 4, 7, 0, -1}};
  if (n != 8 && n != 10)
    throw PreconditionError("built-in quadruple systems exist only for 8 and 10 points");

  std::vector<Block> blocks;
  std::vector<int> values;
  std::vector<std::string> labels;
  auto to_index = [n](int symbol) { return symbol == 0 ? 9 : symbol - 1; };
  if (n == 8) {
    for (const auto& row : table8) {
      blocks.push_back({to_index(row[0]), to_index(row[1]), to_index(row[2]), to_index(row[3])});
      values.push_back(row[4]);
    }
    for (int i = 1; i <= 8; ++i) labels.push_back(std::to_string(i));
  } else {
    for (const auto& row : table10) {
      blocks.push_back({to_index(row[0]), to_index(row[1]), to_index(row[2]), to_index(row[3])});
      values.push_back(row[4]);
    }
    for (int i = 1; i <= 9; ++i) labels.push_back(std::to_string(i));
    labels.push_back("0");
  }
  canonicalize(blocks, &values);
  DesignWithFlow out;
  out.design = make_design(3, n, 4, 1, std::move(blocks), std::move(labels));
  out.design.provenance = Provenance{"builtin", {{"n", std::to_string(n)}}};
  out.flow = make_flow(out.design, std::move(values));
  if (!validate_design(out.design).valid || !verify_zero_sum(out.design, out.flow).ok)
    throw std::logic_error("built-in quadruple system failed self-check");
  return out;
}

// The completion operation of a quadruple system: for distinct a, b, c the
// result is the fourth point of the unique block through them; when two
// arguments coincide the result is the remaining argument (so the map
// z -> <a,b,z> is a bijection for every fixed a != b).
class TernaryOp {
 public:
  explicit TernaryOp(const Design& d) : v_(d.v), fourth_(std::size_t(d.v) * d.v * d.v, -1) {
    detail::require_valid_sqs(d, "the backing system");
    for (const Block& blk : d.blocks)
      for (int drop = 0; drop < 4; ++drop) {
        int tri[3], w = 0;
        for (int pos = 0; pos < 4; ++pos)
          if (pos != drop) tri[w++] = blk[pos];
        fourth_[index(tri[0], tri[1], tri[2])] = blk[drop];
      }
  }

  int v() const { return v_; }

  int operator()(int a, int b, int c) const {
    if (a < 0 || a >= v_ || b < 0 || b >= v_ || c < 0 || c >= v_)
      throw PreconditionError("ternary operation arguments must be points of the system");
    if (a == b) return c;
    if (a == c) return b;
    if (b == c) return a;
    int x = a, y = b, z = c;
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    return fourth_[index(x, y, z)];
  }

 private:
  std::size_t index(int a, int b, int c) const {
    return (std::size_t(a) * v_ + b) * v_ + c;
  }
  int v_;
  std::vector<int> fourth_;  // indexed by sorted distinct triples
};

// Doubling: two disjoint quadruple systems of order v plus the cross blocks
// {x1,x2,y1,y2} with {x1,x2} and {y1,y2} edges of the same-numbered 1-factor
// (circle-method factorizations on both sides). Kept flows on both halves;
// cross blocks take their factor's weight, which balances because each point
// lies in v/2 cross blocks per factor and the factor weights sum to zero.
inline DesignWithFlow construct_sqs_double(const Design& a, const FlowAssignment& fa,
                                           const Design& b, const FlowAssignment& fb) {
  detail::require_valid_sqs(a, "the left system");
  detail::require_valid_sqs(b, "the right system");
  if (a.v != b.v) throw PreconditionError("doubling needs two systems of the same order");
  detail::require_verified_flow(a, fa, "the left");
  detail::require_verified_flow(b, fb, "the right");
  const int v = a.v;

  std::vector<Block> blocks;
  std::vector<int> values;
  for (std::size_t j = 0; j < a.blocks.size(); ++j) {
    blocks.push_back(a.blocks[j]);
    values.push_back(fa.values[j]);
  }
  for (std::size_t j = 0; j < b.blocks.size(); ++j) {
    Block blk = b.blocks[j];
    for (int& x : blk) x += v;
    blocks.push_back(std::move(blk));
    values.push_back(fb.values[j]);
  }
  OneFactorization f = complete_one_factorization(v);
  for (std::size_t m = 0; m < f.factors.size(); ++m) {
    int wgt = detail::factor_weight(static_cast<int>(m) + 1);
    for (const Edge& ex : f.factors[m])
      for (const Edge& ey : f.factors[m]) {
        blocks.push_back({ex.first, ex.second, ey.first + v, ey.second + v});
        values.push_back(wgt);
      }
  }
  canonicalize(blocks, &values);
  DesignWithFlow out;
  out.design = make_design(3, 2 * v, 4, 1, std::move(blocks));
  out.design.provenance = Provenance{"sqs-double", {{"v", std::to_string(v)}}};
  out.flow = make_flow(out.design, std::move(values));
  if (!validate_design(out.design).valid || !verify_zero_sum(out.design, out.flow).ok)
    throw std::logic_error("doubled quadruple system failed self-check");
  return out;
}

// Product: points (a, y_j) = j*u + a for a quadruple system of order u on X
// and one of order v on Y. Three block families:
//   (1) a copy of the u-point system on each X_{y_j}, inheriting its flow;
//   (2) for copies i < j and each 1-factor number m, all pairs of an F_m
//       edge on X_{y_i} with an F_m edge on X_{y_j}, weighted by the factor
//       weights (every copy uses the same circle-method factorization);
//   (3) for each block {y_i,y_j,y_t,y_s} (i<j<t<s) of the outer system and
//       all (a,b,c) in X^3, the block {(a,y_i),(b,y_j),(c,y_t),(d,y_s)}
//       with d the ternary completion of (a,b,c), weighted by the outer
//       block's flow value. A point (a,y_i) lies in u^2 such blocks per
//       outer block through y_i, so family (3) balances copy-by-copy.
inline DesignWithFlow construct_sqs_product(const Design& a, const FlowAssignment& fa,
                                            const Design& b, const FlowAssignment& fb) {
  detail::require_valid_sqs(a, "the inner system");
  detail::require_valid_sqs(b, "the outer system");
  detail::require_verified_flow(a, fa, "the inner");
  detail::require_verified_flow(b, fb, "the outer");
  const int u = a.v, v = b.v;
  auto point = [u](int x, int copy) { return copy * u + x; };
  TernaryOp op(a);

  std::vector<Block> blocks;
  std::vector<int> values;
  for (int j = 0; j < v; ++j)
    for (std::size_t idx = 0; idx < a.blocks.size(); ++idx) {
      const Block& blk = a.blocks[idx];
      blocks.push_back({point(blk[0], j), point(blk[1], j), point(blk[2], j), point(blk[3], j)});
      values.push_back(fa.values[idx]);
    }
  OneFactorization f = complete_one_factorization(u);
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      for (std::size_t m = 0; m < f.factors.size(); ++m) {
        int wgt = detail::factor_weight(static_cast<int>(m) + 1);
        for (const Edge& ex : f.factors[m])
          for (const Edge& ey : f.factors[m]) {
            blocks.push_back({point(ex.first, i), point(ex.second, i), point(ey.first, j),
                              point(ey.second, j)});
            values.push_back(wgt);
          }
      }
  for (std::size_t idx = 0; idx < b.blocks.size(); ++idx) {
    const Block& yb = b.blocks[idx];  // canonical blocks are ascending
    int wgt = fb.values[idx];
    for (int x = 0; x < u; ++x)
      for (int y = 0; y < u; ++y)
        for (int z = 0; z < u; ++z) {
          blocks.push_back({point(x, yb[0]), point(y, yb[1]), point(z, yb[2]),
                            point(op(x, y, z), yb[3])});
          values.push_back(wgt);
        }
  }
  canonicalize(blocks, &values);
  DesignWithFlow out;
  out.design = make_design(3, u * v, 4, 1, std::move(blocks));
  out.design.provenance =
      Provenance{"sqs-product", {{"u", std::to_string(u)}, {"v", std::to_string(v)}}};
  out.flow = make_flow(out.design, std::move(values));
  if (!validate_design(out.design).valid || !verify_zero_sum(out.design, out.flow).ok)
    throw std::logic_error("product quadruple system failed self-check");
  return out;
}

namespace detail {
// Checks that every class of the partition is itself a 2-(v,4,1) design and
// that there are (v-2)/2 of them (an odd number when v = 4 mod 12).
inline void require_two_partition(const Design& q, const Resolution& res) {
  if (q.v % 12 != 4)
    throw PreconditionError(
        "a partition into 2-(v,4,1) designs requires v to be 4 mod 12 "
        "(each class needs v to be 1 or 4 mod 12, and v is even)");
  if (static_cast<int>(res.classes.size()) != (q.v - 2) / 2)
    throw PreconditionError("the partition must have (v-2)/2 classes, got " +
                            std::to_string(res.classes.size()));
  for (std::size_t c = 0; c < res.classes.size(); ++c) {
    std::vector<Block> cls;
    for (std::size_t j : res.classes[c]) cls.push_back(q.blocks.at(j));
    Design sub = make_design(2, q.v, 4, 1, std::move(cls));
    auto rep = validate_design(sub);
    if (!rep.valid)
      throw PreconditionError("class " + std::to_string(c) +
                              " is not a 2-(v,4,1) design: " + rep.message);
  }
}
}  // namespace detail

// Flow from a partition of a quadruple system into (v-2)/2 point-pair
// designs: class weights 2, -1, -1, then alternating +1, -1. The class count
// is odd, so the weights sum to zero, and every point lies in (v-1)/3 blocks
// of each class, making every point weight zero. Width 3.
inline FlowAssignment assign_flow_2resolvable(const Design& q, const Resolution& res) {
  detail::require_two_partition(q, res);
  std::vector<int> values(q.blocks.size(), 0);
  for (std::size_t c = 0; c < res.classes.size(); ++c) {
    int wgt = detail::factor_weight(static_cast<int>(c) + 1);
    for (std::size_t j : res.classes[c]) values[j] = wgt;
  }
  FlowAssignment flow = make_flow(q, std::move(values));
  if (!verify_zero_sum(q, flow).ok)
    throw std::logic_error("class-weight flow failed self-check");
  return flow;
}

// Derived triple system at x with each triple inheriting its source block's
// class weight. Every pair {x,y} lies in exactly one block of each class, so
// point y collects each class weight exactly once and balances.
inline DesignWithFlow derived_two_resolvable(const Design& q, const Resolution& res, int x) {
  detail::require_two_partition(q, res);
  std::vector<int> class_of(q.blocks.size(), -1);
  for (std::size_t c = 0; c < res.classes.size(); ++c)
    for (std::size_t j : res.classes[c]) class_of[j] = static_cast<int>(c);
  DerivedDesign der = derived_design(q, x);
  std::vector<int> values;
  values.reserve(der.source_blocks.size());
  for (std::size_t src : der.source_blocks)
    values.push_back(detail::factor_weight(class_of[src] + 1));
  DesignWithFlow out;
  out.design = std::move(der.design);
  out.flow = make_flow(out.design, std::move(values));
  if (!verify_zero_sum(out.design, out.flow).ok)
    throw std::logic_error("derived class-weight flow failed self-check");
  return out;
}

namespace detail {

// Depth-first exact-cover search for one 2-(v,4,1) class among the unused
// blocks: repeatedly pick the uncovered pair with the fewest usable blocks
// and branch on them. Runs over classes with full backtracking; `nodes`
// counts block placements against the budget.
class TwoPartitionSearch {
 public:
  TwoPartitionSearch(const Design& q, long long budget) : q_(q), budget_(budget) {
    pair_count_ = q.v * (q.v - 1) / 2;
    block_pairs_.resize(q.blocks.size());
    by_pair_.resize(pair_count_);
    for (std::size_t j = 0; j < q.blocks.size(); ++j) {
      const Block& blk = q.blocks[j];
      for (int p = 0; p < 4; ++p)
        for (int s = p + 1; s < 4; ++s) {
          int id = pair_id(blk[p], blk[s]);
          block_pairs_[j].push_back(id);
          by_pair_[id].push_back(j);
        }
    }
    used_.assign(q.blocks.size(), 0);
    covered_.assign(pair_count_, 0);
  }

  std::vector<std::vector<std::size_t>> run() {
    if (!place_class((q_.v - 2) / 2))
      throw PreconditionError(
          "the block set admits no partition into 2-(v,4,1) designs "
          "within the explored space");
    return classes_;
  }

 private:
  int pair_id(int a, int b) const {
    if (a > b) std::swap(a, b);
    return a * q_.v + b - (a + 1) * (a + 2) / 2;
  }

  bool place_class(int remaining) {
    if (remaining == 0) return true;
    std::fill(covered_.begin(), covered_.end(), 0);
    current_.clear();
    if (!extend_class(q_.v * (q_.v - 1) / 12)) return false;
    classes_.push_back(current_);
    std::vector<std::size_t> my_class = current_;
    if (place_class(remaining - 1)) return true;
    classes_.pop_back();
    for (std::size_t j : my_class) used_[j] = 0;
    return false;
  }

  bool extend_class(int need) {
    if (need == 0) return true;
    int best = -1;
    std::vector<std::size_t> cands;
    for (int p = 0; p < pair_count_; ++p) {
      if (covered_[p]) continue;
      std::vector<std::size_t> cs;
      for (std::size_t j : by_pair_[p]) {
        if (used_[j]) continue;
        bool free = true;
        for (int q : block_pairs_[j])
          if (covered_[q]) {
            free = false;
            break;
          }
        if (free) cs.push_back(j);
      }
      if (best < 0 || cs.size() < cands.size()) {
        best = p;
        cands = std::move(cs);
        if (cands.size() <= 1) break;
      }
    }
    if (best < 0) return true;  // all pairs covered early (cannot happen mid-class)
    for (std::size_t j : cands) {
      if (++nodes_ > budget_)
        throw BudgetError("partition search exceeded the node budget", nodes_);
      used_[j] = 1;
      for (int p : block_pairs_[j]) covered_[p] = 1;
      current_.push_back(j);
      if (extend_class(need - 1)) return true;
      current_.pop_back();
      for (int p : block_pairs_[j]) covered_[p] = 0;
      used_[j] = 0;
    }
    return false;
  }

  const Design& q_;
  long long budget_;
  long long nodes_ = 0;
  int pair_count_ = 0;
  std::vector<std::vector<int>> block_pairs_;
  std::vector<std::vector<std::size_t>> by_pair_;
  std::vector<char> used_;
  std::vector<char> covered_;
  std::vector<std::size_t> current_;
  std::vector<std::vector<std::size_t>> classes_;
};

}  // namespace detail

// Budgeted search for a partition of a quadruple system into (v-2)/2 designs
// with block size 4 covering every pair once. Throws when the order rules a
// partition out, when the budget runs dry (BudgetError), or when the search
// space is exhausted without a partition.
inline Resolution find_two_partition(const Design& q, long long budget = 1000000) {
  detail::require_valid_sqs(q, "the system to partition");
  if (q.v % 12 != 4)
    throw PreconditionError(
        "a partition into 2-(v,4,1) designs requires v to be 4 mod 12 "
        "(each class needs v to be 1 or 4 mod 12, and v is even)");
  detail::TwoPartitionSearch search(q, budget);
  return make_resolution(q, search.run());
}

}  // namespace steinerflow
