#pragma once
// Zero-sum flows on designs: block weight vectors with nonzero entries whose
// incidence sums vanish at every point, plus the width-2 <-> resolution
// correspondence.

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "steinerflow/design.hpp"

namespace steinerflow {

// Block weights parallel to the design's canonical block order. `design_hash`
// pins the assignment to a specific design content.
struct FlowAssignment {
  std::string design_hash;
  std::vector<int> values;
};

inline FlowAssignment make_flow(const Design& d, std::vector<int> values) {
  if (values.size() != d.blocks.size())
    throw PreconditionError("flow must assign exactly one value per block");
  for (int x : values)
    if (x == 0) throw PreconditionError("flow values must be nonzero");
  return FlowAssignment{design_hash(d), std::move(values)};
}

inline void check_flow_matches(const Design& d, const FlowAssignment& f) {
  if (f.values.size() != d.blocks.size())
    throw PreconditionError("flow length does not match the design's block count");
  if (f.design_hash != design_hash(d))
    throw PreconditionError("flow was issued for a different design (digest mismatch)");
}

// Sum of flow values over the blocks containing point x.
inline long long point_weight(const Design& d, const FlowAssignment& f, int x) {
  check_flow_matches(d, f);
  if (x < 0 || x >= d.v) throw PreconditionError("point must lie in [0, v)");
  long long s = 0;
  for (std::size_t j = 0; j < d.blocks.size(); ++j)
    if (std::binary_search(d.blocks[j].begin(), d.blocks[j].end(), x)) s += f.values[j];
  return s;
}

struct FlowVerifyReport {
  bool ok = true;
  std::string message;
  // points whose incidence sum is nonzero, with the offending sums
  std::vector<std::pair<int, long long>> nonzero_points;
};

// Checks digest, per-block nonzeroness, and that every point sums to zero.
// Problems are reported, not thrown (digest/length mismatches still throw:
// the inputs do not belong together).
inline FlowVerifyReport verify_zero_sum(const Design& d, const FlowAssignment& f) {
  check_flow_matches(d, f);
  FlowVerifyReport rep;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    if (f.values[j] == 0) {
      rep.ok = false;
      rep.message = "flow value at block " + std::to_string(j) + " is zero";
      return rep;
    }
  }
  std::vector<long long> sums(d.v, 0);
  for (std::size_t j = 0; j < d.blocks.size(); ++j)
    for (int x : d.blocks[j]) sums[x] += f.values[j];
  for (int x = 0; x < d.v; ++x)
    if (sums[x] != 0) rep.nonzero_points.emplace_back(x, sums[x]);
  if (!rep.nonzero_points.empty()) {
    rep.ok = false;
    std::ostringstream os;
    os << rep.nonzero_points.size() << " point(s) have nonzero weight; first is point "
       << rep.nonzero_points.front().first << " with weight " << rep.nonzero_points.front().second;
    rep.message = os.str();
  }
  return rep;
}

// A zero-sum k-flow has entries in {+-1, ..., +-(k-1)}; the width of an
// assignment is the least such k, i.e. max|value| + 1.
inline int flow_width(const FlowAssignment& f) {
  int m = 0;
  for (int x : f.values) m = std::max(m, std::abs(x));
  return m + 1;
}

// Partition of the block set into rho classes, each covering every point
// exactly alpha times. Invariant: alpha * rho = r (the replication number).
struct Resolution {
  long long alpha = 0;
  long long rho = 0;
  std::vector<std::vector<std::size_t>> classes;  // canonical block indices
};

inline Resolution make_resolution(const Design& d,
                                  std::vector<std::vector<std::size_t>> classes) {
  Resolution res;
  std::vector<int> seen(d.blocks.size(), 0);
  long long alpha = -1;
  for (const auto& cls : classes) {
    std::vector<long long> cover(d.v, 0);
    for (std::size_t j : cls) {
      if (j >= d.blocks.size()) throw PreconditionError("class references a block out of range");
      if (seen[j]++) throw PreconditionError("a block appears in two classes");
      for (int x : d.blocks[j]) ++cover[x];
    }
    for (int x = 0; x < d.v; ++x) {
      if (alpha < 0 && x == 0) alpha = cover[0];
      if (cover[x] != (alpha < 0 ? cover[0] : alpha))
        throw PreconditionError("a class does not cover every point equally often");
    }
    if (alpha < 0) alpha = cover.empty() ? 0 : cover[0];
  }
  for (std::size_t j = 0; j < d.blocks.size(); ++j)
    if (!seen[j]) throw PreconditionError("a block is missing from the class partition");
  res.alpha = alpha;
  res.rho = static_cast<long long>(classes.size());
  res.classes = std::move(classes);
  long long r = design_counts(d).r;
  if (res.alpha * res.rho != r)
    throw PreconditionError("class count times class coverage must equal the replication number");
  return res;
}

// A verified width-2 zero-sum flow splits the blocks into the +1 class and
// the -1 class; zero point sums make each class an (r/2)-parallel class.
inline Resolution two_flow_to_resolution(const Design& d, const FlowAssignment& f) {
  check_flow_matches(d, f);
  if (flow_width(f) != 2)
    throw PreconditionError("conversion to a two-class resolution needs all values in {+1,-1}");
  if (!verify_zero_sum(d, f).ok)
    throw PreconditionError("conversion to a resolution needs a zero-sum flow");
  std::vector<std::size_t> plus, minus;
  for (std::size_t j = 0; j < f.values.size(); ++j)
    (f.values[j] > 0 ? plus : minus).push_back(j);
  return make_resolution(d, {std::move(plus), std::move(minus)});
}

// With an even number of classes, +1 on the first rho/2 classes and -1 on the
// rest is a zero-sum flow of width 2.
inline FlowAssignment resolution_to_two_flow(const Design& d, const Resolution& res) {
  if (res.rho % 2 != 0)
    throw PreconditionError("a two-valued flow from a resolution needs an even class count");
  std::vector<int> values(d.blocks.size(), 0);
  for (std::size_t c = 0; c < res.classes.size(); ++c)
    for (std::size_t j : res.classes[c])
      values[j] = (c < res.classes.size() / 2) ? 1 : -1;
  return make_flow(d, std::move(values));
}

}  // namespace steinerflow
