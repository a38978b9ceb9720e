#pragma once
// Cyclic Steiner triple systems: difference families, orbit expansion,
// orbit types, and the per-orbit flow schemes.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "steinerflow/design.hpp"
#include "steinerflow/flow.hpp"

namespace steinerflow {

// One base triple per full orbit, plus the short orbit {0, v/3, 2v/3} when
// v = 3 (mod 6).
struct BaseBlocks {
  int v = 0;
  std::vector<Block> full;
  std::optional<Block> short_block;
};

namespace detail {
// The difference class of d in Z_v, folded to 1..v/2.
inline int diff_class(int d, int v) {
  d = ((d % v) + v) % v;
  return std::min(d, v - d);
}
}  // namespace detail

// Checks that the +-differences of the full base blocks cover every nonzero
// difference class exactly once, apart from the short orbit's class v/3.
// Throws with the colliding or missing class named.
inline void check_difference_family(const BaseBlocks& base) {
  const int v = base.v;
  if (v % 6 != 1 && v % 6 != 3)
    throw PreconditionError("a cyclic triple system needs v = 1 or 3 (mod 6)");
  const bool has_short = (v % 6 == 3);
  if (has_short != base.short_block.has_value())
    throw PreconditionError("the short orbit exists exactly when v = 3 (mod 6)");
  std::vector<int> owner(v / 2 + 1, -1);
  if (has_short) owner[v / 3] = -2;  // reserved for the short orbit
  for (std::size_t i = 0; i < base.full.size(); ++i) {
    const Block& blk = base.full[i];
    if (blk.size() != 3) throw PreconditionError("base blocks must be triples");
    int ds[3] = {detail::diff_class(blk[1] - blk[0], v), detail::diff_class(blk[2] - blk[1], v),
                 detail::diff_class(blk[2] - blk[0], v)};
    for (int d : ds) {
      if (d == 0) throw PreconditionError("a base block repeats a point (difference 0)");
      std::ostringstream os;
      if (owner[d] == -2) {
        os << "difference class " << d << " of base block " << i
           << " belongs to the short orbit";
        throw PreconditionError(os.str());
      }
      if (owner[d] != -1) {
        os << "difference class " << d << " is covered by both base block " << owner[d]
           << " and base block " << i;
        throw PreconditionError(os.str());
      }
      owner[d] = static_cast<int>(i);
    }
  }
  for (int d = 1; d <= v / 2; ++d)
    if (owner[d] == -1)
      throw PreconditionError("difference class " + std::to_string(d) +
                              " is not covered by any base block");
}

// Lexicographically least difference family, by exhaustive backtracking over
// triples {0, a, b} with 0 < a < b.
inline BaseBlocks find_base_blocks(int v) {
  if (v < 7 || (v % 6 != 1 && v % 6 != 3))
    throw PreconditionError(
        "a nontrivial cyclic triple system needs v = 1 or 3 (mod 6), v >= 7");
  if (v == 9)
    throw PreconditionError(
        "no cyclic triple system exists on 9 points: the unique 2-(9,3,1) design has no "
        "point-transitive cyclic automorphism");
  const bool has_short = (v % 6 == 3);
  const int orbits = has_short ? (v - 3) / 6 : (v - 1) / 6;
  std::vector<int> used(v / 2 + 1, 0);
  if (has_short) used[v / 3] = 1;
  std::vector<Block> family;
  std::function<bool()> rec = [&]() -> bool {
    if (static_cast<int>(family.size()) == orbits) return true;
    for (int a = 1; a < v; ++a) {
      int da = detail::diff_class(a, v);
      if (used[da]) continue;
      for (int b = a + 1; b < v; ++b) {
        int db = detail::diff_class(b, v);
        int dc = detail::diff_class(b - a, v);
        if (db == da || dc == da || db == dc || used[db] || used[dc]) continue;
        used[da] = used[db] = used[dc] = 1;
        family.push_back({0, a, b});
        if (rec()) return true;
        family.pop_back();
        used[da] = used[db] = used[dc] = 0;
      }
      // lexicographic minimality: the least unused difference must appear in
      // the next block, so only the least admissible `a` is ever tried
      break;
    }
    return false;
  };
  if (!rec())
    throw PreconditionError("no difference family exists for this order");
  BaseBlocks base;
  base.v = v;
  base.full = family;
  if (has_short) base.short_block = Block{0, v / 3, 2 * v / 3};
  check_difference_family(base);
  return base;
}

// Number of distinct residue classes mod 3 among the triple's points.
inline int classify_orbit(const Block& base_block, int v) {
  (void)v;
  std::set<int> residues;
  for (int x : base_block) residues.insert(((x % 3) + 3) % 3);
  return static_cast<int>(residues.size());
}

// A cyclic system with per-block orbit and shift bookkeeping (aligned with
// the design's canonical block order).
struct CyclicSTS {
  BaseBlocks base;
  Design design;
  std::vector<int> orbit_of_block;  // per canonical block
  std::vector<int> shift_of_block;  // per canonical block
  std::vector<int> orbit_types;     // per full orbit
  std::optional<int> short_orbit_index;
};

inline CyclicSTS expand_orbits(const BaseBlocks& base) {
  check_difference_family(base);
  const int v = base.v;
  CyclicSTS c;
  c.base = base;
  std::vector<Block> blocks;
  std::vector<int> orbit_ids, shifts;
  for (std::size_t i = 0; i < base.full.size(); ++i) {
    for (int s = 0; s < v; ++s) {
      Block b;
      for (int x : base.full[i]) b.push_back((x + s) % v);
      std::sort(b.begin(), b.end());
      blocks.push_back(std::move(b));
      orbit_ids.push_back(static_cast<int>(i));
      shifts.push_back(s);
    }
    c.orbit_types.push_back(classify_orbit(base.full[i], v));
  }
  if (base.short_block) {
    c.short_orbit_index = static_cast<int>(base.full.size());
    for (int s = 0; s < v / 3; ++s) {
      Block b;
      for (int x : *base.short_block) b.push_back((x + s) % v);
      std::sort(b.begin(), b.end());
      blocks.push_back(std::move(b));
      orbit_ids.push_back(*c.short_orbit_index);
      shifts.push_back(s);
    }
  }
  std::vector<std::size_t> perm = canonicalize(blocks);
  c.orbit_of_block.resize(blocks.size());
  c.shift_of_block.resize(blocks.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    c.orbit_of_block[i] = orbit_ids[perm[i]];
    c.shift_of_block[i] = shifts[perm[i]];
  }
  c.design = make_design(2, v, 3, 1, blocks);
  auto rep = validate_design(c.design);
  if (!rep.valid)
    throw PreconditionError("orbit expansion did not produce a triple system: " + rep.message);
  CyclicInfo info;
  info.v = v;
  info.base_blocks = base.full;
  info.has_short = base.short_block.has_value();
  c.design.cyclic = info;
  c.design.provenance = Provenance{"cyclic", {{"v", std::to_string(v)}}};
  return c;
}

struct OrbitCensus {
  int type1 = 0, type2 = 0, type3 = 0;  // full orbits by type
  std::optional<int> short_type;
};

inline OrbitCensus orbit_census(const CyclicSTS& c) {
  OrbitCensus oc;
  for (int t : c.orbit_types) {
    if (t == 1) ++oc.type1;
    if (t == 2) ++oc.type2;
    if (t == 3) ++oc.type3;
  }
  if (c.base.short_block) oc.short_type = classify_orbit(*c.base.short_block, c.base.v);
  return oc;
}

struct CyclicFlowResult {
  FlowAssignment flow;
  int width = 0;
  std::string scheme;  // which case produced it, for reporting
};

// Per-orbit flow schemes. Orbit constants c_i put weight 3*c_i on every
// point (each full orbit covers each point three times, the short orbit
// once), so the schemes only need the constants (plus the one patterned
// orbit) to net zero.
inline CyclicFlowResult assign_flow_cyclic(const CyclicSTS& c) {
  const int v = c.base.v;
  if (v == 7)
    throw PreconditionError(
        "the 7-point triple system has no zero-sum flow: its incidence matrix has full rank, so "
        "the only flow is identically zero");
  const int m = static_cast<int>(c.base.full.size());
  // orbit_value[i] for constant orbits; the patterned orbit handled apart
  std::vector<int> orbit_value(m + (c.short_orbit_index ? 1 : 0), 0);
  int patterned_orbit = -1;
  std::string scheme;

  if (v % 6 == 1) {
    // case (a): constants summing to zero over the full orbits
    scheme = "alternating-orbit-constants";
    if (m % 2 == 0) {
      for (int i = 0; i < m; ++i) orbit_value[i] = (i % 2 == 0) ? 1 : -1;
    } else {
      orbit_value[0] = 2;
      orbit_value[1] = orbit_value[2] = -1;
      for (int i = 3; i < m; ++i) orbit_value[i] = (i % 2 == 1) ? 1 : -1;
    }
  } else {
    // v = 3 (mod 6): short orbit present
    int type3 = -1;
    for (int i = 0; i < m; ++i)
      if (c.orbit_types[i] == 3) {
        type3 = i;
        break;
      }
    if (type3 >= 0) {
      // case (b) (also covers v = 3, 15 (mod 18) when a Type-3 orbit exists):
      // patterned Type-3 orbit gives +1 to every point; the other full
      // orbits take -1, +1, ... ; the short orbit balances the remainder.
      scheme = "type3-patterned";
      patterned_orbit = type3;
      int sign = -1;
      for (int i = 0; i < m; ++i) {
        if (i == type3) continue;
        orbit_value[i] = sign;
        sign = -sign;
      }
      orbit_value[m] = (m % 2 == 1) ? -1 : 2;
    } else {
      // case (c): no Type-3 full orbit
      scheme = "short-orbit-heavy";
      orbit_value[m] = -3;
      orbit_value[0] = (m % 2 == 0) ? 2 : 1;
      int sign = -1;
      for (int i = 1; i < m; ++i) {
        orbit_value[i] = sign;
        sign = -sign;
      }
    }
  }

  std::vector<int> values(c.design.blocks.size(), 0);
  for (std::size_t j = 0; j < values.size(); ++j) {
    int orbit = c.orbit_of_block[j];
    if (orbit == patterned_orbit)
      values[j] = (c.shift_of_block[j] % 3 == 0) ? -1 : 1;
    else
      values[j] = orbit_value[orbit];
  }
  CyclicFlowResult out;
  out.flow = make_flow(c.design, std::move(values));
  auto rep = verify_zero_sum(c.design, out.flow);
  if (!rep.ok) throw std::logic_error("cyclic flow scheme failed verification: " + rep.message);
  out.width = flow_width(out.flow);
  out.scheme = scheme;
  return out;
}

}  // namespace steinerflow
