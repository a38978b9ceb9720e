// Cyclic triple systems: difference families, orbit structure, flow schemes.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <set>

#include "steinerflow/cyclic.hpp"
#include "steinerflow/io.hpp"

using namespace steinerflow;

namespace {
std::string fixture(const std::string& name) {
  const char* dir = std::getenv("SF_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

// every admissible order in the desk-scale window
const std::vector<int> kDeskOrders = {13, 15, 19, 21, 25, 27, 31, 33, 37, 39, 43, 45};
}  // namespace

TEST_CASE("least difference families for small orders") {
  auto b7 = find_base_blocks(7);
  REQUIRE(b7.full == std::vector<Block>{{0, 1, 3}});
  REQUIRE_FALSE(b7.short_block.has_value());
  auto b13 = find_base_blocks(13);
  REQUIRE(b13.full == std::vector<Block>{{0, 1, 4}, {0, 2, 7}});
  auto b15 = find_base_blocks(15);
  REQUIRE(b15.full == std::vector<Block>{{0, 1, 4}, {0, 2, 8}});
  REQUIRE(b15.short_block == Block{0, 5, 10});
}

TEST_CASE("order 9 and inadmissible orders are rejected") {
  REQUIRE_THROWS_WITH(find_base_blocks(9), Catch::Matchers::ContainsSubstring("9 points"));
  REQUIRE_THROWS_AS(find_base_blocks(8), PreconditionError);
  REQUIRE_THROWS_AS(find_base_blocks(11), PreconditionError);
  REQUIRE_THROWS_AS(find_base_blocks(5), PreconditionError);
}

TEST_CASE("difference-family validation names the colliding class") {
  BaseBlocks bad;
  bad.v = 13;
  bad.full = {{0, 1, 3}, {0, 2, 7}};  // both cover class 2
  REQUIRE_THROWS_WITH(check_difference_family(bad),
                      Catch::Matchers::ContainsSubstring("difference class 2"));
  BaseBlocks missing_short;
  missing_short.v = 15;
  missing_short.full = {{0, 1, 4}, {0, 2, 8}};
  REQUIRE_THROWS_AS(check_difference_family(missing_short), PreconditionError);
}

TEST_CASE("orbit expansion reproduces the bundled 15-point systems") {
  auto c1 = expand_orbits(find_base_blocks(15));
  REQUIRE(c1.design.b() == 35);
  auto ld1 = load_design(fixture("sts15_1.design.json"));
  REQUIRE(design_hash(c1.design) == design_hash(ld1.design));

  BaseBlocks alt;
  alt.v = 15;
  alt.full = {{0, 1, 4}, {0, 2, 9}};
  alt.short_block = Block{0, 5, 10};
  auto c2 = expand_orbits(alt);
  auto ld2 = load_design(fixture("sts15_2.design.json"));
  REQUIRE(design_hash(c2.design) == design_hash(ld2.design));
}

TEST_CASE("orbit expansion block counts and bookkeeping") {
  auto c13 = expand_orbits(find_base_blocks(13));
  REQUIRE(c13.design.b() == 26);
  REQUIRE_FALSE(c13.short_orbit_index.has_value());
  auto c7 = expand_orbits(find_base_blocks(7));
  REQUIRE(c7.design.b() == 7);
  REQUIRE(validate_design(c7.design).valid);
  // shift bookkeeping: shifting a block by +1 lands in the same orbit
  auto c15 = expand_orbits(find_base_blocks(15));
  for (std::size_t j = 0; j < c15.design.blocks.size(); ++j) {
    Block shifted;
    for (int x : c15.design.blocks[j]) shifted.push_back((x + 1) % 15);
    std::sort(shifted.begin(), shifted.end());
    auto it = std::lower_bound(c15.design.blocks.begin(), c15.design.blocks.end(), shifted);
    REQUIRE(it != c15.design.blocks.end());
    REQUIRE(*it == shifted);
    std::size_t j2 = it - c15.design.blocks.begin();
    REQUIRE(c15.orbit_of_block[j] == c15.orbit_of_block[j2]);
  }
}

TEST_CASE("orbit type classification") {
  REQUIRE(classify_orbit({0, 1, 4}, 15) == 2);
  REQUIRE(classify_orbit({0, 5, 10}, 15) == 3);
  REQUIRE(classify_orbit({0, 3, 6}, 15) == 1);
  REQUIRE(classify_orbit({0, 1, 2}, 15) == 3);
}

TEST_CASE("census of the 15-point system") {
  auto c = expand_orbits(find_base_blocks(15));
  auto oc = orbit_census(c);
  REQUIRE(oc.type1 == 0);
  REQUIRE(oc.type2 == 2);
  REQUIRE(oc.type3 == 0);
  REQUIRE(oc.short_type == 3);
}

TEST_CASE("full-orbit structure properties at desk scale") {
  for (int v : kDeskOrders) {
    if (v % 6 != 3) continue;
    CAPTURE(v);
    auto c = expand_orbits(find_base_blocks(v));
    auto oc = orbit_census(c);
    if (v % 18 == 9) {
      // a Type-3 full orbit always exists here
      REQUIRE(oc.type3 >= 1);
    } else if (oc.type3 == 0) {
      // without a Type-3 full orbit there is no Type-1 full orbit either
      REQUIRE(oc.type1 == 0);
    }
  }
}

TEST_CASE("a Type-3 orbit's every-third-shift covers each point once") {
  for (int v : {27, 45}) {
    CAPTURE(v);
    auto c = expand_orbits(find_base_blocks(v));
    int t3 = -1;
    for (std::size_t i = 0; i < c.orbit_types.size(); ++i)
      if (c.orbit_types[i] == 3) {
        t3 = static_cast<int>(i);
        break;
      }
    REQUIRE(t3 >= 0);
    const Block& base = c.base.full[t3];
    std::set<int> hit;
    for (int i = 0; i < v / 3; ++i)
      for (int x : base) hit.insert((x + 3 * i) % v);
    REQUIRE(hit.size() == static_cast<std::size_t>(v));
  }
}

TEST_CASE("flow schemes verify across the desk-scale window") {
  for (int v : kDeskOrders) {
    CAPTURE(v);
    auto c = expand_orbits(find_base_blocks(v));
    auto res = assign_flow_cyclic(c);
    REQUIRE(verify_zero_sum(c.design, res.flow).ok);
    REQUIRE(res.width == flow_width(res.flow));
    if (v % 6 == 1 || v % 18 == 9) {
      REQUIRE(res.width <= 3);
    } else {
      REQUIRE(res.width <= 4);
    }
  }
}

TEST_CASE("the 13-point scheme is the two-orbit alternation") {
  auto c = expand_orbits(find_base_blocks(13));
  auto res = assign_flow_cyclic(c);
  REQUIRE(res.width == 2);
  REQUIRE(res.scheme == "alternating-orbit-constants");
  for (std::size_t j = 0; j < c.design.blocks.size(); ++j)
    REQUIRE(res.flow.values[j] == (c.orbit_of_block[j] == 0 ? 1 : -1));
}

TEST_CASE("flow scheme case selection") {
  // v = 19: three full orbits, odd count -> 2,-1,-1; width 3
  auto c19 = expand_orbits(find_base_blocks(19));
  auto r19 = assign_flow_cyclic(c19);
  REQUIRE(r19.width == 3);
  REQUIRE(r19.scheme == "alternating-orbit-constants");
  // v = 15: only Type-2 full orbits -> short-orbit-heavy, width 4
  auto c15 = expand_orbits(find_base_blocks(15));
  auto r15 = assign_flow_cyclic(c15);
  REQUIRE(r15.scheme == "short-orbit-heavy");
  REQUIRE(r15.width == 4);
  // v = 27: Type-3 orbit exists, even full-orbit count -> short gets 2
  auto c27 = expand_orbits(find_base_blocks(27));
  auto r27 = assign_flow_cyclic(c27);
  REQUIRE(r27.scheme == "type3-patterned");
  REQUIRE(r27.width == 3);
}

TEST_CASE("the 7-point system is refused with the rank explanation") {
  auto c = expand_orbits(find_base_blocks(7));
  REQUIRE_THROWS_WITH(assign_flow_cyclic(c), Catch::Matchers::ContainsSubstring("full rank"));
}

TEST_CASE("cyclic metadata and provenance are attached") {
  auto c = expand_orbits(find_base_blocks(15));
  REQUIRE(c.design.cyclic.has_value());
  REQUIRE(c.design.cyclic->base_blocks == std::vector<Block>{{0, 1, 4}, {0, 2, 8}});
  REQUIRE(c.design.cyclic->has_short);
  REQUIRE(c.design.provenance.has_value());
  REQUIRE(c.design.provenance->construction == "cyclic");
}
