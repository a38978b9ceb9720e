// Exact solver: nullspace dimension, deterministic flow search with frozen
// first solutions and node counts, minimum width, and batch scanning.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "steinerflow/cyclic.hpp"
#include "steinerflow/io.hpp"
#include "steinerflow/solver.hpp"
#include "steinerflow/sqs.hpp"

using namespace steinerflow;

namespace {

Design affine_sts9() {
  std::vector<Block> blocks;
  auto g = [](int r, int c) { return 3 * r + c; };
  for (int r = 0; r < 3; ++r) blocks.push_back({g(r, 0), g(r, 1), g(r, 2)});
  for (int c = 0; c < 3; ++c) blocks.push_back({g(0, c), g(1, c), g(2, c)});
  for (int d = 0; d < 3; ++d) {
    blocks.push_back({g(0, d % 3), g(1, (1 + d) % 3), g(2, (2 + d) % 3)});
    blocks.push_back({g(0, d % 3), g(1, (d + 2) % 3), g(2, (d + 1) % 3)});
  }
  return make_design(2, 9, 3, 1, std::move(blocks));
}

Design cyclic_sts(int v) { return expand_orbits(find_base_blocks(v)).design; }

}  // namespace

TEST_CASE("nullspace dimensions") {
  auto s7 = cyclic_sts(7);
  auto n7 = nullity_check(s7);
  REQUIRE(n7.rank == 7);
  REQUIRE(n7.nullity == 0);
  // a verified flow exists for these, so the nullspace is nontrivial
  REQUIRE(nullity_check(builtin_sqs(10).design).nullity >= 1);
  REQUIRE(nullity_check(cyclic_sts(15)).nullity >= 1);
  REQUIRE(nullity_check(affine_sts9()).nullity >= 1);
}

TEST_CASE("the 7-point system is infeasible at every width") {
  auto s7 = cyclic_sts(7);
  const std::pair<int, long long> expected[] = {{2, 10}, {3, 116}, {4, 486}, {6, 4050}};
  for (auto [k, nodes] : expected) {
    auto res = solve_flow(s7, k);
    REQUIRE(res.status == SolveStatus::Infeasible);
    REQUIRE(res.nodes == nodes);
  }
  auto rep = min_width(s7, 6);
  REQUIRE(!rep.width.has_value());
  REQUIRE(!rep.budget_exceeded);
  REQUIRE(rep.per_k.size() == 5);
  for (auto [k, status] : rep.per_k) REQUIRE(status == SolveStatus::Infeasible);
}

TEST_CASE("first solutions and node counts are frozen on 9 points") {
  auto s9 = affine_sts9();
  auto res2 = solve_flow(s9, 2);
  REQUIRE(res2.status == SolveStatus::Found);
  REQUIRE(res2.nodes == 26);
  REQUIRE(res2.flow->values ==
          std::vector<int>{1, 1, -1, -1, -1, 1, -1, -1, -1, 1, 1, 1});
  auto res3 = solve_flow(s9, 3);
  REQUIRE(res3.status == SolveStatus::Found);
  REQUIRE(res3.nodes == 38);
  REQUIRE(res3.flow->values == res2.flow->values);  // +-1 values are tried first

  auto rep = min_width(s9, 4);
  REQUIRE(rep.width == 2);
  REQUIRE(rep.nodes == 26);
}

TEST_CASE("13-point system solves at width 2") {
  auto s13 = cyclic_sts(13);
  auto res = solve_flow(s13, 2);
  REQUIRE(res.status == SolveStatus::Found);
  REQUIRE(res.nodes == 311);
  REQUIRE(res.flow->values ==
          std::vector<int>{1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1, 1, -1,
                           -1, -1, -1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1});
  auto res3 = solve_flow(s13, 3);
  REQUIRE(res3.status == SolveStatus::Found);
  REQUIRE(res3.nodes == 10582);
  REQUIRE(verify_zero_sum(s13, *res3.flow).ok);
}

TEST_CASE("15-point system has minimum width 3") {
  auto s15 = cyclic_sts(15);
  auto res2 = solve_flow(s15, 2);
  REQUIRE(res2.status == SolveStatus::Infeasible);
  REQUIRE(res2.nodes == 138);
  auto res3 = solve_flow(s15, 3);
  REQUIRE(res3.status == SolveStatus::Found);
  REQUIRE(res3.nodes == 2540);
  REQUIRE(res3.flow->values ==
          std::vector<int>{1,  1, 1,  1,  -1, -1, -2, 1, 1, 1, -1, -1, -2, 1, -1, 1, -1, -2,
                           -2, -1, 2, -2, -2, 2,  1,  1, -2, 1, 2,  1,  -2, 1, 1,  1, 1});
  REQUIRE(flow_width(*res3.flow) == 3);
  auto res4 = solve_flow(s15, 4);
  REQUIRE(res4.status == SolveStatus::Found);
  REQUIRE(res4.nodes == 4723);
  auto rep = min_width(s15, 3);
  REQUIRE(rep.width == 3);
  REQUIRE(rep.nodes == 138 + 2540);
  REQUIRE(!rep.budget_exceeded);
}

TEST_CASE("quadruple system on 10 points solves at width 2") {
  auto s10 = builtin_sqs(10);
  auto res = solve_flow(s10.design, 2);
  REQUIRE(res.status == SolveStatus::Found);
  REQUIRE(res.nodes == 479);
  REQUIRE(res.flow->values ==
          std::vector<int>{1,  1,  1,  1,  1,  1,  -1, -1, -1, -1, -1, -1, -1, -1, -1,
                           1,  -1, 1,  -1, -1, -1, 1,  1,  1,  -1, -1, 1,  1,  1,  1});
  REQUIRE(verify_zero_sum(s10.design, *res.flow).ok);
}

TEST_CASE("budget cuts the search off deterministically") {
  auto s15 = cyclic_sts(15);
  auto res = solve_flow(s15, 3, 1000);
  REQUIRE(res.status == SolveStatus::BudgetExceeded);
  REQUIRE(res.nodes == 1000);
  REQUIRE(!res.flow.has_value());
  REQUIRE_THROWS_AS(solve_flow(s15, 1), PreconditionError);
}

TEST_CASE("scan over a small family") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sf-scan-test";
  fs::create_directories(dir);
  auto s7 = cyclic_sts(7);
  auto s13 = cyclic_sts(13);
  save_design(s7, (dir / "sts7.json").string());
  save_design(s13, (dir / "sts13.json").string());

  auto rows = conjecture_scan({(dir / "sts13.json").string(), (dir / "sts7.json").string()}, 3);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].width == 2);
  REQUIRE(rows[0].note.empty());
  REQUIRE(!rows[0].counterexample_candidate);
  REQUIRE(!rows[1].width.has_value());
  REQUIRE(!rows[1].counterexample_candidate);
  REQUIRE(rows[1].note.find("outside conjecture scope") != std::string::npos);

  // machine-readable and human-readable renderings
  std::string lines = scan_json_lines(rows);
  REQUIRE(std::count(lines.begin(), lines.end(), '\n') == 2);
  auto first = ordered_json::parse(lines.substr(0, lines.find('\n')));
  REQUIRE(first.at("min_width").get<int>() == 2);
  REQUIRE(first.at("v").get<int>() == 13);
  std::string table = scan_table(rows);
  REQUIRE(table.find("min-width") != std::string::npos);
  REQUIRE(std::count(table.begin(), table.end(), '\n') == 3);  // header + 2 rows

  // an undersized budget is reported as inconclusive, never as a disproof
  auto s15 = cyclic_sts(15);
  save_design(s15, (dir / "sts15.json").string());
  auto tight = conjecture_scan({(dir / "sts15.json").string()}, 2, 100);
  REQUIRE(tight.size() == 1);
  REQUIRE(!tight[0].width.has_value());
  REQUIRE(tight[0].budget_exceeded);
  REQUIRE(!tight[0].counterexample_candidate);
  REQUIRE(tight[0].note.find("inconclusive") != std::string::npos);

  REQUIRE(conjecture_scan({}, 3).empty());
  fs::remove_all(dir);
}

TEST_CASE("solver confirms construction widths") {
  // whatever width a construction emits, the solver finds a flow at that
  // width within budget on desk-scale inputs
  auto c13 = expand_orbits(find_base_blocks(13));
  auto f13 = assign_flow_cyclic(c13);
  auto res = solve_flow(c13.design, f13.width);
  REQUIRE(res.status == SolveStatus::Found);

  auto s8 = builtin_sqs(8);
  auto res8 = solve_flow(s8.design, flow_width(s8.flow));
  REQUIRE(res8.status == SolveStatus::Found);
  REQUIRE(flow_width(*res8.flow) <= 3);
}
