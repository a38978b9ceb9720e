// steinerflow: construct Steiner systems with zero-sum flows, verify them,
// and search for flows exactly.
//
// Exit codes: 0 success, 1 verification failure, 2 precondition violation
// (including unreadable or malformed input files), 3 search budget exhausted.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "steinerflow/compose.hpp"
#include "steinerflow/cyclic.hpp"
#include "steinerflow/io.hpp"
#include "steinerflow/solver.hpp"
#include "steinerflow/sqs.hpp"

namespace sf = steinerflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitBudget = 3;

struct OutputPaths {
  std::string design;
  std::string flow;
};

OutputPaths paths_for(const std::string& prefix) {
  return {prefix + ".design.json", prefix + ".flow.json"};
}

// Writes the artifacts, then (unless skipped) reloads them from disk and
// re-runs full validation and flow verification, so whatever reaches the
// filesystem has re-passed the checks.
int emit(const sf::Design& design, const sf::FlowAssignment* flow, const std::string& prefix,
         bool selfcheck) {
  OutputPaths out = paths_for(prefix);
  sf::save_design(design, out.design);
  std::cout << "wrote " << out.design << " (" << design.t << "-(" << design.v << ","
            << design.k << "," << design.lam << "), " << design.b() << " blocks)\n";
  if (flow) {
    sf::save_flow(*flow, out.flow);
    std::cout << "wrote " << out.flow << " (width " << sf::flow_width(*flow) << ")\n";
  }
  if (!selfcheck) return kExitOk;
  auto loaded = sf::load_design(out.design);
  auto rep = sf::validate_design(loaded.design);
  if (!rep.valid) {
    std::cerr << "self-check failed: written design does not validate: " << rep.message << "\n";
    return kExitVerifyFailed;
  }
  if (flow) {
    auto f = sf::load_flow(out.flow, loaded);
    auto frep = sf::verify_zero_sum(loaded.design, f);
    if (!frep.ok) {
      std::cerr << "self-check failed: written flow does not verify: " << frep.message << "\n";
      return kExitVerifyFailed;
    }
  }
  std::cout << "self-check passed\n";
  return kExitOk;
}

sf::Design load_design_file(const std::string& path) { return sf::load_design(path).design; }

std::pair<sf::Design, sf::FlowAssignment> load_pair(const std::string& design_path,
                                                    const std::string& flow_path) {
  auto loaded = sf::load_design(design_path);
  auto flow = sf::load_flow(flow_path, loaded);
  return {std::move(loaded.design), std::move(flow)};
}

sf::BaseBlocks base_blocks_from_file(const std::string& path, int v) {
  sf::ordered_json j = sf::detail::read_json_file(path);
  sf::BaseBlocks base;
  base.v = j.contains("v") ? j.at("v").get<int>() : v;
  if (base.v != v)
    throw sf::PreconditionError("base-block file is for " + std::to_string(base.v) +
                                " points, but --v is " + std::to_string(v));
  base.full = j.at("full").get<std::vector<sf::Block>>();
  if (j.contains("short") && !j.at("short").is_null())
    base.short_block = j.at("short").get<sf::Block>();
  sf::check_difference_family(base);
  return base;
}

int run_verify(const std::string& design_path, const std::string& flow_path, bool as_json) {
  auto loaded = sf::load_design(design_path);
  auto rep = sf::validate_design(loaded.design);
  sf::ordered_json j;
  j["design"]["valid"] = rep.valid;
  j["design"]["t"] = loaded.design.t;
  j["design"]["v"] = loaded.design.v;
  j["design"]["k"] = loaded.design.k;
  j["design"]["lambda"] = loaded.design.lam;
  j["design"]["blocks"] = loaded.design.b();
  j["design"]["hash"] = sf::design_hash(loaded.design);
  if (!rep.valid) {
    j["design"]["message"] = rep.message;
    j["design"]["violating_subset"] = rep.violating_subset;
    j["design"]["expected"] = rep.expected;
    j["design"]["observed"] = rep.observed;
  }
  bool ok = rep.valid;
  std::string verdict;
  if (rep.valid)
    verdict = "valid " + std::to_string(loaded.design.t) + "-(" +
              std::to_string(loaded.design.v) + "," + std::to_string(loaded.design.k) + "," +
              std::to_string(loaded.design.lam) + ") design";
  else
    verdict = "INVALID design: " + rep.message;

  if (!flow_path.empty()) {
    try {
      auto flow = sf::load_flow(flow_path, loaded);
      auto frep = sf::verify_zero_sum(loaded.design, flow);
      j["flow"]["ok"] = frep.ok;
      j["flow"]["width"] = sf::flow_width(flow);
      if (!frep.ok) {
        j["flow"]["message"] = frep.message;
        sf::ordered_json pts = sf::ordered_json::array();
        for (auto [p, w] : frep.nonzero_points) pts.push_back({{"point", p}, {"weight", w}});
        j["flow"]["nonzero_points"] = pts;
        verdict += "; flow FAILS: " + frep.message;
        ok = false;
      } else {
        verdict +=
            "; zero-sum flow verifies; width " + std::to_string(sf::flow_width(flow));
      }
    } catch (const sf::PreconditionError& e) {
      j["flow"]["ok"] = false;
      j["flow"]["message"] = e.what();
      verdict += std::string("; flow FAILS: ") + e.what();
      ok = false;
    }
  }
  if (as_json)
    std::cout << j.dump(1) << "\n";
  else
    std::cout << verdict << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int run_solve(const std::string& design_path, int max_k, long long budget, bool as_json) {
  sf::Design d = load_design_file(design_path);
  auto nullity = sf::nullity_check(d);
  sf::ordered_json j;
  j["rank"] = nullity.rank;
  j["nullity"] = nullity.nullity;
  if (nullity.nullity == 0) {
    j["min_width"] = nullptr;
    j["reason"] = "incidence matrix has full column rank: no zero-sum flow for any k";
    if (as_json)
      std::cout << j.dump(1) << "\n";
    else
      std::cout << "infeasible for all k (nullity 0)\n";
    return kExitOk;
  }
  auto rep = sf::min_width(d, max_k, budget);
  j["nodes"] = rep.nodes;
  sf::ordered_json per_k = sf::ordered_json::array();
  for (auto [k, status] : rep.per_k)
    per_k.push_back({{"k", k},
                     {"status", status == sf::SolveStatus::Found        ? "found"
                                : status == sf::SolveStatus::Infeasible ? "infeasible"
                                                                        : "budget-exceeded"}});
  j["per_k"] = per_k;
  if (rep.width) {
    j["min_width"] = *rep.width;
    if (as_json)
      std::cout << j.dump(1) << "\n";
    else
      std::cout << "min width " << *rep.width << " (" << rep.nodes << " nodes)\n";
    return kExitOk;
  }
  j["min_width"] = nullptr;
  if (rep.budget_exceeded) {
    if (as_json)
      std::cout << j.dump(1) << "\n";
    else
      std::cout << "inconclusive: budget exhausted before k=" << max_k << " ("
                << rep.nodes << " nodes)\n";
    return kExitBudget;
  }
  if (as_json)
    std::cout << j.dump(1) << "\n";
  else
    std::cout << "infeasible for all k <= " << max_k << " (" << rep.nodes << " nodes)\n";
  return kExitOk;
}

int run_scan(const std::string& manifest_path, int k_target, long long budget, bool as_json) {
  auto files = sf::load_manifest(manifest_path);
  std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  std::vector<std::string> resolved;
  for (const std::string& f : files) {
    std::filesystem::path p(f);
    resolved.push_back(p.is_absolute() ? p.string() : (base / p).string());
  }
  auto rows = sf::conjecture_scan(resolved, k_target, budget);
  if (as_json)
    std::cout << sf::scan_json_lines(rows);
  else
    std::cout << sf::scan_table(rows);
  for (const auto& row : rows)
    if (row.counterexample_candidate)
      std::cout << "!! " << row.file << " is a counterexample candidate\n";
  for (const auto& row : rows)
    if (row.budget_exceeded && !row.width) return kExitBudget;
  return kExitOk;
}

int run_classify(const std::string& design_path) {
  auto loaded = sf::load_design(design_path);
  const sf::Design& d = loaded.design;
  if (!d.cyclic)
    throw sf::PreconditionError(
        "classification needs cyclic orbit metadata (a design built from base blocks)");
  if (d.v % 6 != 3) {
    std::cout << "classification requires v = 3 (mod 6); v = " << d.v
              << " has no short orbit and no residue classes mod 3 to count\n";
    return kExitOk;
  }
  sf::BaseBlocks base;
  base.v = d.cyclic->v;
  base.full = d.cyclic->base_blocks;
  if (d.cyclic->has_short) base.short_block = sf::Block{0, d.v / 3, 2 * d.v / 3};
  int counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < base.full.size(); ++i) {
    int type = sf::classify_orbit(base.full[i], d.v);
    ++counts[type];
    std::cout << "full orbit " << i << ": base {" << base.full[i][0] << "," << base.full[i][1]
              << "," << base.full[i][2] << "} Type " << type << "\n";
  }
  std::string full_census;
  for (int t = 1; t <= 3; ++t)
    if (counts[t]) {
      if (!full_census.empty()) full_census += " ";
      full_census += "Type" + std::to_string(t) + "x" + std::to_string(counts[t]);
    }
  std::cout << "full: " << (full_census.empty() ? "none" : full_census);
  if (d.cyclic->has_short)
    std::cout << "; short: Type" << sf::classify_orbit(*base.short_block, d.v) << "\n";
  else
    std::cout << "; short: none\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner triple/quadruple systems with zero-sum flows"};
  app.require_subcommand(1);
  bool no_selfcheck = false;
  app.add_flag("--no-selfcheck", no_selfcheck,
               "skip re-verifying written artifacts before exit");

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "build a design (and usually a flow)");
  construct->require_subcommand(1);
  std::string out_prefix;

  auto* cyc = construct->add_subcommand("cyclic", "cyclic triple system from base blocks");
  int cyc_v = 0;
  std::string cyc_base_file;
  cyc->add_option("--v", cyc_v, "number of points (1 or 3 mod 6)")->required();
  cyc->add_option("--base-blocks", cyc_base_file,
                  "JSON {v, full:[[a,b,c],...], short:[a,b,c]|null} instead of searching");
  cyc->add_option("--out", out_prefix, "output prefix")->required();

  auto* prod = construct->add_subcommand("product", "triple-system product with flow");
  std::string prod_inner, prod_inner_flow, prod_outer;
  prod->add_option("--inner", prod_inner, "inner design file")->required();
  prod->add_option("--inner-flow", prod_inner_flow, "inner flow file")->required();
  prod->add_option("--outer", prod_outer, "outer design file")->required();
  prod->add_option("--out", out_prefix, "output prefix")->required();

  auto* dbl = construct->add_subcommand("double7", "triple system on 2v+7 points");
  std::string dbl_inner, dbl_inner_flow;
  bool dbl_plain = false;
  long long dbl_budget = 200000000;
  dbl->add_option("--inner", dbl_inner, "inner design file")->required();
  dbl->add_option("--inner-flow", dbl_inner_flow, "inner flow file (flow-carrying form)");
  dbl->add_flag("--plain", dbl_plain, "design only, no flow transport");
  dbl->add_option("--budget", dbl_budget, "node budget for the partition search");
  dbl->add_option("--out", out_prefix, "output prefix")->required();

  auto* sqd = construct->add_subcommand("sqs-double", "quadruple system on 2v points");
  std::string sqd_left, sqd_left_flow, sqd_right, sqd_right_flow;
  sqd->add_option("--left", sqd_left, "left design file")->required();
  sqd->add_option("--left-flow", sqd_left_flow, "left flow file")->required();
  sqd->add_option("--right", sqd_right, "right design file")->required();
  sqd->add_option("--right-flow", sqd_right_flow, "right flow file")->required();
  sqd->add_option("--out", out_prefix, "output prefix")->required();

  auto* sqp = construct->add_subcommand("sqs-product", "quadruple system on u*v points");
  std::string sqp_inner, sqp_inner_flow, sqp_outer, sqp_outer_flow;
  sqp->add_option("--inner", sqp_inner, "inner design file")->required();
  sqp->add_option("--inner-flow", sqp_inner_flow, "inner flow file")->required();
  sqp->add_option("--outer", sqp_outer, "outer design file")->required();
  sqp->add_option("--outer-flow", sqp_outer_flow, "outer flow file")->required();
  sqp->add_option("--out", out_prefix, "output prefix")->required();

  auto* sqb = construct->add_subcommand("sqs-builtin", "built-in 8- or 10-point system");
  int sqb_n = 0;
  sqb->add_option("--n", sqb_n, "8 or 10")->required();
  sqb->add_option("--out", out_prefix, "output prefix")->required();

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "validate a design and optionally a flow");
  std::string ver_design, ver_flow;
  bool ver_json = false;
  verify->add_option("--design", ver_design, "design file")->required();
  verify->add_option("--flow", ver_flow, "flow file");
  verify->add_flag("--json", ver_json, "emit a JSON report");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "exact minimum-width flow search");
  std::string sol_design;
  int sol_max_k = 6;
  long long sol_budget = 10000000;
  bool sol_json = false;
  solve->add_option("--design", sol_design, "design file")->required();
  solve->add_option("--max-k", sol_max_k, "largest width to try (default 6)");
  solve->add_option("--budget", sol_budget, "node budget per width (default 1e7)");
  solve->add_flag("--json", sol_json, "emit a JSON report");

  // ---- scan ----
  auto* scan = app.add_subcommand("scan", "batch minimum-width scan over a manifest");
  std::string scan_manifest;
  int scan_k = 3;
  long long scan_budget = 10000000;
  bool scan_json = false;
  scan->add_option("--manifest", scan_manifest, "manifest-v1 file listing design files")
      ->required();
  scan->add_option("--k", scan_k, "width target (default 3)");
  scan->add_option("--budget", scan_budget, "node budget per width (default 1e7)");
  scan->add_flag("--json", scan_json, "emit JSON lines");

  // ---- classify ----
  auto* classify = app.add_subcommand("classify", "orbit residue census of a cyclic design");
  std::string cls_design;
  classify->add_option("--design", cls_design, "design file with cyclic metadata")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cyc->parsed()) {
      sf::BaseBlocks base = cyc_base_file.empty() ? sf::find_base_blocks(cyc_v)
                                                  : base_blocks_from_file(cyc_base_file, cyc_v);
      sf::CyclicSTS sys = sf::expand_orbits(base);
      try {
        sf::CyclicFlowResult flow = sf::assign_flow_cyclic(sys);
        std::cout << "scheme: " << flow.scheme << "\n";
        return emit(sys.design, &flow.flow, out_prefix, !no_selfcheck);
      } catch (const sf::PreconditionError& e) {
        std::cout << "note: " << e.what() << "; writing the design without a flow\n";
        return emit(sys.design, nullptr, out_prefix, !no_selfcheck);
      }
    }
    if (prod->parsed()) {
      auto [inner, inner_flow] = load_pair(prod_inner, prod_inner_flow);
      sf::Design outer = load_design_file(prod_outer);
      auto result = sf::construct_product_sts(inner, inner_flow, outer);
      return emit(result.design, &result.flow, out_prefix, !no_selfcheck);
    }
    if (dbl->parsed()) {
      sf::Design inner = load_design_file(dbl_inner);
      if (dbl_plain) {
        sf::Design result = sf::construct_plain_2v7(inner, dbl_budget);
        std::cout << "note: the plain form carries no flow\n";
        return emit(result, nullptr, out_prefix, !no_selfcheck);
      }
      if (dbl_inner_flow.empty())
        throw sf::PreconditionError("the flow-carrying form needs --inner-flow (or use --plain)");
      auto [inner2, inner_flow] = load_pair(dbl_inner, dbl_inner_flow);
      auto result = sf::construct_double_plus7_with_flow(inner2, inner_flow, dbl_budget);
      return emit(result.design, &result.flow, out_prefix, !no_selfcheck);
    }
    if (sqd->parsed()) {
      auto [left, left_flow] = load_pair(sqd_left, sqd_left_flow);
      auto [right, right_flow] = load_pair(sqd_right, sqd_right_flow);
      auto result = sf::construct_sqs_double(left, left_flow, right, right_flow);
      return emit(result.design, &result.flow, out_prefix, !no_selfcheck);
    }
    if (sqp->parsed()) {
      auto [inner, inner_flow] = load_pair(sqp_inner, sqp_inner_flow);
      auto [outer, outer_flow] = load_pair(sqp_outer, sqp_outer_flow);
      auto result = sf::construct_sqs_product(inner, inner_flow, outer, outer_flow);
      return emit(result.design, &result.flow, out_prefix, !no_selfcheck);
    }
    if (sqb->parsed()) {
      auto result = sf::builtin_sqs(sqb_n);
      return emit(result.design, &result.flow, out_prefix, !no_selfcheck);
    }
    if (verify->parsed()) return run_verify(ver_design, ver_flow, ver_json);
    if (solve->parsed()) return run_solve(sol_design, sol_max_k, sol_budget, sol_json);
    if (scan->parsed()) return run_scan(scan_manifest, scan_k, scan_budget, scan_json);
    if (classify->parsed()) return run_classify(cls_design);
  } catch (const sf::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const sf::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}
