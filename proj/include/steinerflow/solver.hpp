// Independent exact oracle: nullspace dimension, zero-sum flow search by
// deterministic backtracking, minimum-width iteration, and batch scanning.
#pragma once

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "steinerflow/design.hpp"
#include "steinerflow/flow.hpp"
#include "steinerflow/io.hpp"
#include "steinerflow/rank.hpp"

namespace steinerflow {

struct NullityReport {
  long long rank = 0;
  long long nullity = 0;  // blocks minus rank; 0 rules out every zero-sum flow
};

// Exact rank of the point-block incidence matrix over the rationals. A
// zero-sum flow is a nonzero nullspace vector, so nullity 0 is a proof that
// none exists for any k.
inline NullityReport nullity_check(const Design& d) {
  NullityReport rep;
  rep.rank = matrix_rank(incidence_matrix(d));
  rep.nullity = static_cast<long long>(d.blocks.size()) - rep.rank;
  return rep;
}

enum class SolveStatus { Found, Infeasible, BudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<FlowAssignment> flow;  // set iff status == Found
  long long nodes = 0;                 // value placements attempted
};

namespace detail {

// Static block order: repeatedly take the point with the fewest blocks not
// yet ordered (ties to the smallest point) and append that point's blocks in
// canonical index order. Grouping a point's blocks together closes its sum
// constraint as early as possible.
inline std::vector<std::size_t> solver_block_order(const Design& d) {
  const std::size_t n = d.blocks.size();
  std::vector<char> ordered(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (order.size() < n) {
    std::vector<long long> cnt(d.v, 0);
    for (std::size_t j = 0; j < n; ++j)
      if (!ordered[j])
        for (int x : d.blocks[j]) ++cnt[x];
    int best = -1;
    for (int x = 0; x < d.v; ++x)
      if (cnt[x] > 0 && (best < 0 || cnt[x] < cnt[best])) best = x;
    for (std::size_t j = 0; j < n; ++j)
      if (!ordered[j] &&
          std::find(d.blocks[j].begin(), d.blocks[j].end(), best) != d.blocks[j].end()) {
        order.push_back(j);
        ordered[j] = 1;
      }
  }
  return order;
}

class FlowSearch {
 public:
  FlowSearch(const Design& d, int k, long long budget)
      : d_(d), k_(k), budget_(budget), order_(solver_block_order(d)) {
    for (int m = 1; m < k; ++m) {
      values_.push_back(m);
      values_.push_back(-m);
    }
    remaining_.assign(d.v, 0);
    for (const Block& b : d.blocks)
      for (int x : b) ++remaining_[x];
    sums_.assign(d.v, 0);
    assign_.assign(d.blocks.size(), 0);
  }

  SolveResult run() {
    SolveResult res;
    bool found;
    try {
      found = dfs(0);
    } catch (const BudgetError&) {
      res.status = SolveStatus::BudgetExceeded;
      res.nodes = nodes_ - 1;  // the placement that tripped was not explored
      return res;
    }
    res.nodes = nodes_;
    if (found) {
      res.status = SolveStatus::Found;
      res.flow = make_flow(d_, assign_);
    }
    return res;
  }

 private:
  bool dfs(std::size_t pos) {
    if (pos == order_.size()) return true;
    const Block& blk = d_.blocks[order_[pos]];
    for (int x : blk) --remaining_[x];
    for (int val : values_) {
      if (++nodes_ > budget_) throw BudgetError("flow search exceeded the node budget", nodes_);
      bool ok = true;
      for (int x : blk)
        if (std::abs(sums_[x] + val) > static_cast<long long>(k_ - 1) * remaining_[x]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int x : blk) sums_[x] += val;
      assign_[order_[pos]] = val;
      if (dfs(pos + 1)) return true;
      assign_[order_[pos]] = 0;
      for (int x : blk) sums_[x] -= val;
    }
    for (int x : blk) ++remaining_[x];
    return false;
  }

  const Design& d_;
  int k_;
  long long budget_;
  long long nodes_ = 0;
  std::vector<std::size_t> order_;
  std::vector<int> values_;
  std::vector<long long> remaining_;
  std::vector<long long> sums_;
  std::vector<int> assign_;
};

}  // namespace detail

// Deterministic exhaustive search for a zero-sum flow with values in
// {+-1, ..., +-(k-1)}. Blocks are taken in the fixed order above; values are
// tried +1, -1, +2, -2, ...; a branch is cut when some point's partial sum
// can no longer return to zero. The first solution in this order is returned
// and is machine-independent. The budget counts value placements.
inline SolveResult solve_flow(const Design& d, int k, long long budget = 10000000) {
  if (k < 2) throw PreconditionError("flow search needs k >= 2 (values are nonzero)");
  detail::FlowSearch search(d, k, budget);
  SolveResult res = search.run();
  if (res.status == SolveStatus::Found &&
      (!verify_zero_sum(d, *res.flow).ok || flow_width(*res.flow) > k))
    throw std::logic_error("flow search returned a non-verifying assignment");
  return res;
}

struct MinWidthReport {
  std::optional<int> width;            // least k with a flow found, if any
  std::optional<FlowAssignment> flow;  // witness at that width
  bool budget_exceeded = false;        // some k was cut short before a find
  long long nodes = 0;                 // total across all attempted k
  std::vector<std::pair<int, SolveStatus>> per_k;
};

// Iterates k = 2..k_max. Feasibility is monotone in k (a width-k flow is a
// width-(k+1) flow), so the first success is the minimum width among the
// proven range. A BudgetExceeded at some k leaves that k unresolved: the
// report never claims "no flow" in that case.
inline MinWidthReport min_width(const Design& d, int k_max, long long budget_per_k = 10000000) {
  if (k_max < 2) throw PreconditionError("minimum-width search needs k_max >= 2");
  MinWidthReport rep;
  for (int k = 2; k <= k_max; ++k) {
    SolveResult res = solve_flow(d, k, budget_per_k);
    rep.nodes += res.nodes;
    rep.per_k.emplace_back(k, res.status);
    if (res.status == SolveStatus::Found) {
      rep.width = k;
      rep.flow = std::move(res.flow);
      return rep;
    }
    if (res.status == SolveStatus::BudgetExceeded) rep.budget_exceeded = true;
  }
  return rep;
}

struct ScanRow {
  std::string file;
  int t = 0, v = 0, k = 0;
  long long blocks = 0;
  std::optional<int> width;
  bool budget_exceeded = false;
  bool counterexample_candidate = false;
  long long nodes = 0;
  double millis = 0.0;
  std::string note;
};

// Runs min_width over a family of design files. A triple system on more
// than 7 points proven flowless up to k_target is marked loudly as a
// counterexample candidate; a budget exhaustion is reported as inconclusive,
// never as a disproof.
inline std::vector<ScanRow> conjecture_scan(const std::vector<std::string>& files, int k_target,
                                            long long budget_per_k = 10000000) {
  std::vector<ScanRow> rows;
  for (const std::string& file : files) {
    ScanRow row;
    row.file = file;
    Design d = load_design(file).design;
    row.t = d.t;
    row.v = d.v;
    row.k = d.k;
    row.blocks = static_cast<long long>(d.blocks.size());
    auto start = std::chrono::steady_clock::now();
    MinWidthReport rep = min_width(d, k_target, budget_per_k);
    row.millis = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    row.nodes = rep.nodes;
    row.width = rep.width;
    row.budget_exceeded = rep.budget_exceeded;
    if (!rep.width) {
      if (rep.budget_exceeded) {
        row.note = "inconclusive: budget exceeded before k=" + std::to_string(k_target);
      } else if (d.t == 2 && d.k == 3 && d.v > 7 && k_target >= 3) {
        row.counterexample_candidate = true;
        row.note = "COUNTEREXAMPLE CANDIDATE: no zero-sum flow up to k=" +
                   std::to_string(k_target);
      } else {
        row.note = "infeasible up to k=" + std::to_string(k_target) +
                   (d.t == 2 && d.k == 3 && d.v <= 7 ? " (outside conjecture scope: v <= 7)"
                                                     : "");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// One JSON object per line, machine-readable.
inline std::string scan_json_lines(const std::vector<ScanRow>& rows) {
  std::string out;
  for (const ScanRow& r : rows) {
    ordered_json j;
    j["file"] = r.file;
    j["t"] = r.t;
    j["v"] = r.v;
    j["k"] = r.k;
    j["blocks"] = r.blocks;
    if (r.width)
      j["min_width"] = *r.width;
    else
      j["min_width"] = nullptr;
    j["budget_exceeded"] = r.budget_exceeded;
    j["counterexample_candidate"] = r.counterexample_candidate;
    j["nodes"] = r.nodes;
    j["millis"] = r.millis;
    j["note"] = r.note;
    out += j.dump() + "\n";
  }
  return out;
}

// Aligned text table for terminal reading.
inline std::string scan_table(const std::vector<ScanRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"file", "design", "blocks", "min-width", "nodes", "ms", "note"});
  for (const ScanRow& r : rows) {
    std::ostringstream design, ms;
    design << r.t << "-(" << r.v << "," << r.k << ",1)";
    ms.setf(std::ios::fixed);
    ms.precision(1);
    ms << r.millis;
    cells.push_back({r.file, design.str(), std::to_string(r.blocks),
                     r.width ? std::to_string(*r.width) : "-", std::to_string(r.nodes), ms.str(),
                     r.note});
  }
  std::vector<std::size_t> w(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], row[c].size());
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size()) out += std::string(w[c] - row[c].size() + 2, ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

}  // namespace steinerflow
