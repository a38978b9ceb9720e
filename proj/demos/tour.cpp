// A first tour: build a cyclic triple system on 15 points, give every block
// a nonzero weight so that each point's incident weights cancel, and check
// the result. Ends with the 7-point system, where no such weighting exists.
#include <iostream>

#include "steinerflow/cyclic.hpp"
#include "steinerflow/solver.hpp"

namespace sf = steinerflow;

int main() {
  std::cout << "-- cyclic triple system on 15 points --\n";
  sf::BaseBlocks base = sf::find_base_blocks(15);
  std::cout << "base blocks found by search:";
  for (const auto& blk : base.full)
    std::cout << " {" << blk[0] << "," << blk[1] << "," << blk[2] << "}";
  if (base.short_block) {
    const auto& s = *base.short_block;
    std::cout << " short {" << s[0] << "," << s[1] << "," << s[2] << "}";
  }
  std::cout << "\n";

  sf::CyclicSTS sys = sf::expand_orbits(base);
  auto valid = sf::validate_design(sys.design);
  std::cout << "expanded to " << sys.design.b() << " blocks; every pair covered once: "
            << (valid.valid ? "yes" : "NO") << "\n";

  auto census = sf::orbit_census(sys);
  std::cout << "orbit residues mod 3: " << census.type1 << " Type-1, " << census.type2
            << " Type-2, " << census.type3 << " Type-3 full orbits";
  if (census.short_type) std::cout << "; short orbit is Type " << *census.short_type;
  std::cout << "\n";

  auto flow = sf::assign_flow_cyclic(sys);
  std::cout << "flow scheme: " << flow.scheme << ", width " << flow.width << "\n";
  std::cout << "first ten block weights:";
  for (int j = 0; j < 10; ++j) std::cout << " " << flow.flow.values[j];
  std::cout << " ...\n";
  auto check = sf::verify_zero_sum(sys.design, flow.flow);
  std::cout << "every point's incident weights sum to zero: " << (check.ok ? "yes" : "NO")
            << "\n";

  std::cout << "\n-- the 7-point system has no such weighting --\n";
  sf::CyclicSTS seven = sf::expand_orbits(sf::find_base_blocks(7));
  auto nullity = sf::nullity_check(seven.design);
  std::cout << "incidence matrix rank " << nullity.rank << " of " << seven.design.b()
            << " columns: nullity " << nullity.nullity
            << ", so no nonzero weighting can cancel\n";
  auto attempt = sf::solve_flow(seven.design, 6);
  std::cout << "exhaustive search up to weight 5 agrees: "
            << (attempt.status == sf::SolveStatus::Infeasible ? "infeasible" : "?!") << " ("
            << attempt.nodes << " nodes)\n";
  return 0;
}
