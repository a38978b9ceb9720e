// Growing systems while carrying their flows along: the product of two
// triple systems, the 2v+7 doubling, and the two quadruple-system
// constructions (doubling and product).
#include <iostream>

#include "steinerflow/compose.hpp"
#include "steinerflow/cyclic.hpp"
#include "steinerflow/sqs.hpp"

namespace sf = steinerflow;

namespace {
void report(const char* name, const sf::Design& d, const sf::FlowAssignment& f) {
  bool valid = sf::validate_design(d).valid;
  bool zero = sf::verify_zero_sum(d, f).ok;
  std::cout << name << ": " << d.t << "-(" << d.v << "," << d.k << "," << d.lam << ") with "
            << d.b() << " blocks; valid " << (valid ? "yes" : "NO") << ", flow "
            << (zero ? "verifies" : "FAILS") << ", width " << sf::flow_width(f) << "\n";
}
}  // namespace

int main() {
  auto s13 = sf::expand_orbits(sf::find_base_blocks(13));
  auto f13 = sf::assign_flow_cyclic(s13);
  auto s7 = sf::expand_orbits(sf::find_base_blocks(7));

  std::cout << "inner 13-point system, width " << f13.width
            << "; outer 7-point system (flowless itself)\n\n";

  auto prod = sf::construct_product_sts(s13.design, f13.flow, s7.design);
  report("product 13 x 7", prod.design, prod.flow);

  auto dbl = sf::construct_double_plus7_with_flow(s13.design, f13.flow);
  report("doubling 13 -> 2*13+7", dbl.design, dbl.flow);

  auto q8 = sf::builtin_sqs(8);
  auto q16 = sf::construct_sqs_double(q8.design, q8.flow, q8.design, q8.flow);
  report("quadruple doubling 8 -> 16", q16.design, q16.flow);

  auto q64 = sf::construct_sqs_product(q8.design, q8.flow, q8.design, q8.flow);
  report("quadruple product 8 x 8", q64.design, q64.flow);

  std::cout << "\nthe inner flows ride along: copy 0 of the product keeps the"
            << " 13-point weights verbatim,\nand the new cross blocks only need"
            << " weights of absolute value at most 2.\n";
  return 0;
}
