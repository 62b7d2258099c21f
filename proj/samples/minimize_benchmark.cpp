// SPDX-License-Identifier: Apache-2.0

// Minimizes the 4-parity / 4-majority pair and prints its map, the
// cover, and the multiplexer baseline for comparison.

#include <iostream>

#include <polymin/polymin.hpp>

int main()
{
  using namespace polymin;

  auto const bench = gen_benchmark( "parity4/majority4" );
  std::cout << render_kmap( bench.function ) << "\n";

  auto const result = minimize( bench.function );
  for ( auto const& t : result.terms )
    std::cout << tag_rule( t ).to_string() << "  " << print_expr( t.expr ) << "\n";
  std::cout << "\ncover nodes: " << result.cost.node_count << "\n";

  auto const mux = baseline_mux( bench.function );
  std::cout << "mux nodes:   " << cost_of( mux ).node_count << "\n";
  return equivalent( result.expr, bench.function ) && equivalent( mux, bench.function ) ? 0 : 1;
}
