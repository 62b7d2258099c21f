// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <polymin/polymin.hpp>

#include "oracles.hpp"

using namespace polymin;

namespace
{

using stopwatch = std::chrono::steady_clock;

struct outcome
{
  bool ok;
  std::string detail;
};

int failures = 0;

void check( std::string const& name, double limit_seconds, std::function<outcome()> const& body )
{
  auto const start = stopwatch::now();
  outcome r{ false, "" };
  try
  {
    r = body();
  }
  catch ( std::exception const& e )
  {
    r = { false, std::string( "exception: " ) + e.what() };
  }
  auto const seconds = std::chrono::duration<double>( stopwatch::now() - start ).count();
  if ( limit_seconds > 0.0 && seconds > limit_seconds )
  {
    r.ok = false;
    r.detail += " (over the " + std::to_string( limit_seconds ) + " s limit)";
  }
  if ( !r.ok )
    ++failures;
  std::printf( "%s  %-34s %9.3f s  %s\n", r.ok ? "PASS" : "FAIL", name.c_str(), seconds, r.detail.c_str() );
  std::fflush( stdout );
}

outcome parity_majority_map()
{
  /* rows x1x2, columns x3x4, both in Gray order */
  char const* const expected[4][4] = { { "0/0", "1/0", "0/0", "1/0" },
                                       { "1/0", "0/0", "1/1", "0/0" },
                                       { "0/0", "1/1", "0/1", "1/1" },
                                       { "1/0", "0/0", "1/1", "0/0" } };
  char const* const gray[4] = { "00", "01", "11", "10" };
  auto const start = stopwatch::now();
  auto const f = gen_benchmark( "parity4/majority4" ).function;
  auto const micros = std::chrono::duration_cast<std::chrono::microseconds>( stopwatch::now() - start ).count();
  for ( auto r = 0; r < 4; ++r )
  {
    for ( auto c = 0; c < 4; ++c )
    {
      auto const bits = std::string( gray[r] ) + gray[c];
      if ( f[assignment::from_bits( bits ).index()].to_string() != expected[r][c] )
        return { false, "cell " + bits + " differs" };
    }
  }
  return { micros < 1000, "16/16 cells, generated in " + std::to_string( micros ) + " us" };
}

outcome benchmark_cover( std::string const& spec, bool need_triple )
{
  auto const f = gen_benchmark( spec ).function;
  auto const c = minimize( f );
  bool const ok = equivalent( c.expr, f );
  bool pair = false, triple = false;
  for ( auto const& t : c.terms )
  {
    pair = pair || t.shape == term_shape::pair;
    triple = triple || t.is_triple();
  }
  std::string detail = std::to_string( c.terms.size() ) + " terms, nodes=" + std::to_string( c.cost.node_count ) +
                       ( pair ? ", pair" : "" ) + ( triple ? ", triple" : "" );
  return { ok && ( !need_triple || ( pair && triple ) ), detail };
}

outcome r1_equivalence()
{
  constexpr poly_gate and_xor{ bool_op::AND, bool_op::XOR };
  auto const cubes = oracle::all_cubes( 2 );
  uint32_t checked = 0u, discrepancies = 0u;
  for ( auto code = 0u; code < 256u; ++code )
  {
    auto const f = oracle::function_from_code( 2, code );
    for ( auto const& a : cubes )
    {
      for ( auto const& b : cubes )
      {
        if ( a.contains( b ) || b.contains( a ) )
          continue;
        auto const cands = match_pair( f, a, b );
        bool const emitted = std::any_of( cands.begin(), cands.end(), [&]( auto const& t ) { return t.gates[0] == and_xor; } );
        ++checked;
        if ( emitted != oracle::r1_condition( f, a, b ) )
          ++discrepancies;
      }
    }
  }
  return { discrepancies == 0u, std::to_string( checked ) + " pairs, " + std::to_string( discrepancies ) + " discrepancies" };
}

/* pointwise check of a candidate, independent of table_of */
bool realizes( poly_function const& f, term_candidate const& t )
{
  auto const p1 = oracle::mode_project( t.expr, mode::first );
  auto const p2 = oracle::mode_project( t.expr, mode::second );
  for ( auto k = 0u; k < f.num_cells(); ++k )
  {
    bool in = false;
    for ( auto const& c : t.cubes )
      in = in || oracle::in_cube( c, k );
    auto const bits = oracle::bits_of( f.num_vars(), k );
    bool const v1 = oracle::eval_single( *p1, bits ), v2 = oracle::eval_single( *p2, bits );
    if ( v1 != ( in && f[k].mode1 ) || v2 != ( in && f[k].mode2 ) )
      return false;
  }
  return true;
}

outcome matcher_soundness()
{
  std::mt19937 rng( 2024 );
  uint32_t emitted = 0u, violations = 0u;
  for ( auto trial = 0; trial < 10000; ++trial )
  {
    auto const n = 3u + static_cast<uint32_t>( trial % 2 );
    /* half the functions come from random trees so that matches are frequent */
    auto const f = trial % 4 < 2 ? oracle::random_function( rng, n ) : table_of( oracle::random_expr( rng, n, 2 ), n );
    auto const arity = 1u + rng() % 3u;
    std::vector<cube> cs;
    for ( auto i = 0u; i < arity; ++i )
      cs.push_back( oracle::random_cube( rng, n ) );
    std::vector<term_candidate> cands;
    if ( arity == 1u )
    {
      if ( auto t = match_single( f, cs[0] ) )
        cands.push_back( *t );
    }
    else if ( arity == 2u )
      cands = match_pair( f, cs[0], cs[1] );
    else
      cands = match_triple( f, cs[0], cs[1], cs[2] );
    for ( auto const& t : cands )
    {
      ++emitted;
      if ( !realizes( f, t ) )
        ++violations;
    }
  }
  return { violations == 0u, "10000 trials, " + std::to_string( emitted ) + " candidates, " + std::to_string( violations ) + " violations" };
}

outcome exact_floor()
{
  uint32_t equal = 0u;
  for ( auto code = 0u; code < 256u; ++code )
  {
    auto const f = oracle::function_from_code( 2, code );
    auto const e = exact_search( f, 15 );
    if ( !e || !equivalent( *e, f ) )
      return { false, "no exact result for code " + std::to_string( code ) };
    auto const exact_cost = cost_of( *e ).node_count;
    auto const greedy_cost = minimize( f ).cost.node_count;
    if ( greedy_cost < exact_cost )
      return { false, "minimize beats exact on code " + std::to_string( code ) };
    equal += greedy_cost == exact_cost ? 1u : 0u;
  }
  auto const witness = table_of( parse_expr( "x1 AND/XOR x2" ), 2 );
  bool const witnessed = cost_of( *exact_search( witness, 15 ) ).node_count == minimize( witness ).cost.node_count;
  return { witnessed, "256 functions, " + std::to_string( equal ) + " equal, x1 AND/XOR x2 witnessed" };
}

outcome baselines()
{
  std::string table = "\n      benchmark                          minimize  mux  sop1  sop2 (nodes)";
  for ( auto const* spec : { "parity4/majority4", "multiplier2x3:2/sortingnet5:2" } )
  {
    auto const f = gen_benchmark( spec ).function;
    for ( auto m : both_modes )
    {
      auto const t = table_of( baseline_sop( f, m ), f.num_vars() );
      for ( auto k = 0u; k < f.num_cells(); ++k )
        if ( t[k].mode1 != f[k][m] || t[k].mode2 != f[k][m] )
          return { false, std::string( "SOP baseline wrong on " ) + spec };
    }
    auto const mux = baseline_mux( f );
    if ( !equivalent( mux, f ) )
      return { false, std::string( "mux baseline wrong on " ) + spec };
    char line[160];
    std::snprintf( line, sizeof( line ), "\n      %-34s %8u %4u %5u %5u", spec, minimize( f ).cost.node_count, cost_of( mux ).node_count,
                   cost_of( baseline_sop( f, mode::first ) ).node_count, cost_of( baseline_sop( f, mode::second ) ).node_count );
    table += line;
  }
  return { true, "all baselines verify" + table };
}

outcome random_end_to_end()
{
  std::mt19937 rng( 77 );
  uint32_t verified = 0u, loud = 0u, silent = 0u;
  for ( auto trial = 0; trial < 200; ++trial )
  {
    auto const n = 2u + static_cast<uint32_t>( trial % 3 );
    auto const f = oracle::random_function( rng, n );
    try
    {
      auto const c = minimize( f );
      if ( equivalent( c.expr, f ) )
        ++verified;
      else
        ++silent;
    }
    catch ( uncovered_demand_error const& )
    {
      ++loud;
    }
  }
  return { verified == 200u && silent == 0u,
           std::to_string( verified ) + " verified, " + std::to_string( loud ) + " uncovered, " + std::to_string( silent ) + " silent" };
}

} // namespace

int main()
{
  check( "parity-majority-map", 0.0, parity_majority_map );
  check( "benchmark-parity4-majority4", 5.0, [] { return benchmark_cover( "parity4/majority4", true ); } );
  check( "benchmark-multiplier-sortingnet", 5.0, [] { return benchmark_cover( "multiplier2x3:2/sortingnet5:2", false ); } );
  check( "r1-rule-equivalence", 10.0, r1_equivalence );
  check( "matcher-soundness", 0.0, matcher_soundness );
  check( "exact-oracle-floor", 60.0, exact_floor );
  check( "baselines", 0.0, baselines );
  check( "random-end-to-end", 120.0, random_end_to_end );
  std::printf( "%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures );
  return failures == 0 ? 0 : 1;
}
