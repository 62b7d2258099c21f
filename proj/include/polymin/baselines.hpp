// SPDX-License-Identifier: Apache-2.0

/*!
  \file baselines.hpp
  \brief Reference constructions: per-mode SOP and polymorphic multiplexing
*/

#pragma once

#include <cstdint>
#include <vector>

#include "cube.hpp"
#include "poly_function.hpp"

namespace polymin
{

/*! \brief Greedy prime-implicant cover of f_m as a mode-uniform sum of products. */
inline poly_expr baseline_sop( poly_function const& f, mode m )
{
  if ( f.num_vars() > 10u )
  {
    throw arity_error( "SOP baseline supports at most 10 variables" );
  }
  auto const onset = f.mode_view( m );
  auto const primes = implicants_of( f.num_vars(), onset ).primes;

  std::vector<bool> uncovered = onset;
  auto count_new = [&]( cube const& c ) {
    uint32_t cnt = 0u;
    c.foreach_point( [&]( uint32_t k ) { cnt += uncovered[k] ? 1u : 0u; } );
    return cnt;
  };

  std::vector<cube> chosen;
  while ( true )
  {
    std::size_t best = primes.size();
    uint32_t best_gain = 0u;
    for ( auto i = 0u; i < primes.size(); ++i )
    {
      auto const gain = count_new( primes[i] );
      if ( gain > best_gain )
      {
        best_gain = gain;
        best = i;
      }
    }
    if ( best_gain == 0u )
      break;
    chosen.push_back( primes[best] );
    primes[best].foreach_point( [&]( uint32_t k ) { uncovered[k] = false; } );
  }

  if ( chosen.empty() )
    return poly_expr::constant( {} );
  auto e = product_term( chosen.front() );
  for ( auto i = 1u; i < chosen.size(); ++i )
    e = poly_expr::gate( or_gate, e, product_term( chosen[i] ) );
  return e;
}

/*! \brief x1 XNOR/XOR x1, the constant 1/0 built from gates. */
inline poly_expr mode_one_selector() { return poly_expr::gate( { bool_op::XNOR, bool_op::XOR }, poly_expr::literal( 1 ), poly_expr::literal( 1 ) ); }

/*! \brief x1 XOR/XNOR x1, the constant 0/1 built from gates. */
inline poly_expr mode_two_selector() { return poly_expr::gate( { bool_op::XOR, bool_op::XNOR }, poly_expr::literal( 1 ), poly_expr::literal( 1 ) ); }

/*! \brief (SOP_1 * k) + (SOP_2 * k') with k = 1/0 and k' = 0/1 realized by polymorphic gates. */
inline poly_expr baseline_mux( poly_function const& f )
{
  auto const sop1 = baseline_sop( f, mode::first );
  auto const sop2 = baseline_sop( f, mode::second );
  auto const is_zero = []( poly_expr const& e ) { return e.is_constant() && e.value().is_zero(); };

  std::vector<poly_expr> parts;
  if ( !is_zero( sop1 ) )
    parts.push_back( poly_expr::gate( and_gate, sop1, mode_one_selector() ) );
  if ( !is_zero( sop2 ) )
    parts.push_back( poly_expr::gate( and_gate, sop2, mode_two_selector() ) );

  if ( parts.empty() )
    return poly_expr::constant( {} );
  return parts.size() == 1u ? parts.front() : poly_expr::gate( or_gate, parts[0], parts[1] );
}

} // namespace polymin
