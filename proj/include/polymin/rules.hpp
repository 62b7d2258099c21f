// SPDX-License-Identifier: Apache-2.0

/*!
  \file rules.hpp
  \brief Simplification rules as a gate-semantic matcher over 1 to 3 cubes

  A term candidate combines the characteristic products P1..P3 of up to
  three cubes with zero-preserving polymorphic gates.  It is emitted only
  when it reproduces the target function, in both modes, on every point
  of the cubes' union.  Since AND, OR and XOR map (0,0) to 0, the term is
  0/0 outside that union and terms can be OR-summed into a cover.

  Inside the union a term only depends on which cubes contain a point
  (its membership pattern), so matching reduces to checking each gate
  combination against at most 2^k - 1 patterns.
*/

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cube.hpp"
#include "poly_function.hpp"

namespace polymin
{

enum class term_shape : uint8_t
{
  single,
  pair,
  triple_left, /* (P1 g P2) h P3 */
  triple_right /* P1 g (P2 h P3) */
};

inline std::string_view to_string( term_shape s )
{
  constexpr std::array<std::string_view, 4> names{ "single", "pair", "triple_left", "triple_right" };
  return names[static_cast<std::size_t>( s )];
}

struct term_candidate
{
  term_shape shape{ term_shape::single };
  std::vector<cube> cubes;
  std::vector<poly_gate> gates;
  poly_expr expr;
  cost_report cost;

  bool in_region( uint32_t index ) const
  {
    return std::any_of( cubes.begin(), cubes.end(), [&]( auto const& c ) { return c.contains( index ); } );
  }

  bool is_triple() const { return shape == term_shape::triple_left || shape == term_shape::triple_right; }
};

struct rule_tag
{
  std::string id;        /* "R1" or "EXT" */
  std::string signature; /* gate signature, e.g. "AND/XOR" or "AND/AND,XOR/OR" */

  std::string to_string() const { return id + "(" + signature + ")"; }
};

namespace detail
{

/* required value of the target per membership pattern, or a conflict */
struct pattern_table
{
  std::array<bool, 8> seen{};
  std::array<poly_value, 8> value{};
  bool conflict{ false };
};

inline pattern_table collect_patterns( poly_function const& f, std::vector<cube> const& cubes )
{
  pattern_table t;
  for ( auto j = 0u; j < cubes.size() && !t.conflict; ++j )
  {
    cubes[j].foreach_point( [&]( uint32_t k ) {
      if ( t.conflict )
        return;
      for ( auto i = 0u; i < j; ++i )
      {
        if ( cubes[i].contains( k ) )
          return; /* visited through an earlier cube */
      }
      uint32_t p = 0u;
      for ( auto i = 0u; i < cubes.size(); ++i )
      {
        if ( cubes[i].contains( k ) )
          p |= 1u << i;
      }
      if ( !t.seen[p] )
      {
        t.seen[p] = true;
        t.value[p] = f[k];
      }
      else if ( t.value[p] != f[k] )
      {
        t.conflict = true;
      }
    } );
  }
  return t;
}

inline bool bit_of( uint32_t pattern, uint32_t i ) { return ( ( pattern >> i ) & 1u ) != 0u; }

template<typename Fn>
bool satisfies( pattern_table const& t, Fn&& value_at )
{
  for ( auto p = 1u; p < 8u; ++p )
  {
    if ( !t.seen[p] )
      continue;
    for ( auto m : both_modes )
    {
      if ( value_at( p, m ) != t.value[p][m] )
        return false;
    }
  }
  return true;
}

inline term_candidate make_candidate( term_shape shape, std::vector<cube> cubes, std::vector<poly_gate> gates, poly_expr expr )
{
  term_candidate t{ shape, std::move( cubes ), std::move( gates ), std::move( expr ), {} };
  t.cost = cost_of( t.expr );
  return t;
}

} // namespace detail

/*! \brief A plain group: the cube is 1/1 everywhere. */
inline std::optional<term_candidate> match_single( poly_function const& f, cube const& c )
{
  check_same_arity( f, c );
  bool all_ones = true;
  c.foreach_point( [&]( uint32_t k ) { all_ones = all_ones && f[k].mode1 && f[k].mode2; } );
  if ( !all_ones )
    return std::nullopt;
  return detail::make_candidate( term_shape::single, { c }, {}, product_term( c ) );
}

/*! \brief All gates g with `P1 g P2` equal to f on c1 ∪ c2 in both modes.

  Identical or nested cubes are degenerate (P1 g P2 collapses to a
  single product) and yield no candidates.
*/
inline std::vector<term_candidate> match_pair( poly_function const& f, cube const& c1, cube const& c2 )
{
  check_same_arity( f, c1 );
  check_same_arity( f, c2 );
  std::vector<term_candidate> result;
  if ( c1.contains( c2 ) || c2.contains( c1 ) )
    return result;

  auto const table = detail::collect_patterns( f, { c1, c2 } );
  if ( table.conflict )
    return result;

  auto const p1 = product_term( c1 );
  auto const p2 = product_term( c2 );
  for ( auto const& g : zero_preserving_gates() )
  {
    auto const ok = detail::satisfies( table, [&]( uint32_t p, mode m ) { return apply( g[m], detail::bit_of( p, 0 ), detail::bit_of( p, 1 ) ); } );
    if ( ok )
    {
      result.push_back( detail::make_candidate( term_shape::pair, { c1, c2 }, { g }, poly_expr::gate( g, p1, p2 ) ) );
    }
  }
  return result;
}

/*! \brief Both triple shapes for every ordered gate pair (g, h); operand order is kept as given. */
inline std::vector<term_candidate> match_triple( poly_function const& f, cube const& c1, cube const& c2, cube const& c3 )
{
  check_same_arity( f, c1 );
  check_same_arity( f, c2 );
  check_same_arity( f, c3 );
  std::vector<term_candidate> result;
  if ( c1 == c2 || c1 == c3 || c2 == c3 )
    return result;

  auto const table = detail::collect_patterns( f, { c1, c2, c3 } );
  if ( table.conflict )
    return result;

  auto const p1 = product_term( c1 );
  auto const p2 = product_term( c2 );
  auto const p3 = product_term( c3 );
  using detail::bit_of;
  for ( auto const& g : zero_preserving_gates() )
  {
    for ( auto const& h : zero_preserving_gates() )
    {
      auto const left_ok = detail::satisfies( table, [&]( uint32_t p, mode m ) {
        return apply( h[m], apply( g[m], bit_of( p, 0 ), bit_of( p, 1 ) ), bit_of( p, 2 ) );
      } );
      if ( left_ok )
      {
        result.push_back( detail::make_candidate( term_shape::triple_left, { c1, c2, c3 }, { g, h },
                                                  poly_expr::gate( h, poly_expr::gate( g, p1, p2 ), p3 ) ) );
      }
      auto const right_ok = detail::satisfies( table, [&]( uint32_t p, mode m ) {
        return apply( g[m], bit_of( p, 0 ), apply( h[m], bit_of( p, 1 ), bit_of( p, 2 ) ) );
      } );
      if ( right_ok )
      {
        result.push_back( detail::make_candidate( term_shape::triple_right, { c1, c2, c3 }, { g, h },
                                                  poly_expr::gate( g, p1, poly_expr::gate( h, p2, p3 ) ) ) );
      }
    }
  }
  return result;
}

inline rule_tag tag_rule( term_candidate const& t )
{
  constexpr poly_gate and_xor{ bool_op::AND, bool_op::XOR };
  switch ( t.shape )
  {
  case term_shape::single:
    return { "EXT", "single" };
  case term_shape::pair:
    if ( t.gates.front() == and_xor )
      return { "R1", and_xor.to_string() };
    return { "EXT", t.gates.front().to_string() };
  default:
    return { "EXT", t.gates[0].to_string() + "," + t.gates[1].to_string() };
  }
}

/*! \brief Key that is equal for expressions differing only in the order of commutative operands. */
inline std::string canonical_key( poly_expr const& e )
{
  switch ( e.type() )
  {
  case poly_expr::kind::constant:
    return e.value().to_string();
  case poly_expr::kind::literal:
    return ( e.complemented() ? "~x" : "x" ) + std::to_string( e.var() );
  case poly_expr::kind::gate:
  {
    auto a = canonical_key( e.left() );
    auto b = canonical_key( e.right() );
    if ( b < a )
      std::swap( a, b );
    return "(" + e.gate_type().to_string() + " " + a + " " + b + ")";
  }
  }
  return {};
}

/*! \brief Full-table check of the realization invariant, independent of the pattern matcher. */
inline bool is_sound( poly_function const& f, term_candidate const& t )
{
  auto const table = table_of( t.expr, f.num_vars() );
  for ( auto k = 0u; k < f.num_cells(); ++k )
  {
    auto const expected = t.in_region( k ) ? f[k] : poly_value{};
    if ( table[k] != expected )
      return false;
  }
  return true;
}

} // namespace polymin
