// SPDX-License-Identifier: Apache-2.0

/*!
  \file exact.hpp
  \brief Smallest equivalent expression by exhaustive enumeration (n <= 3)

  Trees are enumerated by node count (1, 3, 5, ...), combining every
  function reached at size i with every function reached at size j under
  each gate.  Only the first tree found per function is kept: any subtree
  can be swapped for a smallest tree of the same function, so this finds
  a minimum-size tree.  Leaves are the constants (tried first) and the
  literals; inner gates are the zero-preserving pairs.  If nothing is
  found within the budget, the root alone may use any of the 36 gates.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "poly_function.hpp"

namespace polymin
{

namespace detail
{

class exact_enumerator
{
public:
  explicit exact_enumerator( uint32_t num_vars ) : num_vars_( num_vars ), cells_( 1u << num_vars ), mask_( ( 1u << cells_ ) - 1u ), size_of_( std::size_t{ 1 } << ( 2u * cells_ ), 0u ) {}

  std::optional<poly_expr> search( poly_function const& f, uint32_t budget )
  {
    auto const target = key_of( f );
    levels_.assign( budget + 1u, {} );

    for ( auto c = 0u; c < 4u; ++c )
      add_leaf( poly_expr::constant( poly_value::from_code( c ) ) );
    for ( auto v = 1u; v <= num_vars_; ++v )
    {
      add_leaf( poly_expr::literal( v ) );
      add_leaf( poly_expr::literal( v, true ) );
    }
    if ( budget == 0u )
      return std::nullopt;
    for ( auto const& e : levels_[1] )
      if ( e.key == target )
        return build( e );

    for ( auto size = 3u; size <= budget; size += 2u )
    {
      for ( auto left = 1u; 2u * left + 1u <= size; left += 2u )
      {
        auto const right = size - 1u - left;
        for ( auto g = 0u; g < zero_preserving_gates().size(); ++g )
        {
          auto const gate = zero_preserving_gates()[g];
          for ( auto a = 0u; a < levels_[left].size(); ++a )
          {
            for ( auto b = ( left == right ? a : 0u ); b < levels_[right].size(); ++b )
            {
              auto const key = combine( gate, levels_[left][a].key, levels_[right][b].key );
              if ( size_of_[key] != 0u )
                continue;
              size_of_[key] = size;
              levels_[size].push_back( { key, static_cast<uint8_t>( g ), left, a, right, b, {} } );
              if ( key == target )
                return build( levels_[size].back() );
            }
          }
        }
      }
    }

    /* root-only fallback with the non-zero-preserving gates */
    for ( auto size = 3u; size <= budget; size += 2u )
    {
      for ( auto left = 1u; 2u * left + 1u <= size; left += 2u )
      {
        auto const right = size - 1u - left;
        for ( auto const& gate : all_gates() )
        {
          if ( gate.is_zero_preserving() )
            continue;
          for ( auto a = 0u; a < levels_[left].size(); ++a )
            for ( auto b = 0u; b < levels_[right].size(); ++b )
              if ( combine( gate, levels_[left][a].key, levels_[right][b].key ) == target )
                return poly_expr::gate( gate, build( levels_[left][a] ), build( levels_[right][b] ) );
        }
      }
    }
    return std::nullopt;
  }

private:
  struct entry
  {
    uint32_t key;
    uint8_t gate;
    uint32_t left_size;
    uint32_t left_index;
    uint32_t right_size;
    uint32_t right_index;
    std::optional<poly_expr> leaf;
  };

  /* mode-1 bits in the low half, mode-2 bits in the high half */
  uint32_t key_of( poly_function const& f ) const
  {
    uint32_t key = 0u;
    for ( auto k = 0u; k < cells_; ++k )
    {
      key |= ( f[k].mode1 ? 1u : 0u ) << k;
      key |= ( f[k].mode2 ? 1u : 0u ) << ( k + cells_ );
    }
    return key;
  }

  uint32_t combine( poly_gate g, uint32_t a, uint32_t b ) const
  {
    auto const m1 = static_cast<uint32_t>( apply( g.op1, uint64_t{ a & mask_ }, uint64_t{ b & mask_ } ) ) & mask_;
    auto const m2 = static_cast<uint32_t>( apply( g.op2, uint64_t{ a >> cells_ }, uint64_t{ b >> cells_ } ) ) & mask_;
    return m1 | ( m2 << cells_ );
  }

  void add_leaf( poly_expr e )
  {
    auto const key = key_of( table_of( e, num_vars_ ) );
    if ( size_of_[key] != 0u )
      return;
    size_of_[key] = 1u;
    levels_[1].push_back( { key, 0u, 0u, 0u, 0u, 0u, std::move( e ) } );
  }

  poly_expr build( entry const& e ) const
  {
    if ( e.leaf )
      return *e.leaf;
    return poly_expr::gate( zero_preserving_gates()[e.gate], build( levels_[e.left_size][e.left_index] ),
                            build( levels_[e.right_size][e.right_index] ) );
  }

  uint32_t num_vars_;
  uint32_t cells_;
  uint32_t mask_;
  std::vector<uint32_t> size_of_;
  std::vector<std::vector<entry>> levels_;
};

} // namespace detail

/*! \brief A smallest-node-count expression equivalent to f, or nullopt if none fits in `budget` nodes. */
inline std::optional<poly_expr> exact_search( poly_function const& f, uint32_t budget )
{
  if ( f.num_vars() > 3u )
  {
    throw arity_error( "exact search supports at most 3 variables" );
  }
  return detail::exact_enumerator( f.num_vars() ).search( f, budget );
}

} // namespace polymin
