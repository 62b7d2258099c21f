// SPDX-License-Identifier: Apache-2.0

/*!
  \file cube.hpp
  \brief Subcubes of B^n, per-mode classification and implicants

  A cube fixes the variables in `mask` to the bits in `values`.  Masks
  use the table-index bit layout, so x1 is bit n-1 and membership of a
  point with index k is `( k & mask ) == values`.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "poly_function.hpp"

namespace polymin
{

class cube
{
public:
  /*! \brief The full cube of arity n. */
  explicit cube( uint32_t num_vars ) : cube( num_vars, 0u, 0u ) {}

  cube( uint32_t num_vars, uint32_t mask, uint32_t values ) : num_vars_( num_vars ), mask_( mask ), values_( values )
  {
    if ( num_vars == 0u || num_vars > max_arity )
    {
      throw arity_error( "cube arity " + std::to_string( num_vars ) + " outside [1, 16]" );
    }
    auto const all = ( 1u << num_vars ) - 1u;
    if ( ( mask & ~all ) != 0u || ( values & ~mask ) != 0u )
    {
      throw arity_error( "cube mask/values inconsistent with arity" );
    }
  }

  static cube point( uint32_t num_vars, uint32_t index ) { return cube( num_vars, ( 1u << num_vars ) - 1u, index ); }

  /*! \brief Parses the `{0,1,-}` form, character i describing x_{i+1}. */
  static cube parse( std::string_view text )
  {
    if ( text.empty() || text.size() > max_arity )
    {
      throw parse_error( "cube string must have 1 to 16 characters" );
    }
    auto const n = static_cast<uint32_t>( text.size() );
    uint32_t mask = 0u, values = 0u;
    for ( auto i = 0u; i < n; ++i )
    {
      auto const bit = 1u << ( n - 1u - i );
      switch ( text[i] )
      {
      case '0':
        mask |= bit;
        break;
      case '1':
        mask |= bit;
        values |= bit;
        break;
      case '-':
        break;
      default:
        throw parse_error( "cube character must be 0, 1 or -", i );
      }
    }
    return cube( n, mask, values );
  }

  uint32_t num_vars() const { return num_vars_; }
  uint32_t mask() const { return mask_; }
  uint32_t values() const { return values_; }

  uint32_t num_bound() const { return static_cast<uint32_t>( std::popcount( mask_ ) ); }
  uint32_t dimension() const { return num_vars_ - num_bound(); }
  uint64_t num_points() const { return uint64_t{ 1 } << dimension(); }

  bool contains( uint32_t index ) const { return ( index & mask_ ) == values_; }

  /*! \brief True if every point of `other` lies in this cube. */
  bool contains( cube const& other ) const
  {
    return num_vars_ == other.num_vars_ && ( mask_ & ~other.mask_ ) == 0u && ( other.values_ & mask_ ) == values_;
  }

  std::string to_string() const
  {
    std::string s( num_vars_, '-' );
    for ( auto i = 0u; i < num_vars_; ++i )
    {
      auto const bit = 1u << ( num_vars_ - 1u - i );
      if ( mask_ & bit )
        s[i] = ( values_ & bit ) ? '1' : '0';
    }
    return s;
  }

  /*! \brief Calls fn(index) for every point, ascending. */
  template<typename Fn>
  void foreach_point( Fn&& fn ) const
  {
    auto const free = ~mask_ & ( ( 1u << num_vars_ ) - 1u );
    uint32_t sub = 0u;
    do
    {
      fn( values_ | sub );
      sub = ( sub - free ) & free;
    } while ( sub != 0u );
  }

  std::vector<assignment> points() const
  {
    std::vector<assignment> result;
    result.reserve( static_cast<std::size_t>( num_points() ) );
    foreach_point( [&]( uint32_t k ) { result.emplace_back( num_vars_, k ); } );
    return result;
  }

  bool operator==( cube const& ) const = default;

  /*! \brief Canonical order: higher dimension first, then (mask, values) ascending. */
  friend bool operator<( cube const& a, cube const& b )
  {
    if ( a.num_bound() != b.num_bound() )
      return a.num_bound() < b.num_bound();
    if ( a.mask_ != b.mask_ )
      return a.mask_ < b.mask_;
    return a.values_ < b.values_;
  }

  uint64_t key() const { return ( uint64_t{ mask_ } << 32u ) | values_; }

private:
  uint32_t num_vars_;
  uint32_t mask_;
  uint32_t values_;
};

inline void check_same_arity( cube const& a, cube const& b )
{
  if ( a.num_vars() != b.num_vars() )
  {
    throw arity_error( "cube arities differ: " + std::to_string( a.num_vars() ) + " vs " + std::to_string( b.num_vars() ) );
  }
}

inline void check_same_arity( poly_function const& f, cube const& c )
{
  if ( f.num_vars() != c.num_vars() )
  {
    throw arity_error( "cube arity " + std::to_string( c.num_vars() ) + " does not match function arity " + std::to_string( f.num_vars() ) );
  }
}

/*! \brief Points common to both cubes; nullopt when a bound variable conflicts. */
inline std::optional<cube> intersect( cube const& a, cube const& b )
{
  check_same_arity( a, b );
  auto const common = a.mask() & b.mask();
  if ( ( a.values() & common ) != ( b.values() & common ) )
    return std::nullopt;
  return cube( a.num_vars(), a.mask() | b.mask(), a.values() | b.values() );
}

/*! \brief Characteristic function of the cube as an AND/AND chain of literals. */
inline poly_expr product_term( cube const& c )
{
  std::optional<poly_expr> term;
  for ( auto var = 1u; var <= c.num_vars(); ++var )
  {
    auto const bit = 1u << variable_shift( c.num_vars(), var );
    if ( ( c.mask() & bit ) == 0u )
      continue;
    auto lit = poly_expr::literal( var, ( c.values() & bit ) == 0u );
    term = term ? poly_expr::gate( and_gate, *term, lit ) : lit;
  }
  return term ? *term : poly_expr::constant( { true, true } );
}

enum class cube_class : uint8_t
{
  one_cube,
  zero_cube,
  mixed
};

inline cube_class classify( poly_function const& f, cube const& c, mode m )
{
  check_same_arity( f, c );
  bool any_one = false, any_zero = false;
  c.foreach_point( [&]( uint32_t k ) {
    if ( f.value( k, m ) )
      any_one = true;
    else
      any_zero = true;
  } );
  if ( any_one && any_zero )
    return cube_class::mixed;
  return any_one ? cube_class::one_cube : cube_class::zero_cube;
}

struct implicant_sets
{
  std::vector<cube> all;
  std::vector<cube> primes;
};

/*! \brief All implicants and prime implicants of an on-set by iterated merging.

  Level d holds the d-dimensional implicants; two implicants of level d
  with equal mask whose values differ in exactly one bound bit merge into
  one of level d + 1.  Implicants that never merge are prime.
*/
inline implicant_sets implicants_of( uint32_t num_vars, std::vector<bool> const& onset )
{
  auto const full = ( 1u << num_vars ) - 1u;
  implicant_sets result;
  std::vector<cube> level;
  for ( auto k = 0u; k < onset.size(); ++k )
  {
    if ( onset[k] )
      level.push_back( cube::point( num_vars, k ) );
  }
  while ( !level.empty() )
  {
    std::unordered_set<uint64_t> present;
    for ( auto const& c : level )
      present.insert( c.key() );

    std::unordered_set<uint64_t> merged_keys;
    std::vector<cube> next;
    for ( auto const& c : level )
    {
      bool merged = false;
      for ( auto m = c.mask(); m != 0u; m &= m - 1u )
      {
        auto const bit = m & ( ~m + 1u );
        cube const partner( num_vars, c.mask(), c.values() ^ bit );
        if ( !present.count( partner.key() ) )
          continue;
        merged = true;
        cube const up( num_vars, c.mask() & ~bit & full, c.values() & ~bit );
        if ( merged_keys.insert( up.key() ).second )
          next.push_back( up );
      }
      result.all.push_back( c );
      if ( !merged )
        result.primes.push_back( c );
    }
    level = std::move( next );
  }
  std::sort( result.all.begin(), result.all.end() );
  std::sort( result.primes.begin(), result.primes.end() );
  return result;
}

/*! \brief All one-cubes of f_m, canonical order. */
inline std::vector<cube> implicants( poly_function const& f, mode m ) { return implicants_of( f.num_vars(), f.mode_view( m ) ).all; }

/*! \brief Maximal one-cubes of f_m, canonical order. */
inline std::vector<cube> prime_implicants( poly_function const& f, mode m ) { return implicants_of( f.num_vars(), f.mode_view( m ) ).primes; }

} // namespace polymin
