// SPDX-License-Identifier: Apache-2.0

/*!
  \file benchmarks.hpp
  \brief Single-mode benchmark generators and paired benchmark specs

  A pair spec reads `<mode1>/<mode2>`, each side one of

    parity<N>  majority<N>  multiplier<A>x<B>[:<OUT>]  sortingnet<N>[:<OUT>]
    zero<N>    one<N>

  Output indices are 0-based and default to 2.
*/

#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poly_function.hpp"

namespace polymin
{

inline constexpr uint32_t default_output_index = 2u;

inline void check_benchmark_arity( uint32_t n )
{
  if ( n == 0u || n > max_arity )
  {
    throw arity_error( "benchmark arity " + std::to_string( n ) + " outside [1, 16]" );
  }
}

inline std::vector<bool> parity_table( uint32_t n )
{
  check_benchmark_arity( n );
  std::vector<bool> t( std::size_t{ 1 } << n );
  for ( auto k = 0u; k < t.size(); ++k )
    t[k] = ( std::popcount( k ) & 1 ) != 0;
  return t;
}

/*! \brief 1 iff more than half of the inputs are 1. */
inline std::vector<bool> majority_table( uint32_t n )
{
  check_benchmark_arity( n );
  std::vector<bool> t( std::size_t{ 1 } << n );
  for ( auto k = 0u; k < t.size(); ++k )
    t[k] = 2u * static_cast<uint32_t>( std::popcount( k ) ) > n;
  return t;
}

/*! \brief Bit `out` of a * b, where a is x1..x_A and b is x_{A+1}..x_{A+B}, most significant first. */
inline std::vector<bool> multiplier_table( uint32_t a_bits, uint32_t b_bits, uint32_t out )
{
  check_benchmark_arity( a_bits + b_bits );
  if ( a_bits == 0u || b_bits == 0u )
    throw arity_error( "multiplier operands need at least one bit" );
  if ( out >= a_bits + b_bits )
    throw arity_error( "multiplier output index " + std::to_string( out ) + " out of range" );
  std::vector<bool> t( std::size_t{ 1 } << ( a_bits + b_bits ) );
  for ( auto k = 0u; k < t.size(); ++k )
  {
    auto const a = k >> b_bits;
    auto const b = k & ( ( 1u << b_bits ) - 1u );
    t[k] = ( ( ( a * b ) >> out ) & 1u ) != 0u;
  }
  return t;
}

/*! \brief Output `out` of an n-input sorting network (outputs descending): 1 iff at least out+1 inputs are 1. */
inline std::vector<bool> sortingnet_table( uint32_t n, uint32_t out )
{
  check_benchmark_arity( n );
  if ( out >= n )
    throw arity_error( "sorting network output index " + std::to_string( out ) + " out of range" );
  std::vector<bool> t( std::size_t{ 1 } << n );
  for ( auto k = 0u; k < t.size(); ++k )
    t[k] = static_cast<uint32_t>( std::popcount( k ) ) >= out + 1u;
  return t;
}

struct single_benchmark
{
  uint32_t num_vars;
  std::vector<bool> table;
  std::string name;
};

namespace detail
{

class spec_reader
{
public:
  explicit spec_reader( std::string_view text, std::size_t offset ) : text_( text ), offset_( offset ) {}

  bool consume( std::string_view word )
  {
    if ( text_.substr( pos_, word.size() ) != word )
      return false;
    pos_ += word.size();
    return true;
  }

  uint32_t number()
  {
    auto const start = pos_;
    uint64_t v = 0u;
    while ( pos_ < text_.size() && std::isdigit( static_cast<unsigned char>( text_[pos_] ) ) )
    {
      v = v * 10u + static_cast<uint64_t>( text_[pos_++] - '0' );
      if ( v > 1000u )
        throw parse_error( "number too large in benchmark spec", offset_ + start );
    }
    if ( pos_ == start )
      throw parse_error( "expected a number in benchmark spec", offset_ + start );
    return static_cast<uint32_t>( v );
  }

  uint32_t optional_output()
  {
    return consume( ":" ) ? number() : default_output_index;
  }

  void finish() const
  {
    if ( pos_ != text_.size() )
      throw parse_error( "trailing characters in benchmark spec", offset_ + pos_ );
  }

private:
  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_{ 0 };
};

} // namespace detail

inline single_benchmark parse_single_benchmark( std::string_view spec, std::size_t offset = 0u )
{
  detail::spec_reader in( spec, offset );
  single_benchmark b;
  if ( in.consume( "parity" ) )
  {
    b.num_vars = in.number();
    b.table = parity_table( b.num_vars );
  }
  else if ( in.consume( "majority" ) )
  {
    b.num_vars = in.number();
    b.table = majority_table( b.num_vars );
  }
  else if ( in.consume( "multiplier" ) )
  {
    auto const a = in.number();
    if ( !in.consume( "x" ) )
      throw parse_error( "expected multiplier<A>x<B>", offset );
    auto const bb = in.number();
    auto const out = in.optional_output();
    b.num_vars = a + bb;
    b.table = multiplier_table( a, bb, out );
  }
  else if ( in.consume( "sortingnet" ) )
  {
    b.num_vars = in.number();
    b.table = sortingnet_table( b.num_vars, in.optional_output() );
  }
  else if ( in.consume( "zero" ) )
  {
    b.num_vars = in.number();
    check_benchmark_arity( b.num_vars );
    b.table.assign( std::size_t{ 1 } << b.num_vars, false );
  }
  else if ( in.consume( "one" ) )
  {
    b.num_vars = in.number();
    check_benchmark_arity( b.num_vars );
    b.table.assign( std::size_t{ 1 } << b.num_vars, true );
  }
  else
  {
    throw parse_error( "unknown benchmark '" + std::string( spec ) + "'", offset );
  }
  in.finish();
  b.name = std::string( spec );
  return b;
}

struct benchmark_pair
{
  poly_function function;
  std::vector<std::string> mode_names;
};

/*! \brief Builds `<mode1>/<mode2>` by zipping two generated tables of equal arity. */
inline benchmark_pair gen_benchmark( std::string_view spec )
{
  auto const slash = spec.find( '/' );
  if ( slash == std::string_view::npos )
  {
    throw parse_error( "benchmark spec must be <mode1>/<mode2>", spec.size() );
  }
  auto const first = parse_single_benchmark( spec.substr( 0u, slash ), 0u );
  auto const second = parse_single_benchmark( spec.substr( slash + 1u ), slash + 1u );
  if ( first.num_vars != second.num_vars )
  {
    throw arity_error( "benchmark modes differ in arity: " + std::to_string( first.num_vars ) + " vs " + std::to_string( second.num_vars ) );
  }
  return { poly_function::from_modes( first.num_vars, first.table, second.table ), { first.name, second.name } };
}

} // namespace polymin
