// SPDX-License-Identifier: Apache-2.0

/*!
  \file kmap.hpp
  \brief Polymorphic Karnaugh map layout and ASCII rendering

  Rows are labelled by the low-indexed variables x1..x_r with
  r = ceil(n/2), columns by the rest; both axes use reflected Gray order.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "poly_function.hpp"

namespace polymin
{

struct kmap_layout
{
  uint32_t row_vars{ 0 };
  uint32_t col_vars{ 0 };
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<uint32_t>> grid; /* table index per (row, column) */
};

namespace detail
{

inline std::vector<uint32_t> gray_sequence( uint32_t bits )
{
  std::vector<uint32_t> seq( std::size_t{ 1 } << bits );
  for ( auto i = 0u; i < seq.size(); ++i )
    seq[i] = i ^ ( i >> 1u );
  return seq;
}

inline std::string bit_label( uint32_t value, uint32_t bits )
{
  std::string s( bits, '0' );
  for ( auto i = 0u; i < bits; ++i )
    if ( ( value >> ( bits - 1u - i ) ) & 1u )
      s[i] = '1';
  return s;
}

inline std::string variable_range( uint32_t first, uint32_t last )
{
  std::string s;
  for ( auto v = first; v <= last; ++v )
    s += "x" + std::to_string( v );
  return s;
}

} // namespace detail

inline kmap_layout make_kmap_layout( uint32_t num_vars )
{
  if ( num_vars < 2u || num_vars > 6u )
  {
    throw arity_error( "K-maps are drawn for 2 to 6 variables, got " + std::to_string( num_vars ) );
  }
  kmap_layout layout;
  layout.row_vars = ( num_vars + 1u ) / 2u;
  layout.col_vars = num_vars - layout.row_vars;
  auto const rows = detail::gray_sequence( layout.row_vars );
  auto const cols = detail::gray_sequence( layout.col_vars );
  for ( auto r : rows )
    layout.row_labels.push_back( detail::bit_label( r, layout.row_vars ) );
  for ( auto c : cols )
    layout.col_labels.push_back( detail::bit_label( c, layout.col_vars ) );
  for ( auto r : rows )
  {
    std::vector<uint32_t> line;
    for ( auto c : cols )
      line.push_back( ( r << layout.col_vars ) | c );
    layout.grid.push_back( std::move( line ) );
  }
  return layout;
}

inline std::string render_kmap( poly_function const& f )
{
  auto const layout = make_kmap_layout( f.num_vars() );
  auto const corner = detail::variable_range( 1u, layout.row_vars ) + " \\ " + detail::variable_range( layout.row_vars + 1u, f.num_vars() );
  auto const label_width = std::max<std::size_t>( corner.size(), layout.row_vars );
  auto const cell_width = std::max<std::size_t>( 3u, layout.col_vars );

  auto pad = []( std::string s, std::size_t width ) {
    s.resize( std::max( s.size(), width ), ' ' );
    return s;
  };

  std::string header = pad( corner, label_width ) + " |";
  for ( auto const& c : layout.col_labels )
    header += " " + pad( c, cell_width );
  while ( header.back() == ' ' )
    header.pop_back();

  std::string out = header + "\n";
  out += std::string( label_width + 1u, '-' ) + "+" + std::string( layout.col_labels.size() * ( cell_width + 1u ), '-' ) + "\n";
  for ( auto r = 0u; r < layout.grid.size(); ++r )
  {
    std::string line = pad( layout.row_labels[r], label_width ) + " |";
    for ( auto index : layout.grid[r] )
      line += " " + pad( f[index].to_string(), cell_width );
    while ( line.back() == ' ' )
      line.pop_back();
    out += line + "\n";
  }
  return out;
}

} // namespace polymin
