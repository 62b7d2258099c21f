// SPDX-License-Identifier: Apache-2.0

/*!
  \file ppla.hpp
  \brief The .ppla format: PLA-style listing of a polymorphic truth table

  \verbatim
  # comment
  .i 4
  .m 2
  .ob parity4 majority4
  0001 1/0
  0111 1/1
  .e
  \endverbatim

  Rows not listed are 0/0.  `.m` defaults to 2 and must be 2 when given.
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "poly_function.hpp"

namespace polymin
{

struct ppla_row
{
  std::string bits;
  poly_value value;

  bool operator==( ppla_row const& ) const = default;
};

struct ppla_document
{
  uint32_t num_vars{ 0 };
  std::vector<std::string> mode_names;
  std::vector<ppla_row> rows;

  bool operator==( ppla_document const& ) const = default;

  /*! \brief Rows sorted ascending by input bits. */
  void canonicalize()
  {
    std::sort( rows.begin(), rows.end(), []( auto const& a, auto const& b ) { return a.bits < b.bits; } );
  }

  poly_function to_function() const
  {
    poly_function f( num_vars );
    for ( auto const& r : rows )
      f[assignment::from_bits( r.bits ).index()] = r.value;
    return f;
  }

  /*! \brief Canonical document listing the cells that are not 0/0. */
  static ppla_document from_function( poly_function const& f, std::vector<std::string> names = {} )
  {
    ppla_document doc{ f.num_vars(), std::move( names ), {} };
    for ( auto k = 0u; k < f.num_cells(); ++k )
    {
      if ( !f[k].is_zero() )
        doc.rows.push_back( { assignment( f.num_vars(), k ).to_string(), f[k] } );
    }
    return doc;
  }
};

namespace detail
{

inline std::vector<std::string> split_words( std::string_view line )
{
  std::vector<std::string> words;
  std::istringstream in{ std::string( line ) };
  std::string w;
  while ( in >> w )
    words.push_back( w );
  return words;
}

} // namespace detail

/*! \brief Parses a document; errors carry the 1-based line number as position. */
inline ppla_document parse_ppla( std::string_view text )
{
  ppla_document doc;
  bool have_inputs = false, have_modes = false, ended = false;
  std::unordered_set<std::string> seen;

  std::size_t line_no = 0u;
  std::size_t start = 0u;
  while ( start <= text.size() )
  {
    auto end = text.find( '\n', start );
    if ( end == std::string_view::npos )
      end = text.size();
    auto line = text.substr( start, end - start );
    start = end + 1u;
    ++line_no;

    if ( auto const hash = line.find( '#' ); hash != std::string_view::npos )
      line = line.substr( 0u, hash );
    auto const words = detail::split_words( line );
    if ( words.empty() )
      continue;
    auto fail = [&]( std::string const& msg ) { throw parse_error( "line " + std::to_string( line_no ) + ": " + msg, line_no ); };

    if ( ended )
      fail( "content after .e" );

    auto const& head = words.front();
    if ( head == ".i" )
    {
      if ( have_inputs )
        fail( "duplicate .i" );
      if ( words.size() != 2u )
        fail( ".i expects one number" );
      uint32_t n = 0u;
      try
      {
        std::size_t used = 0u;
        auto const v = std::stoul( words[1], &used );
        if ( used != words[1].size() || v == 0u || v > max_arity )
          fail( ".i must be between 1 and 16" );
        n = static_cast<uint32_t>( v );
      }
      catch ( std::logic_error const& )
      {
        fail( ".i expects a number" );
      }
      doc.num_vars = n;
      have_inputs = true;
    }
    else if ( head == ".m" )
    {
      if ( have_modes )
        fail( "duplicate .m" );
      if ( words.size() != 2u || words[1] != "2" )
        fail( ".m must be 2" );
      have_modes = true;
    }
    else if ( head == ".ob" )
    {
      if ( words.size() != 3u )
        fail( ".ob expects two mode names" );
      doc.mode_names = { words[1], words[2] };
    }
    else if ( head == ".e" )
    {
      if ( words.size() != 1u )
        fail( ".e takes no arguments" );
      ended = true;
    }
    else if ( head.front() == '.' )
    {
      fail( "unknown directive " + head );
    }
    else
    {
      if ( !have_inputs )
        fail( "data row before .i" );
      if ( words.size() != 2u )
        fail( "data row must be '<bits> <b>/<b>'" );
      auto const& bits = words[0];
      if ( bits.size() != doc.num_vars || bits.find_first_not_of( "01" ) != std::string::npos )
        fail( "input '" + bits + "' must be " + std::to_string( doc.num_vars ) + " bits" );
      poly_value value;
      try
      {
        value = poly_value::parse( words[1] );
      }
      catch ( parse_error const& )
      {
        fail( "malformed value '" + words[1] + "'" );
      }
      if ( !seen.insert( bits ).second )
        fail( "duplicate row " + bits );
      doc.rows.push_back( { bits, value } );
    }
  }
  if ( !have_inputs )
    throw parse_error( "missing .i", line_no );
  if ( !ended )
    throw parse_error( "missing .e", line_no );
  return doc;
}

/*! \brief Writes the canonical text form (rows ascending). */
inline std::string serialize_ppla( ppla_document doc )
{
  doc.canonicalize();
  std::string out = ".i " + std::to_string( doc.num_vars ) + "\n.m 2\n";
  if ( doc.mode_names.size() == 2u )
    out += ".ob " + doc.mode_names[0] + " " + doc.mode_names[1] + "\n";
  for ( auto const& r : doc.rows )
    out += r.bits + " " + r.value.to_string() + "\n";
  out += ".e\n";
  return out;
}

} // namespace polymin
