// SPDX-License-Identifier: Apache-2.0

/*!
  \file expression_io.hpp
  \brief Parsing and printing of polymorphic expressions

  Grammar, loosest binding first (all levels left-associative):

      expr := sum
      sum  := poly ( '+' poly )*          '+' is OR/OR
      poly := prod ( GATE prod )*         GATE is OPNAME '/' OPNAME
      prod := atom ( '*' atom )*          '*' is AND/AND
      atom := '~'? ( VAR | CONST | '(' expr ')' )
*/

#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "poly_function.hpp"

namespace polymin
{

namespace detail
{

class expr_parser
{
public:
  explicit expr_parser( std::string_view text ) : text_( text ) {}

  poly_expr parse()
  {
    auto e = parse_sum();
    skip_space();
    if ( pos_ != text_.size() )
    {
      throw parse_error( "unexpected '" + std::string( 1, text_[pos_] ) + "'", pos_ );
    }
    return e;
  }

private:
  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  bool accept( char c )
  {
    skip_space();
    if ( pos_ < text_.size() && text_[pos_] == c )
    {
      ++pos_;
      return true;
    }
    return false;
  }

  poly_expr parse_sum()
  {
    auto e = parse_poly();
    while ( accept( '+' ) )
    {
      e = poly_expr::gate( or_gate, e, parse_poly() );
    }
    return e;
  }

  poly_expr parse_poly()
  {
    auto e = parse_prod();
    while ( auto g = try_gate() )
    {
      e = poly_expr::gate( *g, e, parse_prod() );
    }
    return e;
  }

  poly_expr parse_prod()
  {
    auto e = parse_atom();
    while ( accept( '*' ) )
    {
      e = poly_expr::gate( and_gate, e, parse_atom() );
    }
    return e;
  }

  poly_expr parse_atom()
  {
    bool const negate = accept( '~' );
    skip_space();
    if ( pos_ >= text_.size() )
    {
      throw parse_error( "unexpected end of expression", pos_ );
    }
    poly_expr e;
    char const c = text_[pos_];
    if ( c == '(' )
    {
      ++pos_;
      e = parse_sum();
      if ( !accept( ')' ) )
      {
        throw parse_error( "expected ')'", pos_ );
      }
    }
    else if ( ( c == 'x' || c == 'X' ) && pos_ + 1u < text_.size() && std::isdigit( static_cast<unsigned char>( text_[pos_ + 1u] ) ) )
    {
      auto const start = pos_++;
      uint32_t var = 0u;
      while ( pos_ < text_.size() && std::isdigit( static_cast<unsigned char>( text_[pos_] ) ) )
      {
        var = var * 10u + static_cast<uint32_t>( text_[pos_++] - '0' );
        if ( var > max_arity )
          throw parse_error( "variable index above 16", start );
      }
      if ( var == 0u )
      {
        throw parse_error( "variables are numbered from x1", start );
      }
      e = poly_expr::literal( var );
    }
    else if ( c == '0' || c == '1' )
    {
      auto const start = pos_;
      if ( pos_ + 2u >= text_.size() || text_[pos_ + 1u] != '/' || ( text_[pos_ + 2u] != '0' && text_[pos_ + 2u] != '1' ) )
      {
        throw parse_error( "malformed constant, expected <bit>/<bit>", start );
      }
      e = poly_expr::constant( poly_value::parse( text_.substr( pos_, 3u ) ) );
      pos_ += 3u;
    }
    else
    {
      throw parse_error( "expected variable, constant or '('", pos_ );
    }
    return negate ? complement( e ) : e;
  }

  std::string_view read_word()
  {
    auto const start = pos_;
    while ( pos_ < text_.size() && std::isalpha( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
    return text_.substr( start, pos_ - start );
  }

  std::optional<poly_gate> try_gate()
  {
    skip_space();
    if ( pos_ >= text_.size() || !std::isalpha( static_cast<unsigned char>( text_[pos_] ) ) )
      return std::nullopt;
    auto const start = pos_;
    auto const first = read_word();
    auto const op1 = parse_bool_op( first );
    if ( !op1 )
    {
      throw parse_error( "unknown operator '" + std::string( first ) + "'", start );
    }
    if ( pos_ >= text_.size() || text_[pos_] != '/' )
    {
      throw parse_error( "malformed gate pair, expected '/' after " + std::string( first ), pos_ );
    }
    ++pos_;
    auto const second_start = pos_;
    auto const second = read_word();
    if ( second.empty() )
    {
      throw parse_error( "malformed gate pair, missing second operator", second_start );
    }
    auto const op2 = parse_bool_op( second );
    if ( !op2 )
    {
      throw parse_error( "unknown operator '" + std::string( second ) + "'", second_start );
    }
    return poly_gate{ *op1, *op2 };
  }

  std::string_view text_;
  std::size_t pos_{ 0 };
};

/* binding strength: sum 0, named gate 1, product 2, atom 3 */
inline int precedence( poly_expr const& e )
{
  if ( !e.is_gate() )
    return 3;
  auto const g = e.gate_type();
  if ( g == or_gate )
    return 0;
  if ( g == and_gate )
    return 2;
  return 1;
}

inline void print_into( poly_expr const& e, int min_level, std::string& out )
{
  auto const level = precedence( e );
  bool const parens = level < min_level;
  if ( parens )
    out += '(';
  switch ( e.type() )
  {
  case poly_expr::kind::constant:
    out += e.value().to_string();
    break;
  case poly_expr::kind::literal:
    if ( e.complemented() )
      out += '~';
    out += 'x';
    out += std::to_string( e.var() );
    break;
  case poly_expr::kind::gate:
    print_into( e.left(), level, out );
    if ( level == 0 )
      out += " + ";
    else if ( level == 2 )
      out += " * ";
    else
      out += " " + e.gate_type().to_string() + " ";
    print_into( e.right(), level + 1, out );
    break;
  }
  if ( parens )
    out += ')';
}

} // namespace detail

inline poly_expr parse_expr( std::string_view text ) { return detail::expr_parser( text ).parse(); }

/*! \brief Canonical text: minimal parentheses, `+` for OR/OR and `*` for AND/AND. */
inline std::string print_expr( poly_expr const& e )
{
  std::string out;
  detail::print_into( e, 0, out );
  return out;
}

} // namespace polymin
