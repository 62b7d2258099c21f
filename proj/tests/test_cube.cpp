// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include <polymin/benchmarks.hpp>
#include <polymin/cube.hpp>
#include <polymin/expression_io.hpp>

#include "oracles.hpp"

using namespace polymin;

TEST( Cube, ParseAndPrint )
{
  auto const c = cube::parse( "1-0" );
  EXPECT_EQ( c.num_vars(), 3u );
  EXPECT_EQ( c.num_bound(), 2u );
  EXPECT_EQ( c.dimension(), 1u );
  EXPECT_EQ( c.num_points(), 2u );
  EXPECT_EQ( c.to_string(), "1-0" );
  EXPECT_THROW( cube::parse( "1x0" ), parse_error );
  EXPECT_THROW( cube::parse( "" ), parse_error );
  EXPECT_THROW( cube( 2, 0b100u, 0u ), arity_error );
  EXPECT_THROW( cube( 2, 0b01u, 0b10u ), arity_error );
}

TEST( Cube, PointsAscendAndMatchStringMembership )
{
  auto const c = cube::parse( "-1-0" );
  auto const pts = c.points();
  ASSERT_EQ( pts.size(), 4u );
  EXPECT_EQ( pts[0].to_string(), "0100" );
  EXPECT_EQ( pts[1].to_string(), "0110" );
  EXPECT_EQ( pts[2].to_string(), "1100" );
  EXPECT_EQ( pts[3].to_string(), "1110" );

  for ( auto const& d : oracle::all_cubes( 4 ) )
  {
    std::vector<uint32_t> expected;
    for ( auto k = 0u; k < 16u; ++k )
    {
      ASSERT_EQ( d.contains( k ), oracle::in_cube( d, k ) );
      if ( oracle::in_cube( d, k ) )
        expected.push_back( k );
    }
    std::vector<uint32_t> got;
    for ( auto const& a : d.points() )
      got.push_back( a.index() );
    ASSERT_EQ( got, expected );
  }
}

TEST( Cube, IntersectMatchesPointwiseDefinition )
{
  auto const cubes = oracle::all_cubes( 3 );
  for ( auto const& a : cubes )
  {
    for ( auto const& b : cubes )
    {
      auto const i = intersect( a, b );
      auto const j = intersect( b, a );
      ASSERT_EQ( i.has_value(), j.has_value() );
      for ( auto k = 0u; k < 8u; ++k )
      {
        bool const both = oracle::in_cube( a, k ) && oracle::in_cube( b, k );
        ASSERT_EQ( i.has_value() && i->contains( k ), both );
      }
      if ( i )
      {
        EXPECT_EQ( *i, *j );
        EXPECT_TRUE( a.contains( *i ) );
        EXPECT_TRUE( b.contains( *i ) );
      }
      EXPECT_EQ( a.contains( b ), oracle::cube_subset( b, a ) );
    }
  }
  EXPECT_FALSE( intersect( cube::parse( "1-" ), cube::parse( "0-" ) ).has_value() );
  EXPECT_THROW( intersect( cube::parse( "1-" ), cube::parse( "1--" ) ), arity_error );
}

TEST( Cube, CanonicalOrderIsDimensionThenMaskThenValues )
{
  EXPECT_LT( cube::parse( "1-" ), cube::parse( "11" ) );
  EXPECT_LT( cube::parse( "--" ), cube::parse( "1-" ) );
  EXPECT_LT( cube::parse( "-0" ), cube::parse( "-1" ) );
  EXPECT_LT( cube::parse( "-1" ), cube::parse( "0-" ) );
}

TEST( ProductTerm, ExhaustiveUpToFourVariables )
{
  for ( auto n = 1u; n <= 4u; ++n )
  {
    for ( auto const& c : oracle::all_cubes( n ) )
    {
      auto const t = table_of( product_term( c ), n );
      for ( auto k = 0u; k < t.num_cells(); ++k )
      {
        bool const in = oracle::in_cube( c, k );
        ASSERT_EQ( t[k], ( poly_value{ in, in } ) ) << c.to_string();
      }
      EXPECT_EQ( cost_of( product_term( c ) ).poly_gate_count, 0u );
    }
  }
  EXPECT_EQ( print_expr( product_term( cube::parse( "1-0" ) ) ), "x1 * ~x3" );
  EXPECT_EQ( print_expr( product_term( cube::parse( "---" ) ) ), "1/1" );
}

TEST( Classify, OneZeroAndMixed )
{
  auto const f = poly_function::from_modes( 2, { false, true, true, true }, { false, false, false, true } );
  EXPECT_EQ( classify( f, cube::parse( "1-" ), mode::first ), cube_class::one_cube );
  EXPECT_EQ( classify( f, cube::parse( "0-" ), mode::first ), cube_class::mixed );
  EXPECT_EQ( classify( f, cube::parse( "0-" ), mode::second ), cube_class::zero_cube );
  EXPECT_EQ( classify( f, cube::parse( "11" ), mode::second ), cube_class::one_cube );
  EXPECT_THROW( classify( f, cube::parse( "1--" ), mode::first ), arity_error );
}

TEST( Implicants, PrimesMatchBruteForceOnRandomFunctions )
{
  std::mt19937 rng( 3 );
  for ( auto trial = 0; trial < 200; ++trial )
  {
    auto const n = 1u + rng() % 5u;
    auto const f = oracle::random_function( rng, n );
    for ( auto m : both_modes )
    {
      auto primes = prime_implicants( f, m );
      std::sort( primes.begin(), primes.end() );
      ASSERT_EQ( primes, oracle::brute_force_primes( n, f.mode_view( m ) ) );

      auto all = implicants( f, m );
      std::vector<cube> expected;
      for ( auto const& c : oracle::all_cubes( n ) )
        if ( oracle::is_one_cube( f.mode_view( m ), c ) )
          expected.push_back( c );
      std::sort( all.begin(), all.end() );
      std::sort( expected.begin(), expected.end() );
      ASSERT_EQ( all, expected );
    }
  }
}

TEST( Implicants, KnownCounts )
{
  auto const maj = majority_table( 4 );
  EXPECT_EQ( prime_implicants( poly_function::from_modes( 4, maj, maj ), mode::first ).size(), 4u );

  auto const par = parity_table( 4 );
  auto const parity_primes = prime_implicants( poly_function::from_modes( 4, par, par ), mode::first );
  EXPECT_EQ( parity_primes.size(), 8u );
  for ( auto const& c : parity_primes )
    EXPECT_EQ( c.dimension(), 0u );

  poly_function one( 3 );
  for ( auto k = 0u; k < 8u; ++k )
    one[k] = { true, true };
  auto const full = prime_implicants( one, mode::first );
  ASSERT_EQ( full.size(), 1u );
  EXPECT_EQ( full[0].to_string(), "---" );

  EXPECT_TRUE( prime_implicants( poly_function( 3 ), mode::first ).empty() );
}
