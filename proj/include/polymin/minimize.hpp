// SPDX-License-Identifier: Apache-2.0

/*!
  \file minimize.hpp
  \brief Greedy cover of a polymorphic function by rule-matched terms

  The demand set holds every (point, mode) where the function is 1.
  Candidates are single groups and cube pairs drawn from maximal cubes
  of the function's per-mode and per-value on-sets, plus triples built
  around each demanded cell.  Selection maximises newly covered demand
  and breaks ties by fewer literals, then fewer polymorphic gates, then
  pool order.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cube.hpp"
#include "poly_function.hpp"
#include "rules.hpp"

namespace polymin
{

struct minimize_config
{
  uint32_t max_arity{ 10 };
  std::size_t max_candidates{ 50000 };
  bool enable_triples{ true };
  uint32_t exact_budget{ 15 };
};

struct cover
{
  std::vector<term_candidate> terms;
  poly_expr expr;
  cost_report cost;
};

struct demand_point
{
  assignment point;
  mode where;
};

/*! \brief Raised when the candidate pool cannot cover the remaining demand. */
class uncovered_demand_error : public error
{
public:
  explicit uncovered_demand_error( std::vector<demand_point> uncovered )
      : error( describe( uncovered ) ), uncovered_( std::move( uncovered ) )
  {
  }

  std::vector<demand_point> const& uncovered() const { return uncovered_; }
  char const* kind() const noexcept override { return "uncovered"; }

private:
  static std::string describe( std::vector<demand_point> const& u )
  {
    std::string s = "no candidate covers " + std::to_string( u.size() ) + " demand point(s):";
    for ( auto const& d : u )
      s += " " + d.point.to_string() + "@" + std::to_string( mode_number( d.where ) );
    return s;
  }

  std::vector<demand_point> uncovered_;
};

/*! \brief Bit set over (point, mode) pairs; id = 2 * index + (mode - 1). */
class demand_set
{
public:
  explicit demand_set( uint32_t num_vars ) : num_vars_( num_vars ), words_( ( ( std::size_t{ 2 } << num_vars ) + 63u ) / 64u ) {}

  static uint32_t id( uint32_t index, mode m ) { return 2u * index + ( mode_number( m ) - 1u ); }

  void insert( uint32_t index, mode m )
  {
    auto const i = id( index, m );
    words_[i >> 6u] |= uint64_t{ 1 } << ( i & 63u );
  }

  bool contains( uint32_t index, mode m ) const
  {
    auto const i = id( index, m );
    return ( words_[i >> 6u] >> ( i & 63u ) ) & 1u;
  }

  uint32_t size() const
  {
    uint32_t s = 0u;
    for ( auto w : words_ )
      s += static_cast<uint32_t>( std::popcount( w ) );
    return s;
  }

  bool empty() const
  {
    return std::all_of( words_.begin(), words_.end(), []( auto w ) { return w == 0u; } );
  }

  uint32_t overlap( demand_set const& other ) const
  {
    uint32_t s = 0u;
    for ( auto i = 0u; i < words_.size(); ++i )
      s += static_cast<uint32_t>( std::popcount( words_[i] & other.words_[i] ) );
    return s;
  }

  void subtract( demand_set const& other )
  {
    for ( auto i = 0u; i < words_.size(); ++i )
      words_[i] &= ~other.words_[i];
  }

  std::vector<demand_point> members() const
  {
    std::vector<demand_point> out;
    for ( auto k = 0u; k < ( 1u << num_vars_ ); ++k )
      for ( auto m : both_modes )
        if ( contains( k, m ) )
          out.push_back( { assignment( num_vars_, k ), m } );
    return out;
  }

  bool operator==( demand_set const& ) const = default;

private:
  uint32_t num_vars_;
  std::vector<uint64_t> words_;
};

/*! \brief All (x, m) with f_m(x) = 1. */
inline demand_set demand_of( poly_function const& f )
{
  demand_set d( f.num_vars() );
  for ( auto k = 0u; k < f.num_cells(); ++k )
    for ( auto m : both_modes )
      if ( f.value( k, m ) )
        d.insert( k, m );
  return d;
}

/*! \brief Demand a sound term satisfies: f's ones inside its region. */
inline demand_set coverage_of( poly_function const& f, term_candidate const& t )
{
  demand_set d( f.num_vars() );
  for ( auto const& c : t.cubes )
  {
    c.foreach_point( [&]( uint32_t k ) {
      for ( auto m : both_modes )
        if ( f.value( k, m ) )
          d.insert( k, m );
    } );
  }
  return d;
}

/*! \brief Candidates plus their coverage, deduplicated by canonical expression. */
class candidate_pool
{
public:
  explicit candidate_pool( poly_function const& f ) : f_( &f ) {}

  bool add( term_candidate t )
  {
    if ( !keys_.insert( canonical_key( t.expr ) ).second )
      return false;
    covers_.push_back( coverage_of( *f_, t ) );
    terms_.push_back( std::move( t ) );
    return true;
  }

  std::size_t size() const { return terms_.size(); }
  term_candidate const& term( std::size_t i ) const { return terms_[i]; }
  demand_set const& covers( std::size_t i ) const { return covers_[i]; }

private:
  poly_function const* f_;
  std::vector<term_candidate> terms_;
  std::vector<demand_set> covers_;
  std::unordered_set<std::string> keys_;
};

namespace detail
{

/*! \brief Maximal cubes of the per-mode, per-value and combined on-sets. */
inline std::vector<cube> seed_cubes( poly_function const& f )
{
  auto const n = f.num_vars();
  std::vector<std::vector<bool>> onsets( 7, std::vector<bool>( f.num_cells() ) );
  for ( auto k = 0u; k < f.num_cells(); ++k )
  {
    auto const v = f[k];
    onsets[0][k] = v.mode1;
    onsets[1][k] = v.mode2;
    onsets[2][k] = v.mode1 && v.mode2;
    onsets[3][k] = v.mode1 || v.mode2;
    onsets[4][k] = v.mode1 && !v.mode2;
    onsets[5][k] = !v.mode1 && v.mode2;
    onsets[6][k] = v.mode1 != v.mode2;
  }
  std::vector<cube> seeds;
  std::unordered_set<uint64_t> seen;
  for ( auto const& onset : onsets )
  {
    for ( auto const& c : implicants_of( n, onset ).primes )
    {
      if ( seen.insert( c.key() ).second )
        seeds.push_back( c );
    }
  }
  std::sort( seeds.begin(), seeds.end() );
  return seeds;
}

/* ordering key of a candidate for greedy selection, larger is better */
struct selection_key
{
  uint32_t newly;
  uint32_t literals;
  uint32_t poly_gates;
  std::size_t index;

  bool operator<( selection_key const& o ) const
  {
    if ( newly != o.newly )
      return newly < o.newly;
    if ( literals != o.literals )
      return literals > o.literals;
    if ( poly_gates != o.poly_gates )
      return poly_gates > o.poly_gates;
    return index > o.index;
  }
};

inline selection_key key_for( candidate_pool const& pool, std::size_t i, demand_set const& remaining )
{
  auto const& t = pool.term( i );
  return { pool.covers( i ).overlap( remaining ), t.cost.literal_count, t.cost.poly_gate_count, i };
}

} // namespace detail

/*! \brief Singles over maximal 1/1 cubes and pairs over the seed cubes. */
inline void add_single_and_pair_candidates( candidate_pool& pool, poly_function const& f, minimize_config const& cfg )
{
  auto const seeds = detail::seed_cubes( f );
  for ( auto const& c : seeds )
  {
    if ( auto t = match_single( f, c ) )
      pool.add( std::move( *t ) );
  }
  for ( auto i = 0u; i < seeds.size() && pool.size() < cfg.max_candidates; ++i )
  {
    for ( auto j = i + 1u; j < seeds.size() && pool.size() < cfg.max_candidates; ++j )
    {
      for ( auto& t : match_pair( f, seeds[i], seeds[j] ) )
      {
        if ( pool.size() >= cfg.max_candidates )
          break;
        pool.add( std::move( t ) );
      }
    }
  }
}

/*! \brief Triples around each uncovered cell.

  For a cell x the cubes considered are the seeds through x, the point
  x, its neighbours, and the edges from x to each neighbour.  The triple
  (edge {x,y}, {x}, {y}) realizes any value pair on {x,y}, so every cell
  gets at least that candidate even after the pool cap is reached.
*/
inline void add_triple_candidates( candidate_pool& pool, poly_function const& f, std::vector<uint32_t> const& cells, minimize_config const& cfg )
{
  auto const n = f.num_vars();
  auto const full = ( 1u << n ) - 1u;
  auto const seeds = detail::seed_cubes( f );
  auto const budget = pool.size() + cfg.max_candidates;

  auto add_matches = [&]( cube const& a, cube const& b, cube const& c, uint32_t x ) {
    for ( auto& t : match_triple( f, a, b, c ) )
    {
      if ( t.in_region( x ) )
        pool.add( std::move( t ) );
    }
  };

  for ( auto x : cells )
  {
    auto const neighbour = x ^ 1u;
    add_matches( cube( n, full & ~1u, x & ~1u ), cube::point( n, x ), cube::point( n, neighbour ), x );
    if ( pool.size() >= budget )
      continue;

    std::vector<cube> around;
    for ( auto const& c : seeds )
      if ( c.contains( x ) )
        around.push_back( c );
    around.push_back( cube::point( n, x ) );
    for ( auto b = 0u; b < n; ++b )
    {
      auto const bit = 1u << b;
      around.push_back( cube::point( n, x ^ bit ) );
      around.push_back( cube( n, full & ~bit, x & ~bit ) );
    }
    std::sort( around.begin(), around.end() );
    around.erase( std::unique( around.begin(), around.end() ), around.end() );

    for ( auto i = 0u; i < around.size() && pool.size() < budget; ++i )
      for ( auto j = i + 1u; j < around.size() && pool.size() < budget; ++j )
        for ( auto k = j + 1u; k < around.size() && pool.size() < budget; ++k )
        {
          /* each cube once as the outer operand; the other nestings follow by commutativity */
          add_matches( around[i], around[j], around[k], x );
          add_matches( around[i], around[k], around[j], x );
          add_matches( around[j], around[k], around[i], x );
        }
  }
}

/*! \brief Cells with at least one uncovered mode, ascending. */
inline std::vector<uint32_t> uncovered_cells( demand_set const& remaining, uint32_t num_vars )
{
  std::vector<uint32_t> cells;
  for ( auto k = 0u; k < ( 1u << num_vars ); ++k )
    if ( remaining.contains( k, mode::first ) || remaining.contains( k, mode::second ) )
      cells.push_back( k );
  return cells;
}

/*! \brief Best `count` pool indices for the remaining demand, best first; zero-gain candidates excluded. */
inline std::vector<std::size_t> rank_candidates( candidate_pool const& pool, demand_set const& remaining, std::size_t count )
{
  std::vector<detail::selection_key> keys;
  for ( auto i = 0u; i < pool.size(); ++i )
  {
    auto const key = detail::key_for( pool, i, remaining );
    if ( key.newly > 0u )
      keys.push_back( key );
  }
  std::sort( keys.begin(), keys.end(), []( auto const& a, auto const& b ) { return b < a; } );
  std::vector<std::size_t> out;
  for ( auto i = 0u; i < keys.size() && i < count; ++i )
    out.push_back( keys[i].index );
  return out;
}

/*! \brief OR/OR sum of term expressions, 0/0 when empty. */
inline poly_expr sum_of_terms( std::vector<term_candidate> const& terms )
{
  if ( terms.empty() )
    return poly_expr::constant( {} );
  auto e = terms.front().expr;
  for ( auto i = 1u; i < terms.size(); ++i )
    e = poly_expr::gate( or_gate, e, terms[i].expr );
  return e;
}

inline cover minimize( poly_function const& f, minimize_config const& cfg = {} )
{
  if ( f.num_vars() > cfg.max_arity )
  {
    throw arity_error( "arity " + std::to_string( f.num_vars() ) + " exceeds the configured limit " + std::to_string( cfg.max_arity ) );
  }

  auto remaining = demand_of( f );
  candidate_pool pool( f );
  cover result;
  if ( remaining.empty() )
  {
    result.expr = poly_expr::constant( {} );
    result.cost = cost_of( result.expr );
    return result;
  }

  add_single_and_pair_candidates( pool, f, cfg );
  if ( cfg.enable_triples )
    add_triple_candidates( pool, f, uncovered_cells( remaining, f.num_vars() ), cfg );

  std::priority_queue<detail::selection_key> queue;
  for ( auto i = 0u; i < pool.size(); ++i )
    queue.push( detail::key_for( pool, i, remaining ) );

  while ( !remaining.empty() )
  {
    if ( queue.empty() )
      throw uncovered_demand_error( remaining.members() );

    auto top = queue.top();
    queue.pop();
    auto const fresh = detail::key_for( pool, top.index, remaining );
    if ( fresh.newly == 0u )
      continue;
    if ( !queue.empty() && fresh < queue.top() )
    {
      queue.push( fresh );
      continue;
    }

    auto const before = remaining.size();
    remaining.subtract( pool.covers( fresh.index ) );
    if ( remaining.size() >= before )
      throw verification_error( "internal: greedy step did not shrink the demand set" );
    result.terms.push_back( pool.term( fresh.index ) );
  }

  result.expr = sum_of_terms( result.terms );
  result.cost = cost_of( result.expr );
  if ( auto const diff = first_mismatch( result.expr, f ) )
  {
    throw verification_error( "internal: cover differs from the function at " + diff->point.to_string() + " in mode " +
                              std::to_string( mode_number( diff->where ) ) );
  }
  return result;
}

} // namespace polymin
