// SPDX-License-Identifier: Apache-2.0

/*!
  \file workbench.hpp
  \brief Session service for guided K-map simplification

  A session holds one function and the list of accepted terms.  The
  uncovered demand is always recomputed from the accepted terms, and a
  session reports completion only after the summed expression passes
  the equivalence check.

  Candidates returned by try-group (or hint) get single-use ids; they
  form the session's current offer and are the only ones accept takes.
  Any accept or undo clears the offer.  The offer is bookkeeping and not
  part of the coverage state reported by `state_digest`.

  Transport-independent: `service::handle` maps (method, path, body) to
  a status code and JSON body; workbench_server.hpp binds it to HTTP.
*/

#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "benchmarks.hpp"
#include "expression_io.hpp"
#include "kmap.hpp"
#include "minimize.hpp"
#include "ppla.hpp"
#include "rules.hpp"
#include "serialize.hpp"

namespace polymin::workbench
{

using clock = std::chrono::steady_clock;

struct response
{
  int status{ 200 };
  nlohmann::json body;
};

inline response error_response( int status, std::string const& code, std::string const& message )
{
  return { status, { { "schema", json_schema_version }, { "error", { { "code", code }, { "message", message } } } } };
}

class session
{
public:
  session( poly_function f, std::vector<std::string> mode_names ) : function_( std::move( f ) ), mode_names_( std::move( mode_names ) ) {}

  poly_function const& function() const { return function_; }
  std::vector<std::string> const& mode_names() const { return mode_names_; }
  std::vector<term_candidate> const& accepted() const { return accepted_; }
  std::size_t history_depth() const { return history_.size(); }

  demand_set remaining() const
  {
    auto d = demand_of( function_ );
    for ( auto const& t : accepted_ )
      d.subtract( coverage_of( function_, t ) );
    return d;
  }

  poly_expr expression() const { return sum_of_terms( accepted_ ); }

  bool complete() const { return remaining().empty() && equivalent( expression(), function_ ); }

  /*! \brief Hash of the coverage state: accepted terms, history and remaining demand. */
  std::size_t state_digest() const
  {
    std::string s;
    for ( auto const& t : accepted_ )
      s += canonical_key( t.expr ) + ";";
    s += "|" + std::to_string( history_.size() ) + "|";
    for ( auto const& d : remaining().members() )
      s += d.point.to_string() + "@" + std::to_string( mode_number( d.where ) ) + ",";
    return std::hash<std::string>{}( s );
  }

  void set_offer( std::map<std::string, term_candidate> offer ) { offer_ = std::move( offer ); }

  std::optional<term_candidate> take_offer( std::string const& id )
  {
    auto it = offer_.find( id );
    if ( it == offer_.end() )
      return std::nullopt;
    auto t = std::move( it->second );
    offer_.clear();
    return t;
  }

  void accept( term_candidate t )
  {
    history_.push_back( accepted_ );
    accepted_.push_back( std::move( t ) );
    offer_.clear();
  }

  bool undo()
  {
    if ( history_.empty() )
      return false;
    accepted_ = std::move( history_.back() );
    history_.pop_back();
    offer_.clear();
    return true;
  }

  /*! \brief Pool for hints; built on first use, the function never changes. */
  candidate_pool const& hint_pool()
  {
    if ( !pool_ )
    {
      pool_ = std::make_unique<candidate_pool>( function_ );
      minimize_config cfg;
      add_single_and_pair_candidates( *pool_, function_, cfg );
      add_triple_candidates( *pool_, function_, uncovered_cells( demand_of( function_ ), function_.num_vars() ), cfg );
    }
    return *pool_;
  }

private:
  poly_function function_;
  std::vector<std::string> mode_names_;
  std::vector<term_candidate> accepted_;
  std::vector<std::vector<term_candidate>> history_;
  std::map<std::string, term_candidate> offer_;
  std::unique_ptr<candidate_pool> pool_;
};

class service
{
public:
  explicit service( std::chrono::seconds ttl = std::chrono::hours( 1 ) ) : ttl_( ttl ), rng_( std::random_device{}() ) {}

  std::chrono::seconds ttl() const { return ttl_; }

  response handle( std::string_view method, std::string_view path, std::string_view body )
  {
    evict_expired( clock::now() );

    auto const parts = split_path( path );
    if ( parts.empty() || parts[0] != "sessions" || parts.size() > 3u )
      return error_response( 404, "not_found", "no route for " + std::string( path ) );

    if ( parts.size() == 1u )
    {
      if ( method != "POST" )
        return error_response( 405, "method_not_allowed", "use POST /sessions" );
      auto const json = parse_body( body );
      if ( !json )
        return error_response( 400, "bad_json", "request body is not a JSON object" );
      return create_session( *json );
    }

    auto const& id = parts[1];
    if ( parts.size() == 2u )
    {
      if ( method != "GET" )
        return error_response( 405, "method_not_allowed", "use GET /sessions/{id}" );
      return with_session( id, false, [&]( session& s ) { return response{ 200, state_json( s ) }; } );
    }

    auto const& verb = parts[2];
    if ( verb == "hint" )
    {
      if ( method != "GET" )
        return error_response( 405, "method_not_allowed", "use GET for hint" );
      return with_session( id, true, [&]( session& s ) { return hint( s ); } );
    }
    if ( verb != "try-group" && verb != "accept" && verb != "undo" )
      return error_response( 404, "not_found", "unknown action " + verb );
    if ( method != "POST" )
      return error_response( 405, "method_not_allowed", "use POST for " + verb );
    if ( verb == "undo" )
      return with_session( id, true, [&]( session& s ) { return undo( s ); } );

    auto const json = parse_body( body );
    if ( !json )
      return error_response( 400, "bad_json", "request body is not a JSON object" );
    if ( verb == "try-group" )
      return with_session( id, true, [&]( session& s ) { return try_group( s, *json ); } );
    return with_session( id, true, [&]( session& s ) { return accept( s, *json ); } );
  }

  /*! \brief Drops sessions idle for longer than the TTL; returns how many. */
  std::size_t evict_expired( clock::time_point now )
  {
    std::lock_guard lock( store_mutex_ );
    std::size_t removed = 0u;
    for ( auto it = sessions_.begin(); it != sessions_.end(); )
    {
      if ( now - it->second->last_used.load() > ttl_ )
      {
        it = sessions_.erase( it );
        ++removed;
      }
      else
        ++it;
    }
    return removed;
  }

  std::size_t session_count() const
  {
    std::lock_guard lock( store_mutex_ );
    return sessions_.size();
  }

private:
  struct slot
  {
    explicit slot( session s ) : state( std::move( s ) ), last_used( clock::now() ) {}

    std::shared_mutex mutex;
    session state;
    std::atomic<clock::time_point> last_used;
  };

  static std::vector<std::string> split_path( std::string_view path )
  {
    std::vector<std::string> parts;
    if ( auto const q = path.find( '?' ); q != std::string_view::npos )
      path = path.substr( 0u, q );
    std::size_t start = 0u;
    while ( start < path.size() )
    {
      auto end = path.find( '/', start );
      if ( end == std::string_view::npos )
        end = path.size();
      if ( end > start )
        parts.emplace_back( path.substr( start, end - start ) );
      start = end + 1u;
    }
    return parts;
  }

  static std::optional<nlohmann::json> parse_body( std::string_view body )
  {
    auto json = nlohmann::json::parse( body, nullptr, false );
    if ( json.is_discarded() || !json.is_object() )
      return std::nullopt;
    return json;
  }

  std::string random_hex( uint32_t words )
  {
    std::lock_guard lock( rng_mutex_ );
    std::string s;
    for ( auto i = 0u; i < words; ++i )
    {
      char buf[17];
      std::snprintf( buf, sizeof( buf ), "%016llx", static_cast<unsigned long long>( rng_() ) );
      s += buf;
    }
    return s;
  }

  template<typename Fn>
  response with_session( std::string const& id, bool exclusive, Fn&& fn )
  {
    std::shared_ptr<slot> s;
    {
      std::lock_guard lock( store_mutex_ );
      auto it = sessions_.find( id );
      if ( it == sessions_.end() )
        return error_response( 404, "unknown_session", "no session " + id );
      s = it->second;
    }
    s->last_used = clock::now();
    try
    {
      if ( exclusive )
      {
        std::unique_lock lock( s->mutex );
        return fn( s->state );
      }
      std::shared_lock lock( s->mutex );
      return fn( s->state );
    }
    catch ( polymin::error const& e )
    {
      return error_response( 400, e.kind(), e.what() );
    }
  }

  nlohmann::json state_json( session const& s ) const
  {
    nlohmann::json remaining = nlohmann::json::array();
    for ( auto const& d : s.remaining().members() )
      remaining.push_back( { { "assignment", d.point.to_string() }, { "mode", mode_number( d.where ) } } );
    nlohmann::json accepted = nlohmann::json::array();
    for ( auto const& t : s.accepted() )
      accepted.push_back( to_json( t ) );
    return { { "schema", json_schema_version },
             { "demand_remaining", remaining },
             { "accepted", accepted },
             { "expr", print_expr( s.expression() ) },
             { "complete", s.complete() },
             { "state_digest", std::to_string( s.state_digest() ) } };
  }

  response create_session( nlohmann::json const& body )
  {
    std::optional<session> created;
    try
    {
      if ( body.contains( "ppla" ) && body["ppla"].is_string() )
      {
        auto const doc = parse_ppla( body["ppla"].get<std::string>() );
        created.emplace( doc.to_function(), doc.mode_names );
      }
      else if ( body.contains( "benchmark" ) && body["benchmark"].is_string() )
      {
        auto b = gen_benchmark( body["benchmark"].get<std::string>() );
        created.emplace( std::move( b.function ), std::move( b.mode_names ) );
      }
      else
      {
        return error_response( 400, "bad_request", "expected a 'ppla' or 'benchmark' string field" );
      }
    }
    catch ( polymin::error const& e )
    {
      return error_response( 400, e.kind(), e.what() );
    }

    auto const n = created->function().num_vars();
    if ( n < 2u || n > 6u )
      return error_response( 400, "arity", "the workbench handles 2 to 6 variables" );

    auto id = random_hex( 2u );
    auto s = std::make_shared<slot>( std::move( *created ) );
    auto payload = state_json( s->state );
    payload["session_id"] = id;
    payload["n"] = n;
    payload["mode_names"] = s->state.mode_names();
    payload["cells"] = cells_json( s->state.function() );
    payload["kmap"] = to_json( make_kmap_layout( n ) );
    {
      std::lock_guard lock( store_mutex_ );
      sessions_.emplace( id, std::move( s ) );
    }
    return { 201, payload };
  }

  nlohmann::json offer( session& s, std::vector<term_candidate> candidates )
  {
    auto const remaining = s.remaining();
    std::map<std::string, term_candidate> table;
    nlohmann::json list = nlohmann::json::array();
    for ( auto& t : candidates )
    {
      auto id = random_hex( 1u );
      auto j = to_json( t );
      j["id"] = id;
      j["newly_covered"] = coverage_of( s.function(), t ).overlap( remaining );
      list.push_back( std::move( j ) );
      table.emplace( std::move( id ), std::move( t ) );
    }
    s.set_offer( std::move( table ) );
    return { { "schema", json_schema_version }, { "candidates", list } };
  }

  response try_group( session& s, nlohmann::json const& body )
  {
    if ( !body.contains( "cubes" ) || !body["cubes"].is_array() || body["cubes"].empty() || body["cubes"].size() > 3u )
      return error_response( 400, "bad_request", "'cubes' must list 1 to 3 cube strings" );
    std::vector<cube> cubes;
    for ( auto const& c : body["cubes"] )
    {
      if ( !c.is_string() )
        return error_response( 400, "bad_cube", "cubes must be strings over {0,1,-}" );
      auto const parsed = cube::parse( c.get<std::string>() );
      if ( parsed.num_vars() != s.function().num_vars() )
        return error_response( 400, "bad_cube", "cube " + c.get<std::string>() + " does not match the session arity" );
      cubes.push_back( parsed );
    }

    std::vector<term_candidate> found;
    auto const& f = s.function();
    if ( cubes.size() == 1u )
    {
      if ( auto t = match_single( f, cubes[0] ) )
        found.push_back( std::move( *t ) );
    }
    else if ( cubes.size() == 2u )
      found = match_pair( f, cubes[0], cubes[1] );
    else
      found = match_triple( f, cubes[0], cubes[1], cubes[2] );
    return { 200, offer( s, std::move( found ) ) };
  }

  response accept( session& s, nlohmann::json const& body )
  {
    if ( !body.contains( "candidate_id" ) || !body["candidate_id"].is_string() )
      return error_response( 400, "bad_request", "expected a 'candidate_id' string" );
    auto t = s.take_offer( body["candidate_id"].get<std::string>() );
    if ( !t )
      return error_response( 409, "stale_candidate", "candidate id is not part of the latest offer" );
    s.accept( std::move( *t ) );
    if ( s.remaining().empty() && !s.complete() )
      return error_response( 500, "internal", "demand covered but the expression does not verify" );
    return { 200, state_json( s ) };
  }

  response undo( session& s )
  {
    if ( !s.undo() )
      return error_response( 409, "nothing_to_undo", "history is empty" );
    return { 200, state_json( s ) };
  }

  response hint( session& s )
  {
    auto const& pool = s.hint_pool();
    std::vector<term_candidate> top;
    for ( auto i : rank_candidates( pool, s.remaining(), 3u ) )
      top.push_back( pool.term( i ) );
    return { 200, offer( s, std::move( top ) ) };
  }

  std::chrono::seconds ttl_;
  mutable std::mutex store_mutex_;
  std::unordered_map<std::string, std::shared_ptr<slot>> sessions_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

} // namespace polymin::workbench
