// SPDX-License-Identifier: Apache-2.0

#include <thread>

#include <gtest/gtest.h>

#include <polymin/polymin.hpp>
#include <polymin/workbench_server.hpp>

using namespace polymin;
using nlohmann::json;

namespace
{

std::string create( workbench::service& svc, std::string const& benchmark = "parity4/majority4" )
{
  auto const r = svc.handle( "POST", "/sessions", json{ { "benchmark", benchmark } }.dump() );
  EXPECT_EQ( r.status, 201 ) << r.body.dump();
  return r.body.value( "session_id", "" );
}

json cubes_of( term_candidate const& t )
{
  json list = json::array();
  for ( auto const& c : t.cubes )
    list.push_back( c.to_string() );
  return list;
}

/* submits the grouping and accepts the candidate printing as `expr` */
workbench::response submit( workbench::service& svc, std::string const& id, term_candidate const& t )
{
  auto const offered = svc.handle( "POST", "/sessions/" + id + "/try-group", json{ { "cubes", cubes_of( t ) } }.dump() );
  EXPECT_EQ( offered.status, 200 );
  for ( auto const& c : offered.body["candidates"] )
  {
    if ( c["expr"] == print_expr( t.expr ) )
      return svc.handle( "POST", "/sessions/" + id + "/accept", json{ { "candidate_id", c["id"] } }.dump() );
  }
  ADD_FAILURE() << "grouping not offered: " << print_expr( t.expr );
  return { 500, {} };
}

} // namespace

TEST( Workbench, CreateReportsTableLayoutAndDemand )
{
  workbench::service svc;
  auto const r = svc.handle( "POST", "/sessions", json{ { "benchmark", "parity4/majority4" } }.dump() );
  ASSERT_EQ( r.status, 201 );
  EXPECT_EQ( r.body["n"], 4 );
  EXPECT_EQ( r.body["cells"].size(), 16u );
  EXPECT_EQ( r.body["cells"][7], "1/1" );
  EXPECT_EQ( r.body["kmap"]["grid"].size(), 4u );
  EXPECT_EQ( r.body["complete"], false );
  EXPECT_EQ( r.body["demand_remaining"].size(), demand_of( gen_benchmark( "parity4/majority4" ).function ).size() );
  EXPECT_EQ( r.body["mode_names"], json::array( { "parity4", "majority4" } ) );
}

TEST( Workbench, CreateFromPplaAndArityLimits )
{
  workbench::service svc;
  auto const ok = svc.handle( "POST", "/sessions", json{ { "ppla", ".i 2\n.m 2\n11 1/0\n.e\n" } }.dump() );
  EXPECT_EQ( ok.status, 201 );
  auto const small = svc.handle( "POST", "/sessions", json{ { "ppla", ".i 1\n.m 2\n1 1/0\n.e\n" } }.dump() );
  EXPECT_EQ( small.status, 400 );
  auto const big = svc.handle( "POST", "/sessions", json{ { "benchmark", "parity7/majority7" } }.dump() );
  EXPECT_EQ( big.status, 400 );
  EXPECT_EQ( svc.handle( "POST", "/sessions", "not json" ).status, 400 );
  EXPECT_EQ( svc.handle( "POST", "/sessions", json{ { "ppla", ".i 2\n" } }.dump() ).status, 400 );
}

TEST( Workbench, RoutingErrors )
{
  workbench::service svc;
  auto const id = create( svc );
  EXPECT_EQ( svc.handle( "GET", "/nope", "" ).status, 404 );
  EXPECT_EQ( svc.handle( "GET", "/sessions/unknown", "" ).status, 404 );
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/frobnicate", "{}" ).status, 404 );
  EXPECT_EQ( svc.handle( "GET", "/sessions", "" ).status, 405 );
  EXPECT_EQ( svc.handle( "GET", "/sessions/" + id + "/accept", "" ).status, 405 );
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/try-group", "{\"cubes\": []}" ).status, 400 );
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/try-group", "{\"cubes\": [\"1-\"]}" ).status, 400 );
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/try-group", "{\"cubes\": [\"1x--\"]}" ).status, 400 );
}

TEST( Workbench, TryGroupLeavesCoverageStateUntouched )
{
  workbench::service svc;
  auto const id = create( svc );
  auto const before = svc.handle( "GET", "/sessions/" + id, "" ).body;
  auto const offered = svc.handle( "POST", "/sessions/" + id + "/try-group", json{ { "cubes", { "0111" } } }.dump() );
  ASSERT_EQ( offered.status, 200 );
  ASSERT_EQ( offered.body["candidates"].size(), 1u );
  EXPECT_EQ( offered.body["candidates"][0]["expr"], "~x1 * x2 * x3 * x4" );
  EXPECT_EQ( offered.body["candidates"][0]["newly_covered"], 2 );
  auto const after = svc.handle( "GET", "/sessions/" + id, "" ).body;
  EXPECT_EQ( before["state_digest"], after["state_digest"] );

  auto const none = svc.handle( "POST", "/sessions/" + id + "/try-group", json{ { "cubes", { "0001" } } }.dump() );
  EXPECT_TRUE( none.body["candidates"].empty() );
}

TEST( Workbench, AcceptUndoAndStaleIds )
{
  workbench::service svc;
  auto const id = create( svc );
  auto const initial = svc.handle( "GET", "/sessions/" + id, "" ).body;
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/undo", "" ).status, 409 );

  auto const offered = svc.handle( "POST", "/sessions/" + id + "/try-group", json{ { "cubes", { "0111" } } }.dump() );
  auto const cid = offered.body["candidates"][0]["id"];
  auto const accepted = svc.handle( "POST", "/sessions/" + id + "/accept", json{ { "candidate_id", cid } }.dump() );
  ASSERT_EQ( accepted.status, 200 );
  EXPECT_EQ( accepted.body["accepted"].size(), 1u );
  EXPECT_EQ( accepted.body["demand_remaining"].size(), initial["demand_remaining"].size() - 2u );

  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/accept", json{ { "candidate_id", cid } }.dump() ).status, 409 );
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/accept", json{ { "candidate_id", "deadbeef" } }.dump() ).status, 409 );

  auto const undone = svc.handle( "POST", "/sessions/" + id + "/undo", "" );
  ASSERT_EQ( undone.status, 200 );
  EXPECT_EQ( undone.body["demand_remaining"], initial["demand_remaining"] );
  EXPECT_EQ( undone.body["state_digest"], initial["state_digest"] );
  EXPECT_EQ( svc.handle( "POST", "/sessions/" + id + "/undo", "" ).status, 409 );
}

TEST( Workbench, MinimizerGroupingsReachCompletion )
{
  workbench::service svc;
  auto const id = create( svc );
  auto const cover = minimize( gen_benchmark( "parity4/majority4" ).function );
  json last;
  for ( auto const& t : cover.terms )
  {
    auto const r = submit( svc, id, t );
    ASSERT_EQ( r.status, 200 );
    last = r.body;
  }
  EXPECT_EQ( last["complete"], true );
  EXPECT_TRUE( last["demand_remaining"].empty() );
  EXPECT_TRUE( equivalent( parse_expr( last["expr"].get<std::string>() ), gen_benchmark( "parity4/majority4" ).function ) );
}

TEST( Workbench, HintsAreSoundAndAcceptable )
{
  workbench::service svc;
  auto const id = create( svc, "multiplier2x3:2/sortingnet5:2" );
  auto const f = gen_benchmark( "multiplier2x3:2/sortingnet5:2" ).function;
  for ( auto step = 0; step < 64; ++step )
  {
    auto const hint = svc.handle( "GET", "/sessions/" + id + "/hint", "" );
    ASSERT_EQ( hint.status, 200 );
    auto const& list = hint.body["candidates"];
    ASSERT_FALSE( list.empty() );
    ASSERT_LE( list.size(), 3u );
    for ( auto const& c : list )
    {
      auto const e = parse_expr( c["expr"].get<std::string>() );
      auto const t = table_of( e, f.num_vars() );
      for ( auto k = 0u; k < f.num_cells(); ++k )
      {
        ASSERT_TRUE( !t[k].mode1 || f[k].mode1 );
        ASSERT_TRUE( !t[k].mode2 || f[k].mode2 );
      }
    }
    auto const r = svc.handle( "POST", "/sessions/" + id + "/accept", json{ { "candidate_id", list[0]["id"] } }.dump() );
    ASSERT_EQ( r.status, 200 );
    if ( r.body["complete"] == true )
      return;
  }
  FAIL() << "hints did not complete the cover";
}

TEST( Workbench, SessionsAreIsolatedUnderConcurrency )
{
  workbench::service svc;
  std::vector<std::string> ids;
  for ( auto i = 0; i < 8; ++i )
    ids.push_back( create( svc ) );

  std::vector<std::thread> workers;
  std::vector<int> accepted( ids.size(), 0 );
  for ( auto i = 0u; i < ids.size(); ++i )
  {
    workers.emplace_back( [&, i] {
      for ( auto round = 0; round < 20; ++round )
      {
        auto const offered = svc.handle( "POST", "/sessions/" + ids[i] + "/try-group", json{ { "cubes", { "0111" } } }.dump() );
        auto const cid = offered.body["candidates"][0]["id"];
        if ( svc.handle( "POST", "/sessions/" + ids[i] + "/accept", json{ { "candidate_id", cid } }.dump() ).status == 200 )
          ++accepted[i];
        if ( i % 2u == 0u && svc.handle( "POST", "/sessions/" + ids[i] + "/undo", "" ).status == 200 )
          --accepted[i];
      }
    } );
  }
  for ( auto& w : workers )
    w.join();

  for ( auto i = 0u; i < ids.size(); ++i )
  {
    auto const state = svc.handle( "GET", "/sessions/" + ids[i], "" ).body;
    EXPECT_EQ( state["accepted"].size(), static_cast<std::size_t>( accepted[i] ) );
    EXPECT_EQ( accepted[i], i % 2u == 0u ? 0 : 20 );
  }
}

TEST( Workbench, IdleSessionsExpire )
{
  workbench::service svc( std::chrono::seconds( 60 ) );
  create( svc );
  create( svc );
  EXPECT_EQ( svc.session_count(), 2u );
  EXPECT_EQ( svc.evict_expired( workbench::clock::now() ), 0u );
  EXPECT_EQ( svc.evict_expired( workbench::clock::now() + std::chrono::minutes( 2 ) ), 2u );
  EXPECT_EQ( svc.session_count(), 0u );
}

TEST( Workbench, HttpRoundTrip )
{
  workbench::service svc;
  httplib::Server server;
  workbench::bind( server, svc, "http://localhost:5173" );
  auto const port = server.bind_to_any_port( "127.0.0.1" );
  ASSERT_GT( port, 0 );
  std::thread runner( [&] { server.listen_after_bind(); } );
  server.wait_until_ready();

  httplib::Client client( "127.0.0.1", port );
  auto created = client.Post( "/sessions", json{ { "benchmark", "parity4/majority4" } }.dump(), "application/json" );
  ASSERT_TRUE( created );
  EXPECT_EQ( created->status, 201 );
  EXPECT_EQ( created->get_header_value( "Access-Control-Allow-Origin" ), "http://localhost:5173" );
  auto const id = json::parse( created->body )["session_id"].get<std::string>();

  auto state = client.Get( "/sessions/" + id );
  ASSERT_TRUE( state );
  EXPECT_EQ( state->status, 200 );
  EXPECT_EQ( json::parse( state->body )["complete"], false );

  auto missing = client.Get( "/sessions/none" );
  ASSERT_TRUE( missing );
  EXPECT_EQ( missing->status, 404 );

  server.stop();
  runner.join();
}
