// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <polymin/polymin.hpp>
#include <polymin/workbench_server.hpp>

namespace
{

using namespace polymin;

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

/* one machine-parsable line on stderr */
int fail( std::string const& kind, std::string message, int code )
{
  for ( auto& c : message )
    if ( c == '\n' || c == '\r' )
      c = ' ';
  std::cerr << "error: " << kind << ": " << message << "\n";
  return code;
}

std::string read_input( std::string const& path )
{
  if ( path.empty() || path == "-" )
    return { std::istreambuf_iterator<char>( std::cin ), {} };
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw parse_error( "cannot open " + path );
  return { std::istreambuf_iterator<char>( in ), {} };
}

poly_function load_function( std::string const& path ) { return parse_ppla( read_input( path ) ).to_function(); }

std::string cost_line( cost_report const& c )
{
  std::ostringstream s;
  s << "literals=" << c.literal_count << " gates=" << c.gate_count << " poly_gates=" << c.poly_gate_count << " depth=" << c.depth
    << " nodes=" << c.node_count;
  return s.str();
}

std::string cubes_text( term_candidate const& t )
{
  std::string s;
  for ( auto const& c : t.cubes )
    s += ( s.empty() ? "" : " " ) + c.to_string();
  return s;
}

int run_minimize( std::string const& path, minimize_config const& cfg, std::string const& format )
{
  auto const f = load_function( path );
  auto const result = minimize( f, cfg );
  bool const verified = equivalent( result.expr, f );

  if ( format == "json" )
  {
    auto j = to_json( result );
    j["verified"] = verified;
    std::cout << j.dump( 2 ) << "\n";
  }
  else
  {
    std::cout << "expr: " << print_expr( result.expr ) << "\n";
    std::cout << "cost: " << cost_line( result.cost ) << "\n";
    std::cout << "trace:\n";
    for ( auto i = 0u; i < result.terms.size(); ++i )
    {
      auto const& t = result.terms[i];
      std::cout << "  " << i + 1u << ". " << to_string( t.shape ) << " " << tag_rule( t ).to_string() << " [" << cubes_text( t ) << "] "
                << print_expr( t.expr ) << "\n";
    }
    std::cout << "verified: " << ( verified ? "yes" : "no" ) << "\n";
  }
  if ( !verified )
    return fail( "verification", "minimized expression is not equivalent", exit_mismatch );
  return exit_ok;
}

int run_verify( std::string const& path, std::string const& expr_arg )
{
  auto const f = load_function( path );
  std::string text = expr_arg;
  if ( std::ifstream probe( expr_arg ); probe )
    text = read_input( expr_arg );
  auto const e = parse_expr( text );
  if ( auto const diff = first_mismatch( e, f ) )
  {
    std::cout << "mismatch: assignment=" << diff->point.to_string() << " mode=" << mode_number( diff->where )
              << " expected=" << diff->expected << " got=" << diff->got << "\n";
    return exit_mismatch;
  }
  std::cout << "equivalent\n";
  return exit_ok;
}

int run_eval( std::string const& expr_text, std::string const& bits, std::string const& which )
{
  auto const e = parse_expr( expr_text );
  auto const a = assignment::from_bits( bits );
  if ( which == "1" )
    std::cout << eval( e, a, mode::first ) << "\n";
  else if ( which == "2" )
    std::cout << eval( e, a, mode::second ) << "\n";
  else
    std::cout << poly_value{ eval( e, a, mode::first ), eval( e, a, mode::second ) }.to_string() << "\n";
  return exit_ok;
}

int run_gen( std::string const& spec, std::string const& out_path )
{
  auto const b = gen_benchmark( spec );
  auto const text = serialize_ppla( ppla_document::from_function( b.function, b.mode_names ) );
  if ( out_path.empty() || out_path == "-" )
  {
    std::cout << text;
    return exit_ok;
  }
  std::ofstream out( out_path, std::ios::binary );
  if ( !out || !( out << text ) )
    return fail( "io", "cannot write " + out_path, exit_usage );
  return exit_ok;
}

int run_exact( std::string const& path, uint32_t budget )
{
  auto const f = load_function( path );
  auto const e = exact_search( f, budget );
  if ( !e )
  {
    std::cout << "budget exhausted\n";
    return exit_mismatch;
  }
  std::cout << "expr: " << print_expr( *e ) << "\n";
  std::cout << "cost: " << cost_line( cost_of( *e ) ) << "\n";
  return exit_ok;
}

int run_serve( std::string const& host, int port, std::string const& origin )
{
  std::chrono::seconds ttl( 3600 );
  if ( auto const* env = std::getenv( "SESSION_TTL_SECS" ) )
    ttl = std::chrono::seconds( std::stoll( env ) );
  workbench::service svc( ttl );
  std::cerr << "workbench listening on " << host << ":" << port << "\n";
  if ( !workbench::serve( svc, host, port, origin ) )
    return fail( "io", "cannot listen on " + host + ":" + std::to_string( port ), exit_usage );
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Polymorphic Boolean function toolkit" };
  app.require_subcommand( 1 );

  std::string input, expr_arg, bits, which = "both", format = "expr", spec, out_path, host = "0.0.0.0", origin = "*";
  minimize_config cfg;
  bool no_triples = false;
  uint32_t budget = cfg.exact_budget;
  int port = 8080;
  if ( auto const* env = std::getenv( "PORT" ) )
    port = std::atoi( env );

  auto* minimize_cmd = app.add_subcommand( "minimize", "simplify a .ppla function and verify the result" );
  minimize_cmd->add_option( "input", input, ".ppla file, '-' or omitted for stdin" );
  minimize_cmd->add_flag( "--no-triples", no_triples, "only single and pair candidates" );
  minimize_cmd->add_option( "--max-candidates", cfg.max_candidates, "candidate pool cap" );
  minimize_cmd->add_option( "--max-arity", cfg.max_arity, "largest accepted arity" );
  minimize_cmd->add_option( "--format", format, "expr or json" )->check( CLI::IsMember( { "expr", "json" } ) );

  auto* verify_cmd = app.add_subcommand( "verify", "check an expression against a .ppla function" );
  verify_cmd->add_option( "input", input, ".ppla file" )->required();
  verify_cmd->add_option( "expr", expr_arg, "expression text or a file holding it" )->required();

  auto* eval_cmd = app.add_subcommand( "eval", "evaluate an expression at one assignment" );
  eval_cmd->add_option( "expr", expr_arg, "expression text" )->required();
  eval_cmd->add_option( "--input", bits, "assignment bits, x1 first" )->required();
  eval_cmd->add_option( "--mode", which, "1, 2 or both" )->check( CLI::IsMember( { "1", "2", "both" } ) );

  auto* kmap_cmd = app.add_subcommand( "kmap", "render the polymorphic Karnaugh map" );
  kmap_cmd->add_option( "input", input, ".ppla file, '-' or omitted for stdin" );

  auto* gen_cmd = app.add_subcommand( "gen", "write a benchmark pair such as parity4/majority4" );
  gen_cmd->add_option( "spec", spec, "benchmark pair spec" )->required();
  gen_cmd->add_option( "-o,--output", out_path, "output file (stdout when omitted)" );

  auto* exact_cmd = app.add_subcommand( "exact", "smallest equivalent expression (n <= 3)" );
  exact_cmd->add_option( "input", input, ".ppla file, '-' or omitted for stdin" );
  exact_cmd->add_option( "--budget", budget, "node limit" );

  auto* serve_cmd = app.add_subcommand( "serve", "start the workbench HTTP API" );
  serve_cmd->add_option( "--port", port, "listen port (env PORT)" );
  serve_cmd->add_option( "--host", host, "listen address" );
  serve_cmd->add_option( "--cors-origin", origin, "Access-Control-Allow-Origin value" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    return fail( "usage", e.what(), exit_usage );
  }

  cfg.enable_triples = !no_triples;
  try
  {
    if ( *minimize_cmd )
      return run_minimize( input, cfg, format );
    if ( *verify_cmd )
      return run_verify( input, expr_arg );
    if ( *eval_cmd )
      return run_eval( expr_arg, bits, which );
    if ( *kmap_cmd )
    {
      std::cout << render_kmap( load_function( input ) );
      return exit_ok;
    }
    if ( *gen_cmd )
      return run_gen( spec, out_path );
    if ( *exact_cmd )
      return run_exact( input, budget );
    if ( *serve_cmd )
      return run_serve( host, port, origin );
  }
  catch ( verification_error const& e )
  {
    return fail( e.kind(), e.what(), exit_mismatch );
  }
  catch ( uncovered_demand_error const& e )
  {
    return fail( e.kind(), e.what(), exit_mismatch );
  }
  catch ( polymin::error const& e )
  {
    return fail( e.kind(), e.what(), exit_usage );
  }
  catch ( std::exception const& e )
  {
    return fail( "internal", e.what(), exit_usage );
  }
  return exit_usage;
}
