// SPDX-License-Identifier: Apache-2.0

/*!
  \file serialize.hpp
  \brief JSON views of candidates, covers and tables (schema 1)
*/

#pragma once

#include <string>

#include <json.hpp>

#include "expression_io.hpp"
#include "kmap.hpp"
#include "minimize.hpp"
#include "rules.hpp"

namespace polymin
{

inline constexpr int json_schema_version = 1;

inline nlohmann::json to_json( cost_report const& c )
{
  return { { "literal_count", c.literal_count }, { "gate_count", c.gate_count }, { "poly_gate_count", c.poly_gate_count },
           { "depth", c.depth }, { "node_count", c.node_count } };
}

inline nlohmann::json to_json( term_candidate const& t )
{
  nlohmann::json cubes = nlohmann::json::array();
  for ( auto const& c : t.cubes )
    cubes.push_back( c.to_string() );
  nlohmann::json gates = nlohmann::json::array();
  for ( auto const& g : t.gates )
    gates.push_back( g.to_string() );
  auto const tag = tag_rule( t );
  return { { "shape", std::string( to_string( t.shape ) ) },
           { "cubes", cubes },
           { "gates", gates },
           { "expr", print_expr( t.expr ) },
           { "rule", tag.id },
           { "rule_signature", tag.signature },
           { "cost", to_json( t.cost ) } };
}

inline nlohmann::json to_json( cover const& c )
{
  nlohmann::json terms = nlohmann::json::array();
  for ( auto const& t : c.terms )
    terms.push_back( to_json( t ) );
  return { { "schema", json_schema_version }, { "expr", print_expr( c.expr ) }, { "cost", to_json( c.cost ) }, { "terms", terms } };
}

inline nlohmann::json cells_json( poly_function const& f )
{
  nlohmann::json cells = nlohmann::json::array();
  for ( auto const& v : f.cells() )
    cells.push_back( v.to_string() );
  return cells;
}

inline nlohmann::json to_json( kmap_layout const& k )
{
  return { { "row_vars", k.row_vars }, { "col_vars", k.col_vars }, { "row_labels", k.row_labels }, { "col_labels", k.col_labels }, { "grid", k.grid } };
}

} // namespace polymin
