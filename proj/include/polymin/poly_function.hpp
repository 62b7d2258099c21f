// SPDX-License-Identifier: Apache-2.0

/*!
  \file poly_function.hpp
  \brief Polymorphic values, truth tables, gates and expressions

  A polymorphic Boolean function behaves as f1 in mode 1 and as f2 in
  mode 2.  Tables are indexed by the integer encoding of an assignment
  with x1 as the most significant bit.
*/

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace polymin
{

inline constexpr uint32_t max_arity = 16u;

enum class mode : uint8_t
{
  first = 1,
  second = 2
};

inline constexpr std::array<mode, 2> both_modes{ mode::first, mode::second };

inline constexpr uint32_t mode_number( mode m ) { return static_cast<uint32_t>( m ); }

/*! \brief Cell value of a polymorphic table: one bit per mode. */
struct poly_value
{
  bool mode1{ false };
  bool mode2{ false };

  constexpr bool operator[]( mode m ) const { return m == mode::first ? mode1 : mode2; }
  constexpr bool is_zero() const { return !mode1 && !mode2; }

  constexpr bool operator==( poly_value const& ) const = default;

  /*! \brief Dense code in [0, 4): mode1 is the high bit. */
  constexpr uint32_t code() const { return ( mode1 ? 2u : 0u ) | ( mode2 ? 1u : 0u ); }
  static constexpr poly_value from_code( uint32_t c ) { return { ( c & 2u ) != 0u, ( c & 1u ) != 0u }; }

  std::string to_string() const
  {
    return std::string{ mode1 ? '1' : '0', '/', mode2 ? '1' : '0' };
  }

  static poly_value parse( std::string_view text )
  {
    if ( text.size() != 3u || text[1] != '/' || ( text[0] != '0' && text[0] != '1' ) || ( text[2] != '0' && text[2] != '1' ) )
    {
      throw parse_error( "malformed polymorphic value '" + std::string( text ) + "'" );
    }
    return { text[0] == '1', text[2] == '1' };
  }
};

/*! \brief Position of variable x_var (1-based) inside a table index. */
inline constexpr uint32_t variable_shift( uint32_t num_vars, uint32_t var ) { return num_vars - var; }

/*! \brief An assignment of n variables, stored as its table index. */
class assignment
{
public:
  assignment( uint32_t num_vars, uint32_t index ) : num_vars_( num_vars ), index_( index )
  {
    if ( num_vars == 0u || num_vars > max_arity )
    {
      throw arity_error( "assignment arity " + std::to_string( num_vars ) + " outside [1, 16]" );
    }
    if ( index >= ( 1u << num_vars ) )
    {
      throw arity_error( "assignment index out of range" );
    }
  }

  /*! \brief Parses a bit string such as "1011" (first character is x1). */
  static assignment from_bits( std::string_view bits )
  {
    if ( bits.empty() || bits.size() > max_arity )
    {
      throw parse_error( "assignment must have 1 to 16 bits" );
    }
    uint32_t index = 0u;
    for ( auto i = 0u; i < bits.size(); ++i )
    {
      if ( bits[i] != '0' && bits[i] != '1' )
      {
        throw parse_error( "assignment bit must be 0 or 1", i );
      }
      index = ( index << 1u ) | ( bits[i] == '1' ? 1u : 0u );
    }
    return assignment( static_cast<uint32_t>( bits.size() ), index );
  }

  uint32_t num_vars() const { return num_vars_; }
  uint32_t index() const { return index_; }

  /*! \brief Value of variable x_var, 1-based. */
  bool operator[]( uint32_t var ) const
  {
    if ( var == 0u || var > num_vars_ )
    {
      throw arity_error( "variable x" + std::to_string( var ) + " outside assignment of arity " + std::to_string( num_vars_ ) );
    }
    return ( ( index_ >> variable_shift( num_vars_, var ) ) & 1u ) != 0u;
  }

  std::string to_string() const
  {
    std::string s( num_vars_, '0' );
    for ( auto i = 0u; i < num_vars_; ++i )
    {
      if ( ( index_ >> ( num_vars_ - 1u - i ) ) & 1u )
        s[i] = '1';
    }
    return s;
  }

  bool operator==( assignment const& ) const = default;

private:
  uint32_t num_vars_;
  uint32_t index_;
};

/*! \brief Complete pair of truth tables over n variables. */
class poly_function
{
public:
  explicit poly_function( uint32_t num_vars ) : num_vars_( checked_arity( num_vars ) ), cells_( std::size_t{ 1 } << num_vars ) {}

  poly_function( uint32_t num_vars, std::vector<poly_value> cells ) : num_vars_( checked_arity( num_vars ) ), cells_( std::move( cells ) )
  {
    if ( cells_.size() != ( std::size_t{ 1 } << num_vars_ ) )
    {
      throw arity_error( "table of arity " + std::to_string( num_vars_ ) + " needs " + std::to_string( 1u << num_vars_ ) + " cells" );
    }
  }

  /*! \brief Zips two single-mode tables of equal size. */
  static poly_function from_modes( uint32_t num_vars, std::vector<bool> const& f1, std::vector<bool> const& f2 )
  {
    if ( f1.size() != f2.size() )
    {
      throw arity_error( "mode tables differ in size" );
    }
    std::vector<poly_value> cells( f1.size() );
    for ( auto i = 0u; i < f1.size(); ++i )
    {
      cells[i] = { f1[i], f2[i] };
    }
    return poly_function( num_vars, std::move( cells ) );
  }

  uint32_t num_vars() const { return num_vars_; }
  uint32_t num_cells() const { return static_cast<uint32_t>( cells_.size() ); }

  poly_value const& operator[]( uint32_t index ) const { return cells_.at( index ); }
  poly_value& operator[]( uint32_t index ) { return cells_.at( index ); }
  poly_value const& operator[]( assignment const& a ) const { return cells_.at( a.index() ); }

  bool value( uint32_t index, mode m ) const { return cells_[index][m]; }

  std::vector<poly_value> const& cells() const { return cells_; }

  /*! \brief The single-mode truth table f_m. */
  std::vector<bool> mode_view( mode m ) const
  {
    std::vector<bool> table( cells_.size() );
    for ( auto i = 0u; i < cells_.size(); ++i )
    {
      table[i] = cells_[i][m];
    }
    return table;
  }

  bool operator==( poly_function const& ) const = default;

private:
  static uint32_t checked_arity( uint32_t num_vars )
  {
    if ( num_vars == 0u || num_vars > max_arity )
    {
      throw arity_error( "arity " + std::to_string( num_vars ) + " outside [1, 16]" );
    }
    return num_vars;
  }

  uint32_t num_vars_;
  std::vector<poly_value> cells_;
};

enum class bool_op : uint8_t
{
  AND,
  OR,
  XOR,
  NAND,
  NOR,
  XNOR
};

inline constexpr std::array<bool_op, 6> all_bool_ops{ bool_op::AND, bool_op::OR, bool_op::XOR, bool_op::NAND, bool_op::NOR, bool_op::XNOR };

inline constexpr bool apply( bool_op op, bool a, bool b )
{
  switch ( op )
  {
  case bool_op::AND:
    return a && b;
  case bool_op::OR:
    return a || b;
  case bool_op::XOR:
    return a != b;
  case bool_op::NAND:
    return !( a && b );
  case bool_op::NOR:
    return !( a || b );
  case bool_op::XNOR:
    return a == b;
  }
  return false;
}

inline constexpr uint64_t apply( bool_op op, uint64_t a, uint64_t b )
{
  switch ( op )
  {
  case bool_op::AND:
    return a & b;
  case bool_op::OR:
    return a | b;
  case bool_op::XOR:
    return a ^ b;
  case bool_op::NAND:
    return ~( a & b );
  case bool_op::NOR:
    return ~( a | b );
  case bool_op::XNOR:
    return ~( a ^ b );
  }
  return 0u;
}

inline constexpr bool_op negated( bool_op op )
{
  switch ( op )
  {
  case bool_op::AND:
    return bool_op::NAND;
  case bool_op::OR:
    return bool_op::NOR;
  case bool_op::XOR:
    return bool_op::XNOR;
  case bool_op::NAND:
    return bool_op::AND;
  case bool_op::NOR:
    return bool_op::OR;
  case bool_op::XNOR:
    return bool_op::XOR;
  }
  return op;
}

inline constexpr std::string_view to_string( bool_op op )
{
  constexpr std::array<std::string_view, 6> names{ "AND", "OR", "XOR", "NAND", "NOR", "XNOR" };
  return names[static_cast<std::size_t>( op )];
}

inline std::optional<bool_op> parse_bool_op( std::string_view name )
{
  for ( auto op : all_bool_ops )
  {
    auto const ref = to_string( op );
    if ( ref.size() != name.size() )
      continue;
    bool same = true;
    for ( auto i = 0u; i < ref.size(); ++i )
    {
      char c = name[i];
      if ( c >= 'a' && c <= 'z' )
        c = static_cast<char>( c - 'a' + 'A' );
      same = same && c == ref[i];
    }
    if ( same )
      return op;
  }
  return std::nullopt;
}

/*! \brief A pair of operators: op1 acts in mode 1, op2 in mode 2. */
struct poly_gate
{
  bool_op op1{ bool_op::AND };
  bool_op op2{ bool_op::AND };

  constexpr bool_op operator[]( mode m ) const { return m == mode::first ? op1 : op2; }

  constexpr bool is_zero_preserving() const { return !apply( op1, false, false ) && !apply( op2, false, false ); }
  constexpr bool is_polymorphic() const { return op1 != op2; }

  constexpr poly_gate negated() const { return { polymin::negated( op1 ), polymin::negated( op2 ) }; }

  constexpr bool operator==( poly_gate const& ) const = default;
  constexpr auto operator<=>( poly_gate const& ) const = default;

  std::string to_string() const { return std::string( polymin::to_string( op1 ) ) + "/" + std::string( polymin::to_string( op2 ) ); }
};

inline constexpr poly_gate or_gate{ bool_op::OR, bool_op::OR };
inline constexpr poly_gate and_gate{ bool_op::AND, bool_op::AND };

/*! \brief All 36 ordered operator pairs. */
inline std::vector<poly_gate> const& all_gates()
{
  static std::vector<poly_gate> const gates = [] {
    std::vector<poly_gate> v;
    for ( auto a : all_bool_ops )
      for ( auto b : all_bool_ops )
        v.push_back( { a, b } );
    return v;
  }();
  return gates;
}

/*! \brief The 9 pairs over {AND, OR, XOR}; op(0,0) = 0 in both modes. */
inline std::vector<poly_gate> const& zero_preserving_gates()
{
  static std::vector<poly_gate> const gates = [] {
    std::vector<poly_gate> v;
    for ( auto a : { bool_op::AND, bool_op::OR, bool_op::XOR } )
      for ( auto b : { bool_op::AND, bool_op::OR, bool_op::XOR } )
        v.push_back( { a, b } );
    return v;
  }();
  return gates;
}

/*! \brief Immutable expression tree whose internal nodes are polymorphic gates.

  Complement is a literal polarity; complementing a gate node rewrites
  its operators (AND <-> NAND etc.), so no inverter node exists.
*/
class poly_expr
{
public:
  enum class kind : uint8_t
  {
    constant,
    literal,
    gate
  };

  /*! \brief The constant 0/0. */
  poly_expr() : node_( std::make_shared<node const>( node{ kind::constant, {}, 0u, false, {}, {}, {} } ) ) {}

  static poly_expr constant( poly_value v ) { return poly_expr( std::make_shared<node const>( node{ kind::constant, v, 0u, false, {}, {}, {} } ) ); }

  static poly_expr literal( uint32_t var, bool complemented = false )
  {
    if ( var == 0u || var > max_arity )
    {
      throw arity_error( "variable x" + std::to_string( var ) + " outside [1, 16]" );
    }
    return poly_expr( std::make_shared<node const>( node{ kind::literal, {}, var, complemented, {}, {}, {} } ) );
  }

  static poly_expr gate( poly_gate g, poly_expr left, poly_expr right )
  {
    return poly_expr( std::make_shared<node const>( node{ kind::gate, {}, 0u, false, g, std::move( left.node_ ), std::move( right.node_ ) } ) );
  }

  kind type() const { return node_->type; }
  poly_value value() const { return node_->value; }
  uint32_t var() const { return node_->var; }
  bool complemented() const { return node_->complemented; }
  poly_gate gate_type() const { return node_->gate; }
  poly_expr left() const { return poly_expr( node_->left ); }
  poly_expr right() const { return poly_expr( node_->right ); }

  bool is_constant() const { return type() == kind::constant; }
  bool is_literal() const { return type() == kind::literal; }
  bool is_gate() const { return type() == kind::gate; }

  /*! \brief Highest variable index used; 0 for constant expressions. */
  uint32_t support_size() const
  {
    switch ( type() )
    {
    case kind::constant:
      return 0u;
    case kind::literal:
      return var();
    case kind::gate:
      return std::max( left().support_size(), right().support_size() );
    }
    return 0u;
  }

  friend bool operator==( poly_expr const& a, poly_expr const& b )
  {
    if ( a.node_ == b.node_ )
      return true;
    if ( a.type() != b.type() )
      return false;
    switch ( a.type() )
    {
    case kind::constant:
      return a.value() == b.value();
    case kind::literal:
      return a.var() == b.var() && a.complemented() == b.complemented();
    case kind::gate:
      return a.gate_type() == b.gate_type() && a.left() == b.left() && a.right() == b.right();
    }
    return false;
  }

private:
  struct node
  {
    kind type;
    poly_value value;
    uint32_t var;
    bool complemented;
    poly_gate gate;
    std::shared_ptr<node const> left;
    std::shared_ptr<node const> right;
  };

  explicit poly_expr( std::shared_ptr<node const> n ) : node_( std::move( n ) ) {}

  std::shared_ptr<node const> node_;
};

/*! \brief Mode-uniform complement of an expression. */
inline poly_expr complement( poly_expr const& e )
{
  switch ( e.type() )
  {
  case poly_expr::kind::constant:
    return poly_expr::constant( { !e.value().mode1, !e.value().mode2 } );
  case poly_expr::kind::literal:
    return poly_expr::literal( e.var(), !e.complemented() );
  case poly_expr::kind::gate:
    return poly_expr::gate( e.gate_type().negated(), e.left(), e.right() );
  }
  return e;
}

/*! \brief Evaluates one mode of the expression at a single point. */
inline bool eval( poly_expr const& e, assignment const& a, mode m )
{
  switch ( e.type() )
  {
  case poly_expr::kind::constant:
    return e.value()[m];
  case poly_expr::kind::literal:
    return a[e.var()] != e.complemented();
  case poly_expr::kind::gate:
    return apply( e.gate_type()[m], eval( e.left(), a, m ), eval( e.right(), a, m ) );
  }
  return false;
}

namespace detail
{

/*! \brief Packed single-mode truth table, bit k is the value at index k. */
using packed_table = std::vector<uint64_t>;

inline std::size_t packed_words( uint32_t num_vars ) { return num_vars >= 6u ? ( std::size_t{ 1 } << ( num_vars - 6u ) ) : 1u; }

inline uint64_t packed_tail_mask( uint32_t num_vars ) { return num_vars >= 6u ? ~uint64_t{ 0 } : ( ( uint64_t{ 1 } << ( 1u << num_vars ) ) - 1u ); }

inline packed_table packed_literal( uint32_t num_vars, uint32_t var, bool complemented )
{
  constexpr std::array<uint64_t, 6> patterns{ 0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
                                              0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };
  auto const shift = variable_shift( num_vars, var );
  packed_table t( packed_words( num_vars ) );
  for ( auto w = 0u; w < t.size(); ++w )
  {
    uint64_t word = shift < 6u ? patterns[shift] : ( ( ( uint64_t{ w } << 6u ) >> shift ) & 1u ? ~uint64_t{ 0 } : 0u );
    t[w] = ( complemented ? ~word : word ) & packed_tail_mask( num_vars );
  }
  return t;
}

inline std::pair<packed_table, packed_table> packed_eval( poly_expr const& e, uint32_t num_vars )
{
  auto const words = packed_words( num_vars );
  auto const tail = packed_tail_mask( num_vars );
  switch ( e.type() )
  {
  case poly_expr::kind::constant:
    return { packed_table( words, e.value().mode1 ? tail : 0u ), packed_table( words, e.value().mode2 ? tail : 0u ) };
  case poly_expr::kind::literal:
  {
    if ( e.var() > num_vars )
    {
      throw arity_error( "variable x" + std::to_string( e.var() ) + " exceeds arity " + std::to_string( num_vars ) );
    }
    auto t = packed_literal( num_vars, e.var(), e.complemented() );
    return { t, t };
  }
  case poly_expr::kind::gate:
  {
    auto [l1, l2] = packed_eval( e.left(), num_vars );
    auto const [r1, r2] = packed_eval( e.right(), num_vars );
    auto const g = e.gate_type();
    for ( auto w = 0u; w < words; ++w )
    {
      l1[w] = apply( g.op1, l1[w], r1[w] ) & tail;
      l2[w] = apply( g.op2, l2[w], r2[w] ) & tail;
    }
    return { std::move( l1 ), std::move( l2 ) };
  }
  }
  return {};
}

} // namespace detail

/*! \brief Truth table of an expression over n variables. */
inline poly_function table_of( poly_expr const& e, uint32_t num_vars )
{
  if ( num_vars == 0u || num_vars > max_arity )
  {
    throw arity_error( "arity " + std::to_string( num_vars ) + " outside [1, 16]" );
  }
  auto const [t1, t2] = detail::packed_eval( e, num_vars );
  poly_function f( num_vars );
  for ( auto k = 0u; k < f.num_cells(); ++k )
  {
    f[k] = { ( ( t1[k >> 6u] >> ( k & 63u ) ) & 1u ) != 0u, ( ( t2[k >> 6u] >> ( k & 63u ) ) & 1u ) != 0u };
  }
  return f;
}

struct mismatch
{
  assignment point;
  mode where;
  bool expected;
  bool got;
};

/*! \brief First differing (assignment, mode), scanning indices ascending and mode 1 first. */
inline std::optional<mismatch> first_mismatch( poly_expr const& e, poly_function const& f )
{
  if ( e.support_size() > f.num_vars() )
  {
    throw arity_error( "expression uses x" + std::to_string( e.support_size() ) + " but function has arity " + std::to_string( f.num_vars() ) );
  }
  auto const t = table_of( e, f.num_vars() );
  for ( auto k = 0u; k < f.num_cells(); ++k )
  {
    for ( auto m : both_modes )
    {
      if ( t[k][m] != f[k][m] )
      {
        return mismatch{ assignment( f.num_vars(), k ), m, f[k][m], t[k][m] };
      }
    }
  }
  return std::nullopt;
}

inline bool equivalent( poly_expr const& e, poly_function const& f ) { return !first_mismatch( e, f ).has_value(); }

/*! \brief Structural cost measures of an expression. */
struct cost_report
{
  uint32_t literal_count{ 0 };
  uint32_t gate_count{ 0 };
  uint32_t poly_gate_count{ 0 };
  uint32_t depth{ 0 };
  uint32_t node_count{ 0 };

  bool operator==( cost_report const& ) const = default;
};

inline cost_report cost_of( poly_expr const& e )
{
  switch ( e.type() )
  {
  case poly_expr::kind::constant:
    return { 0u, 0u, 0u, 0u, 1u };
  case poly_expr::kind::literal:
    return { 1u, 0u, 0u, 0u, 1u };
  case poly_expr::kind::gate:
  {
    auto const l = cost_of( e.left() );
    auto const r = cost_of( e.right() );
    return { l.literal_count + r.literal_count, l.gate_count + r.gate_count + 1u,
             l.poly_gate_count + r.poly_gate_count + ( e.gate_type().is_polymorphic() ? 1u : 0u ),
             std::max( l.depth, r.depth ) + 1u, l.node_count + r.node_count + 1u };
  }
  }
  return {};
}

} // namespace polymin
