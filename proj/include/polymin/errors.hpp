// SPDX-License-Identifier: Apache-2.0

/*!
  \file errors.hpp
  \brief Exception types shared by all polymin modules
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polymin
{

class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;

  /*! \brief Short machine-readable category used by the CLI error line. */
  virtual char const* kind() const noexcept { return "error"; }
};

/*! \brief A variable index or cube does not fit the arity it is used with. */
class arity_error : public error
{
public:
  using error::error;
  char const* kind() const noexcept override { return "arity"; }
};

/*! \brief Malformed expression, cube string, document, or benchmark spec. */
class parse_error : public error
{
public:
  parse_error( std::string const& message, std::size_t position = 0u )
      : error( message + " (at " + std::to_string( position ) + ")" ), position_( position )
  {
  }

  std::size_t position() const noexcept { return position_; }
  char const* kind() const noexcept override { return "parse"; }

private:
  std::size_t position_;
};

/*! \brief A produced expression failed the equivalence check. */
class verification_error : public error
{
public:
  using error::error;
  char const* kind() const noexcept override { return "verification"; }
};

} // namespace polymin
