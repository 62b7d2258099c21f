// SPDX-License-Identifier: Apache-2.0

/*!
  \file workbench_server.hpp
  \brief HTTP binding of the workbench service (cpp-httplib)
*/

#pragma once

#include <string>

#include <httplib.h>

#include "workbench.hpp"

namespace polymin::workbench
{

/*! \brief Routes every request of `server` to `svc` and adds CORS headers for `origin`. */
inline void bind( httplib::Server& server, service& svc, std::string origin = "*" )
{
  auto forward = [&svc, origin]( httplib::Request const& req, httplib::Response& res ) {
    auto const r = svc.handle( req.method, req.path, req.body );
    res.status = r.status;
    res.set_header( "Access-Control-Allow-Origin", origin );
    res.set_content( r.body.dump(), "application/json" );
  };
  server.Get( ".*", forward );
  server.Post( ".*", forward );
  server.Options( ".*", [origin]( httplib::Request const&, httplib::Response& res ) {
    res.status = 204;
    res.set_header( "Access-Control-Allow-Origin", origin );
    res.set_header( "Access-Control-Allow-Methods", "GET, POST, OPTIONS" );
    res.set_header( "Access-Control-Allow-Headers", "Content-Type" );
  } );
}

/*! \brief Blocks serving on host:port until the server is stopped. */
inline bool serve( service& svc, std::string const& host, int port, std::string origin = "*" )
{
  httplib::Server server;
  bind( server, svc, std::move( origin ) );
  return server.listen( host, port );
}

} // namespace polymin::workbench
