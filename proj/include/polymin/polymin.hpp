// SPDX-License-Identifier: Apache-2.0

/*!
  \file polymin.hpp
  \brief Umbrella header (everything except the HTTP binding)
*/

#pragma once

#include "baselines.hpp"
#include "benchmarks.hpp"
#include "cube.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "expression_io.hpp"
#include "kmap.hpp"
#include "minimize.hpp"
#include "poly_function.hpp"
#include "ppla.hpp"
#include "rules.hpp"
#include "serialize.hpp"
#include "workbench.hpp"
