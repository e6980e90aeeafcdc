#pragma once

#include "gpot/balayage.hpp"
#include "gpot/calculus.hpp"
#include "gpot/errors.hpp"
#include "gpot/fields.hpp"
#include "gpot/graph.hpp"
#include "gpot/io.hpp"
#include "gpot/linear_solver.hpp"
#include "gpot/perron.hpp"
#include "gpot/potential.hpp"
