#pragma once

// Umbrella header for the C++ API.

#include "ddesolve/analysis.hpp"
#include "ddesolve/config.hpp"
#include "ddesolve/error.hpp"
#include "ddesolve/problem.hpp"
#include "ddesolve/problems.hpp"
#include "ddesolve/solver.hpp"
#include "ddesolve/steppers.hpp"
#include "ddesolve/trajectory.hpp"
