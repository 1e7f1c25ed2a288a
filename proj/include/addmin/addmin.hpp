#pragma once

// Exact solver for fuzzy relation equations with addition-min composition.
// Minimal solutions of the equations are also minimal for the matching
// inequality system (sum_j min(a_ij, x_j) >= b_i), so enumerate_minimal
// serves that system as well.

#include <addmin/box_system.hpp>
#include <addmin/cell.hpp>
#include <addmin/enumeration.hpp>
#include <addmin/errors.hpp>
#include <addmin/fourier_motzkin.hpp>
#include <addmin/grid.hpp>
#include <addmin/io.hpp>
#include <addmin/linear_algebra.hpp>
#include <addmin/oracle.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>
