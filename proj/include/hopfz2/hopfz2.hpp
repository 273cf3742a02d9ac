#pragma once

#include "scalar.hpp"
#include "group.hpp"
#include "report.hpp"
#include "cocycle.hpp"
#include "hopf.hpp"
#include "parallel.hpp"
#include "rmatrix.hpp"
#include "solver.hpp"
#include "families.hpp"
#include "io.hpp"
