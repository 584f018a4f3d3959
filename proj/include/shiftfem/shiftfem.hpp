#pragma once

#include "shiftfem/analysis.hpp"
#include "shiftfem/assembly.hpp"
#include "shiftfem/errors.hpp"
#include "shiftfem/fe_space.hpp"
#include "shiftfem/lagrange.hpp"
#include "shiftfem/mesh.hpp"
#include "shiftfem/problem.hpp"
#include "shiftfem/quadrature.hpp"
#include "shiftfem/solver.hpp"
#include "shiftfem/study.hpp"
#include "shiftfem/table.hpp"
#include "shiftfem/verify.hpp"
