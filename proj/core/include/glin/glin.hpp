#pragma once

#include "glin/baselines.hpp"
#include "glin/certify.hpp"
#include "glin/errors.hpp"
#include "glin/iterate.hpp"
#include "glin/linearize.hpp"
#include "glin/linsolve.hpp"
#include "glin/mesh.hpp"
#include "glin/operator.hpp"
#include "glin/problem.hpp"
#include "glin/problems.hpp"
#include "glin/quadrature.hpp"
#include "glin/ratio.hpp"
#include "glin/state.hpp"
