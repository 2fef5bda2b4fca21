#pragma once

#include "epsnet/bounds.hpp"
#include "epsnet/coverage.hpp"
#include "epsnet/epsilon.hpp"
#include "epsnet/geometry.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/prm.hpp"
#include "epsnet/sampling.hpp"
#include "epsnet/spatial_index.hpp"
