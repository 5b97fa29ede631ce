#pragma once

#include "ringeq/error.hpp"
#include "ringeq/specfun.hpp"
#include "ringeq/quartic.hpp"
#include "ringeq/curvature.hpp"
#include "ringeq/geometry.hpp"
#include "ringeq/numeric.hpp"
#include "ringeq/solver.hpp"
#include "ringeq/contact.hpp"
#include "ringeq/io.hpp"
#include "ringeq/commands.hpp"
