#pragma once

// Umbrella header.

#include "firecal/calibrate.hpp"
#include "firecal/dfo/nelder_mead.hpp"
#include "firecal/dfo/pattern_search.hpp"
#include "firecal/dfo/quadratic_tr.hpp"
#include "firecal/ellipse.hpp"
#include "firecal/fixtures.hpp"
#include "firecal/grid.hpp"
#include "firecal/landscape.hpp"
#include "firecal/metrics.hpp"
#include "firecal/objective.hpp"
#include "firecal/raster_io.hpp"
#include "firecal/simulator.hpp"
