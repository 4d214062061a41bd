#pragma once

// Umbrella header for the tiled 360° video geometry toolkit.

#include "tile360/frame.hpp"
#include "tile360/geometry.hpp"
#include "tile360/metrics.hpp"
#include "tile360/netpbm.hpp"
#include "tile360/projection.hpp"
#include "tile360/replay.hpp"
#include "tile360/stitcher.hpp"
#include "tile360/tiling.hpp"
#include "tile360/trace.hpp"
#include "tile360/viewport.hpp"
