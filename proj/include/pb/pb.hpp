#pragma once

// Umbrella header for the pb library.

#include "pb/basis.hpp"
#include "pb/bounds.hpp"
#include "pb/catalog.hpp"
#include "pb/distinguish.hpp"
#include "pb/extension.hpp"
#include "pb/graph.hpp"
#include "pb/json_format.hpp"
#include "pb/linalg.hpp"
#include "pb/measurement.hpp"
