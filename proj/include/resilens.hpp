#pragma once

#include "resilens/cascade.hpp"
#include "resilens/centrality.hpp"
#include "resilens/csv_io.hpp"
#include "resilens/graph.hpp"
#include "resilens/json_io.hpp"
#include "resilens/layer.hpp"
#include "resilens/resilience.hpp"
#include "resilens/swat.hpp"
