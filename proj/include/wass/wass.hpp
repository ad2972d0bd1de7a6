#pragma once

#include "wass/ext_real.hpp"
#include "wass/metric_pair.hpp"
#include "wass/halfplane_pair.hpp"
#include "wass/graph_pair.hpp"
#include "wass/diagram.hpp"
#include "wass/assignment.hpp"
#include "wass/wasserstein.hpp"
#include "wass/grothendieck.hpp"
#include "wass/min_cost_flow.hpp"
#include "wass/measure.hpp"
#include "wass/transport.hpp"
