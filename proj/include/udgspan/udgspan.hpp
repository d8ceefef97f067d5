#pragma once

#include "geometry.hpp"
#include "topology.hpp"
#include "metrics.hpp"
#include "instances.hpp"
#include "local_sim.hpp"
#include "checks.hpp"
#include "io.hpp"
#include "experiment.hpp"
