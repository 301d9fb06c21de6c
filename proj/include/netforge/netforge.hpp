#pragma once

#include "netforge/errors.hpp"
#include "netforge/experiment.hpp"
#include "netforge/formation.hpp"
#include "netforge/graph.hpp"
#include "netforge/metrics.hpp"
#include "netforge/random.hpp"
#include "netforge/theory.hpp"
