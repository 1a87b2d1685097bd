#pragma once

#include "graphlim/bounds.hpp"
#include "graphlim/cut.hpp"
#include "graphlim/dataset.hpp"
#include "graphlim/decorated_graphon.hpp"
#include "graphlim/experiments.hpp"
#include "graphlim/features.hpp"
#include "graphlim/hom.hpp"
#include "graphlim/json_io.hpp"
#include "graphlim/linear_model.hpp"
#include "graphlim/motif.hpp"
#include "graphlim/noise.hpp"
#include "graphlim/partition.hpp"
#include "graphlim/point_measure.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/spectra.hpp"
#include "graphlim/step_graphon.hpp"
#include "graphlim/transport.hpp"
#include "graphlim/weighted_graph.hpp"
