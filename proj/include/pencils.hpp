#pragma once

#include "pencil/constructions.hpp"
#include "pencil/error.hpp"
#include "pencil/experiments.hpp"
#include "pencil/graph_sets.hpp"
#include "pencil/incidence.hpp"
#include "pencil/pencil.hpp"
#include "pencil/projective.hpp"
#include "pencil/rational.hpp"
#include "pencil/rich_points.hpp"
