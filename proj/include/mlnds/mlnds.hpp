#ifndef MLNDS_MLNDS_HPP_
#define MLNDS_MLNDS_HPP_

#include "analysis.hpp"
#include "domination.hpp"
#include "experiment.hpp"
#include "generators.hpp"
#include "io/heatmap_svg.hpp"
#include "io/multiplex.hpp"
#include "io/plan.hpp"
#include "io/records.hpp"
#include "mltm.hpp"
#include "network.hpp"
#include "rng.hpp"
#include "seeding.hpp"

#endif // MLNDS_MLNDS_HPP_
