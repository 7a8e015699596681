// Umbrella header.
#pragma once

#include "scfs/dataset.hpp"
#include "scfs/errors.hpp"
#include "scfs/evaluation.hpp"
#include "scfs/experiment.hpp"
#include "scfs/hungarian.hpp"
#include "scfs/kmeans.hpp"
#include "scfs/metrics.hpp"
#include "scfs/norms.hpp"
#include "scfs/objective.hpp"
#include "scfs/report.hpp"
#include "scfs/rng.hpp"
#include "scfs/solver.hpp"
#include "scfs/synthetic.hpp"
#include "scfs/types.hpp"
