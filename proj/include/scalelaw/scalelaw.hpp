#pragma once

// Umbrella header for the scaling-law toolkit.

#include "scalelaw/bootstrap.hpp"
#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/fit.hpp"
#include "scalelaw/flops.hpp"
#include "scalelaw/frontier.hpp"
#include "scalelaw/law.hpp"
#include "scalelaw/lbfgs.hpp"
#include "scalelaw/report.hpp"
#include "scalelaw/rng.hpp"
#include "scalelaw/serialize.hpp"
#include "scalelaw/svg.hpp"
#include "scalelaw/synthetic.hpp"
