#pragma once

// Umbrella header.

#include "htester/budgets.hpp"
#include "htester/check_consistency.hpp"
#include "htester/check_threshold.hpp"
#include "htester/estimate.hpp"
#include "htester/exact.hpp"
#include "htester/experiment.hpp"
#include "htester/halfspace.hpp"
#include "htester/linalg.hpp"
#include "htester/mc.hpp"
#include "htester/oracle.hpp"
#include "htester/pivot.hpp"
#include "htester/projection.hpp"
#include "htester/radial.hpp"
#include "htester/report.hpp"
#include "htester/ri_distribution.hpp"
#include "htester/ri_tester.hpp"
#include "htester/rings.hpp"
#include "htester/rng.hpp"
#include "htester/samples.hpp"
#include "htester/simple_tester.hpp"
#include "htester/spec_format.hpp"
#include "htester/special.hpp"
#include "htester/tester_config.hpp"
#include "htester/verdict.hpp"
#include "htester/verify.hpp"
#include "htester/width.hpp"
