#pragma once

#include "dproc/config_graph.hpp"
#include "dproc/degree_sequence.hpp"
#include "dproc/enumerate.hpp"
#include "dproc/exact.hpp"
#include "dproc/experiments.hpp"
#include "dproc/fixtures.hpp"
#include "dproc/odemethod.hpp"
#include "dproc/process.hpp"
#include "dproc/rational.hpp"
#include "dproc/rng.hpp"
#include "dproc/switching.hpp"
#include "dproc/verification.hpp"
