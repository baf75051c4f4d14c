#pragma once

#include "mprtrack/access.hpp"
#include "mprtrack/config.hpp"
#include "mprtrack/csv.hpp"
#include "mprtrack/experiments.hpp"
#include "mprtrack/joint_chain.hpp"
#include "mprtrack/optimizer.hpp"
#include "mprtrack/rng.hpp"
#include "mprtrack/simulator.hpp"
#include "mprtrack/source.hpp"
