#pragma once

#include "senga/chromosome.hpp"
#include "senga/errors.hpp"
#include "senga/experiment.hpp"
#include "senga/rng.hpp"
#include "senga/run_record.hpp"
#include "senga/stats.hpp"
#include "senga/strategy.hpp"
#include "senga/torus_ca.hpp"
#include "senga/tsp.hpp"
#include "senga/version.hpp"
