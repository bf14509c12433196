#pragma once

#include "growthfpt/density.hpp"
#include "growthfpt/errors.hpp"
#include "growthfpt/fet.hpp"
#include "growthfpt/fpt.hpp"
#include "growthfpt/gauss_markov.hpp"
#include "growthfpt/growth_curve.hpp"
#include "growthfpt/lognormal.hpp"
#include "growthfpt/montecarlo.hpp"
#include "growthfpt/normal.hpp"
#include "growthfpt/ou.hpp"
#include "growthfpt/quadrature.hpp"
