#pragma once

#include "lightphase/anomaly.hpp"
#include "lightphase/constants.hpp"
#include "lightphase/doppler.hpp"
#include "lightphase/evolution.hpp"
#include "lightphase/geometric_phase.hpp"
#include "lightphase/hopf.hpp"
#include "lightphase/scenario.hpp"
#include "lightphase/spinor.hpp"
