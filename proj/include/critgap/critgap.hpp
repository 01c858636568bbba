#pragma once

// Umbrella header for the numerical library (no I/O dependencies).

#include "critgap/contours.hpp"
#include "critgap/errors.hpp"
#include "critgap/fredholm.hpp"
#include "critgap/gauss_legendre.hpp"
#include "critgap/ginibre_mc.hpp"
#include "critgap/kernels.hpp"
#include "critgap/rh_observables.hpp"
#include "critgap/special_functions.hpp"
