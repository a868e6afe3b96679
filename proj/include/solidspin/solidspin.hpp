#pragma once

#include "solidspin/collective.hpp"
#include "solidspin/coupling.hpp"
#include "solidspin/dynamics.hpp"
#include "solidspin/exact.hpp"
#include "solidspin/functions.hpp"
#include "solidspin/half_int.hpp"
#include "solidspin/parallel.hpp"
#include "solidspin/quadrature.hpp"
#include "solidspin/radial.hpp"
#include "solidspin/su3.hpp"
#include "solidspin/version.hpp"
#include "solidspin/wigner.hpp"
