#pragma once

#include "ptspec/bands.hpp"
#include "ptspec/dyadic.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/evolution.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/kquad.hpp"
#include "ptspec/log_gamma.hpp"
#include "ptspec/maximal.hpp"
#include "ptspec/norms.hpp"
#include "ptspec/ode.hpp"
#include "ptspec/parallel.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/scattering.hpp"
#include "ptspec/spaces.hpp"
#include "ptspec/spectral.hpp"
#include "ptspec/verification.hpp"
