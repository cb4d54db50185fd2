// Umbrella header.
#pragma once

#include "inls/classifier.hpp"
#include "inls/common.hpp"
#include "inls/cutoff.hpp"
#include "inls/diagnostics.hpp"
#include "inls/dst.hpp"
#include "inls/evolution.hpp"
#include "inls/exponents.hpp"
#include "inls/functionals.hpp"
#include "inls/grid.hpp"
#include "inls/ground_state.hpp"
#include "inls/nlquad.hpp"
#include "inls/potential.hpp"
#include "inls/serialize.hpp"
#include "inls/svg.hpp"
