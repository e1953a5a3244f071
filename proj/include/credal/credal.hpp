#pragma once

// Umbrella header for the credal library: interval-valued probability over
// convex sets of distributions, reference-class direct inference, the
// two-corpus acceptance architecture, and decision rules for interval
// expected utility.

#include "credal/corpus.hpp"
#include "credal/credal_set.hpp"
#include "credal/decide.hpp"
#include "credal/errors.hpp"
#include "credal/interval.hpp"
#include "credal/kbformat.hpp"
#include "credal/logic.hpp"
#include "credal/lp.hpp"
#include "credal/moments.hpp"
#include "credal/refclass.hpp"
