#pragma once

// Umbrella header for the ampkit microwave amplifier design library.

#include "ampkit/bias.hpp"
#include "ampkit/complex_utils.hpp"
#include "ampkit/config.hpp"
#include "ampkit/constants.hpp"
#include "ampkit/elements.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/match.hpp"
#include "ampkit/matchsynth.hpp"
#include "ampkit/microstrip.hpp"
#include "ampkit/pipeline.hpp"
#include "ampkit/report.hpp"
#include "ampkit/smith_svg.hpp"
#include "ampkit/stability.hpp"
#include "ampkit/touchstone.hpp"
#include "ampkit/twoport.hpp"
