#pragma once

// Umbrella header.

#include "selfish/analysis.hpp"
#include "selfish/closedform.hpp"
#include "selfish/document.hpp"
#include "selfish/dynamics.hpp"
#include "selfish/error.hpp"
#include "selfish/families.hpp"
#include "selfish/game.hpp"
#include "selfish/rational.hpp"
#include "selfish/transforms.hpp"
