#pragma once
// Umbrella header.

#include "octograv/errors.hpp"
#include "octograv/check.hpp"
#include "octograv/algebra.hpp"
#include "octograv/tensor.hpp"
#include "octograv/tables.hpp"
#include "octograv/frame.hpp"
#include "octograv/geometry.hpp"
#include "octograv/random.hpp"
#include "octograv/scenarios.hpp"
#include "octograv/action.hpp"
#include "octograv/verification.hpp"
#include "octograv/commands.hpp"
