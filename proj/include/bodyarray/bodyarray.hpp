// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core.hpp"
#include "geometry.hpp"
#include "em_model.hpp"
#include "array_model.hpp"
#include "sensing.hpp"
#include "oracles.hpp"
#include "config.hpp"
#include "runner.hpp"
