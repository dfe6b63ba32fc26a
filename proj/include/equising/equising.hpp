#pragma once

#include "equising/numbers.hpp"
#include "equising/parse.hpp"
#include "equising/staircase.hpp"
#include "equising/decision.hpp"
#include "equising/approximation.hpp"
#include "equising/oracle.hpp"
#include "equising/io.hpp"
