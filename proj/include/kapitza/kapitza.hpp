#pragma once

#include "kapitza/classical.hpp"
#include "kapitza/config.hpp"
#include "kapitza/effective.hpp"
#include "kapitza/errors.hpp"
#include "kapitza/floquet.hpp"
#include "kapitza/grid.hpp"
#include "kapitza/linalg.hpp"
#include "kapitza/propagator.hpp"
#include "kapitza/resonator.hpp"
#include "kapitza/runner.hpp"
