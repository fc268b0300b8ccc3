// Umbrella header.

#pragma once

#include "mubcert/bounds.hpp"
#include "mubcert/io.hpp"
#include "mubcert/linalg.hpp"
#include "mubcert/measure.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/rng.hpp"
#include "mubcert/search.hpp"
#include "mubcert/state.hpp"
