#pragma once

#include "cfrac.hpp"
#include "error.hpp"
#include "family_state.hpp"
#include "identify.hpp"
#include "kset.hpp"
#include "mmp.hpp"
#include "rational.hpp"
#include "resolutions.hpp"
#include "tsing.hpp"
