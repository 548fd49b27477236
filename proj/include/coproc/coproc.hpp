#pragma once

#include "coproc/catcomp.hpp"
#include "coproc/dyadic.hpp"
#include "coproc/error.hpp"
#include "coproc/games.hpp"
#include "coproc/hfgraph.hpp"
#include "coproc/intcat.hpp"
#include "coproc/proc.hpp"
#include "coproc/reals.hpp"
