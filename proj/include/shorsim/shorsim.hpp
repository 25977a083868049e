#pragma once

#include "shorsim/cfrac.hpp"
#include "shorsim/gates.hpp"
#include "shorsim/layout.hpp"
#include "shorsim/modexp.hpp"
#include "shorsim/pipeline.hpp"
#include "shorsim/qft.hpp"
#include "shorsim/random.hpp"
#include "shorsim/spectrum.hpp"
#include "shorsim/state.hpp"
#include "shorsim/stats.hpp"
