#pragma once

#include "rainbow/blowup.hpp"
#include "rainbow/budget.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/copies.hpp"
#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graphon.hpp"
#include "rainbow/rational.hpp"
#include "rainbow/stochastic.hpp"
#include "rainbow/witness.hpp"
