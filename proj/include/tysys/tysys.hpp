#pragma once

#include "tysys/error.hpp"
#include "tysys/rational.hpp"
#include "tysys/laurent.hpp"
#include "tysys/ratfunc.hpp"
#include "tysys/semifield.hpp"
#include "tysys/cartan.hpp"
#include "tysys/lattice.hpp"
#include "tysys/verify.hpp"
#include "tysys/tsystem.hpp"
#include "tysys/ysystem.hpp"
#include "tysys/exchange.hpp"
#include "tysys/cluster.hpp"
