#pragma once

#include "gemcalc/catalogue.hpp"
#include "gemcalc/code.hpp"
#include "gemcalc/gem.hpp"
#include "gemcalc/io.hpp"
#include "gemcalc/moves.hpp"
#include "gemcalc/reduce.hpp"
#include "gemcalc/rho.hpp"
#include "gemcalc/verify.hpp"
