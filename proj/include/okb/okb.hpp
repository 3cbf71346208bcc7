#pragma once

#include "okb/chambers.hpp"
#include "okb/cone.hpp"
#include "okb/constants.hpp"
#include "okb/divisor.hpp"
#include "okb/error.hpp"
#include "okb/expr.hpp"
#include "okb/lattice.hpp"
#include "okb/linalg.hpp"
#include "okb/okounkov.hpp"
#include "okb/polygon.hpp"
#include "okb/positivity.hpp"
#include "okb/rational.hpp"
#include "okb/svg.hpp"
#include "okb/zariski.hpp"
