#pragma once

#include "periodscape/arith.hpp"
#include "periodscape/errors.hpp"
#include "periodscape/fibclass.hpp"
#include "periodscape/landscape.hpp"
#include "periodscape/minima.hpp"
#include "periodscape/polynomials.hpp"
#include "periodscape/predict.hpp"
#include "periodscape/serialize.hpp"
