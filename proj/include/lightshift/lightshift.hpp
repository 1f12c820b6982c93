#ifndef LIGHTSHIFT_LIGHTSHIFT_HPP_
#define LIGHTSHIFT_LIGHTSHIFT_HPP_

#include "lightshift/errors.hpp"
#include "lightshift/units.hpp"
#include "lightshift/species.hpp"
#include "lightshift/polarization.hpp"
#include "lightshift/hyperfine.hpp"
#include "lightshift/shifts.hpp"
#include "lightshift/magic.hpp"
#include "lightshift/ramsey.hpp"

#endif  // LIGHTSHIFT_LIGHTSHIFT_HPP_
