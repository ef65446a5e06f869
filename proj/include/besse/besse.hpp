// Umbrella header for the besse_lab library.

#ifndef BESSE_BESSE_HPP_
#define BESSE_BESSE_HPP_

#include "classifier.hpp"
#include "errors.hpp"
#include "orbifold.hpp"
#include "point_group.hpp"
#include "pu_average.hpp"
#include "seifert.hpp"
#include "verify.hpp"
#include "zoll_flow.hpp"

#endif
