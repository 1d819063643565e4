#pragma once

#include "deltacasimir/coupling.hpp"
#include "deltacasimir/energy_density.hpp"
#include "deltacasimir/identities.hpp"
#include "deltacasimir/profile.hpp"
#include "deltacasimir/quadrature.hpp"
#include "deltacasimir/shape.hpp"
#include "deltacasimir/special.hpp"
