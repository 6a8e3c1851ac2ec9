#pragma once

#include "characters.hpp"
#include "cycle_orbits.hpp"
#include "cyclotomic.hpp"
#include "elliptic.hpp"
#include "errors.hpp"
#include "field_core.hpp"
#include "triple_product.hpp"
#include "weil_deligne.hpp"
