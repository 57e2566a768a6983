#pragma once

#include "curveframe/calculus.hpp"
#include "curveframe/energy.hpp"
#include "curveframe/errors.hpp"
#include "curveframe/fields.hpp"
#include "curveframe/frenet.hpp"
#include "curveframe/generators.hpp"
#include "curveframe/grid.hpp"
#include "curveframe/invariants.hpp"
#include "curveframe/io.hpp"
#include "curveframe/rpaf.hpp"
