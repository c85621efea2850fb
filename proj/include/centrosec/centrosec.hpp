#pragma once

#include "centrosec/body.hpp"
#include "centrosec/error.hpp"
#include "centrosec/families.hpp"
#include "centrosec/functional.hpp"
#include "centrosec/instance.hpp"
#include "centrosec/polytope.hpp"
#include "centrosec/report.hpp"
#include "centrosec/section.hpp"
#include "centrosec/solver.hpp"
#include "centrosec/sphere.hpp"
