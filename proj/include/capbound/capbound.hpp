#pragma once

#include "capbound/error.hpp"
#include "capbound/finite_field.hpp"
#include "capbound/affine_geometry.hpp"
#include "capbound/cap_functions.hpp"
#include "capbound/lambda_counting.hpp"
#include "capbound/bound_engine.hpp"
#include "capbound/search.hpp"
