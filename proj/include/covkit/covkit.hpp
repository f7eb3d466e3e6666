#pragma once

#include "covkit/array.hpp"
#include "covkit/bounds.hpp"
#include "covkit/combinatorics.hpp"
#include "covkit/construct.hpp"
#include "covkit/coverage.hpp"
#include "covkit/recipes.hpp"
#include "covkit/reference.hpp"
#include "covkit/reports.hpp"
#include "covkit/rng.hpp"
#include "covkit/search.hpp"
#include "covkit/tables.hpp"
