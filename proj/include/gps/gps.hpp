#pragma once

#include "gps/calculus.hpp"
#include "gps/error.hpp"
#include "gps/exponents.hpp"
#include "gps/expr.hpp"
#include "gps/identities.hpp"
#include "gps/json_io.hpp"
#include "gps/lazy.hpp"
#include "gps/residues.hpp"
#include "gps/scalar.hpp"
#include "gps/series.hpp"
