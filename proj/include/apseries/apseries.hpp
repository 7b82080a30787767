#pragma once

#include "algnum.hpp"
#include "bounds.hpp"
#include "cli.hpp"
#include "division.hpp"
#include "errors.hpp"
#include "gapscan.hpp"
#include "jet.hpp"
#include "linsolve.hpp"
#include "localalg.hpp"
#include "monorder.hpp"
#include "param_rational.hpp"
#include "poly.hpp"
#include "polyalg.hpp"
#include "rational.hpp"
#include "textio.hpp"
