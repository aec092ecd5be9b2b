#pragma once

#include "sisi/equilibria.hpp"
#include "sisi/errors.hpp"
#include "sisi/format.hpp"
#include "sisi/linalg.hpp"
#include "sisi/model.hpp"
#include "sisi/ode.hpp"
#include "sisi/params.hpp"
#include "sisi/reproduction.hpp"
#include "sisi/scenario.hpp"
#include "sisi/sensitivity.hpp"
#include "sisi/spectrum.hpp"
#include "sisi/stability.hpp"
