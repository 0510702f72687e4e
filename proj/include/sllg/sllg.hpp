#pragma once

#include "sllg/basis.hpp"
#include "sllg/config.hpp"
#include "sllg/control.hpp"
#include "sllg/diagnostics.hpp"
#include "sllg/dynamics.hpp"
#include "sllg/ensemble.hpp"
#include "sllg/field.hpp"
#include "sllg/integrator.hpp"
#include "sllg/io.hpp"
#include "sllg/norms.hpp"
#include "sllg/vec3.hpp"
#include "sllg/wiener.hpp"
