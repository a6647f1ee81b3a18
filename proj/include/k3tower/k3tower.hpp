#pragma once

#include "error.hpp"
#include "zmod.hpp"
#include "projective.hpp"
#include "sqrt2.hpp"
#include "fricke.hpp"
#include "orbits.hpp"
#include "fermat.hpp"
#include "tower.hpp"
#include "report.hpp"
