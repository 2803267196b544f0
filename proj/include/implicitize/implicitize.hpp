#pragma once

#include "implicitize/basis.hpp"
#include "implicitize/curve.hpp"
#include "implicitize/experiments.hpp"
#include "implicitize/geometry.hpp"
#include "implicitize/io.hpp"
#include "implicitize/surface.hpp"
