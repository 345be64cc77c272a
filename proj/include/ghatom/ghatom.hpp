#pragma once

#include "config.hpp"
#include "dressed.hpp"
#include "errors.hpp"
#include "mat2.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "scattering.hpp"
#include "shifts.hpp"
#include "svg.hpp"
#include "sweep.hpp"
#include "wavepacket.hpp"
