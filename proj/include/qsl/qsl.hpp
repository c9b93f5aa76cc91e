#pragma once

#include "qsl/errors.hpp"
#include "qsl/figures.hpp"
#include "qsl/io.hpp"
#include "qsl/jacobi.hpp"
#include "qsl/ladder.hpp"
#include "qsl/matrix.hpp"
#include "qsl/oscillator.hpp"
#include "qsl/spectrum.hpp"
#include "qsl/speed_limit.hpp"
#include "qsl/svg.hpp"
#include "qsl/version.hpp"
