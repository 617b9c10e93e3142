// duplex.hpp — Umbrella header.

#pragma once

#include "duplex/bandwidth.hpp"
#include "duplex/device.hpp"
#include "duplex/fock.hpp"
#include "duplex/gaussian.hpp"
#include "duplex/geometry.hpp"
#include "duplex/math.hpp"
#include "duplex/rates.hpp"
#include "duplex/region.hpp"
#include "duplex/serialize.hpp"
#include "duplex/svg.hpp"
