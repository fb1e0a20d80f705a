#pragma once

#include "secrecy/baselines.hpp"
#include "secrecy/channel.hpp"
#include "secrecy/duality.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/numerics.hpp"
#include "secrecy/ordering.hpp"
#include "secrecy/region.hpp"
#include "secrecy/serialize.hpp"
#include "secrecy/solver.hpp"
