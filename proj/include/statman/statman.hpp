#pragma once

#include "statman/errors.hpp"
#include "statman/ring.hpp"
#include "statman/frame_algebra.hpp"
#include "statman/report.hpp"
#include "statman/structures.hpp"
#include "statman/soliton.hpp"
#include "statman/submanifold.hpp"
#include "statman/dsl.hpp"
#include "statman/fixtures.hpp"
#include "statman/numoracle.hpp"
#include "statman/commands.hpp"
