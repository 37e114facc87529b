// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qgs/classical.hpp"
#include "qgs/complex_matrix.hpp"
#include "qgs/eigen.hpp"
#include "qgs/entangled.hpp"
#include "qgs/errors.hpp"
#include "qgs/game.hpp"
#include "qgs/game_io.hpp"
#include "qgs/manipulative.hpp"
#include "qgs/quantum.hpp"
#include "qgs/rng.hpp"
