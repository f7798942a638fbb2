#pragma once

#include "psgeo/errors.hpp"
#include "psgeo/rng.hpp"
#include "psgeo/region.hpp"
#include "psgeo/special.hpp"
#include "psgeo/gp.hpp"
#include "psgeo/skew_normal.hpp"
#include "psgeo/point_process.hpp"
#include "psgeo/dataset.hpp"
#include "psgeo/inference.hpp"
#include "psgeo/prediction.hpp"
#include "psgeo/evaluation.hpp"
#include "psgeo/simulation.hpp"
#include "psgeo/io.hpp"
