#pragma once

#include "fsr/image.hpp"
#include "fsr/linear.hpp"
#include "fsr/metrics.hpp"
#include "fsr/pipeline.hpp"
#include "fsr/sampling.hpp"
#include "fsr/texture.hpp"
