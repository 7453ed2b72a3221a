#pragma once

#include "expsum/csv.hpp"
#include "expsum/error.hpp"
#include "expsum/format.hpp"
#include "expsum/linalg.hpp"
#include "expsum/metrics.hpp"
#include "expsum/model_document.hpp"
#include "expsum/prony.hpp"
#include "expsum/reference_models.hpp"
#include "expsum/series.hpp"
#include "expsum/svg_plot.hpp"
#include "expsum/triangle_smooth.hpp"
