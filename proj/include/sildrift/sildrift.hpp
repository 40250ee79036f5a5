#pragma once

#include "sildrift/classifier.hpp"
#include "sildrift/dataset_io.hpp"
#include "sildrift/degradation.hpp"
#include "sildrift/metrics.hpp"
#include "sildrift/monitor.hpp"
#include "sildrift/profile.hpp"
#include "sildrift/profile_io.hpp"
#include "sildrift/report_io.hpp"
#include "sildrift/synth.hpp"
#include "sildrift/types.hpp"
#include "sildrift/windowing.hpp"
