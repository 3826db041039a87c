#ifndef SEGDIST_SEGDIST_HPP
#define SEGDIST_SEGDIST_HPP

#include "segdist/grid.hpp"
#include "segdist/boundary.hpp"
#include "segdist/edt.hpp"
#include "segdist/distance.hpp"
#include "segdist/metrics.hpp"
#include "segdist/oracle.hpp"
#include "segdist/synth.hpp"
#include "segdist/stats.hpp"
#include "segdist/batch.hpp"

#endif  // SEGDIST_SEGDIST_HPP
