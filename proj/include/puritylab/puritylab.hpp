#pragma once

// Umbrella header for the puritylab library: Schatten-norm linear algebra,
// completely positive maps, q->p output-purity estimation, and the numerical
// verification catalog for the purity bounds and equalities.

#include "puritylab/channel_spec.hpp"
#include "puritylab/channels.hpp"
#include "puritylab/errors.hpp"
#include "puritylab/json_writer.hpp"
#include "puritylab/linalg.hpp"
#include "puritylab/parallel.hpp"
#include "puritylab/purity.hpp"
#include "puritylab/replay.hpp"
#include "puritylab/rng.hpp"
#include "puritylab/semigroup.hpp"
#include "puritylab/serialize.hpp"
#include "puritylab/suites.hpp"
#include "puritylab/verify.hpp"
