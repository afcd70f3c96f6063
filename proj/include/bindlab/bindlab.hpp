#pragma once

// Umbrella header: the whole library.

#include "bindlab/algorithms.hpp"
#include "bindlab/bind.hpp"
#include "bindlab/bit_matrix.hpp"
#include "bindlab/experiments.hpp"
#include "bindlab/full_cover.hpp"
#include "bindlab/graph.hpp"
#include "bindlab/group_contraction.hpp"
#include "bindlab/matching.hpp"
#include "bindlab/matching_reduction.hpp"
#include "bindlab/rng.hpp"
#include "bindlab/snapshot.hpp"
#include "bindlab/store_all.hpp"
#include "bindlab/stream.hpp"
#include "bindlab/streaming.hpp"
#include "bindlab/subsample.hpp"
#include "bindlab/vc_reduction.hpp"
#include "bindlab/vertex_cover.hpp"
