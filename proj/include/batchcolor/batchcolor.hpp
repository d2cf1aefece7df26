#pragma once

#include "batchcolor/adversaries.hpp"
#include "batchcolor/algorithms.hpp"
#include "batchcolor/engine.hpp"
#include "batchcolor/errors.hpp"
#include "batchcolor/graph.hpp"
#include "batchcolor/interval.hpp"
#include "batchcolor/io.hpp"
#include "batchcolor/oracles.hpp"
#include "batchcolor/rational.hpp"
#include "batchcolor/sum_coloring.hpp"
#include "batchcolor/two_batches.hpp"
