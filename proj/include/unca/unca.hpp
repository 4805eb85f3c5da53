#pragma once

#include "unca/model.hpp"
#include "unca/random.hpp"
#include "unca/ingest.hpp"
#include "unca/neutro.hpp"
#include "unca/nkm.hpp"
#include "unca/graph.hpp"
#include "unca/refine.hpp"
#include "unca/metrics.hpp"
#include "unca/serialize.hpp"
