#pragma once

#include "snaplab/acquisition.hpp"
#include "snaplab/campaign.hpp"
#include "snaplab/causality.hpp"
#include "snaplab/diagram.hpp"
#include "snaplab/error.hpp"
#include "snaplab/evaluator.hpp"
#include "snaplab/fixtures.hpp"
#include "snaplab/io.hpp"
#include "snaplab/model.hpp"
#include "snaplab/vclock.hpp"
#include "snaplab/workload.hpp"
