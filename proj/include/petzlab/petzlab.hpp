#pragma once

// Umbrella header: recovery-channel toolkit for qubit noise.

#include "petzlab/channel_json.hpp"
#include "petzlab/channels.hpp"
#include "petzlab/csv.hpp"
#include "petzlab/integrate.hpp"
#include "petzlab/linalg.hpp"
#include "petzlab/matrix.hpp"
#include "petzlab/nonmarkov.hpp"
#include "petzlab/parallel.hpp"
#include "petzlab/petz.hpp"
#include "petzlab/rng.hpp"
#include "petzlab/sampling.hpp"
#include "petzlab/states.hpp"
#include "petzlab/svg.hpp"
