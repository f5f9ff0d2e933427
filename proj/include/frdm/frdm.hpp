#pragma once

// Umbrella header: fuzzy-rough discernibility-matrix feature selection.

#include "frdm/dataset.hpp"
#include "frdm/discernibility.hpp"
#include "frdm/errors.hpp"
#include "frdm/fuzzy.hpp"
#include "frdm/pipeline.hpp"
#include "frdm/reducer.hpp"
#include "frdm/serialize.hpp"
