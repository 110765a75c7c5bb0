#pragma once

#include "qcorr/error.hpp"
#include "qcorr/state.hpp"
#include "qcorr/random.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/ccm.hpp"
#include "qcorr/spin_models.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/qs1.hpp"
#include "qcorr/sweep.hpp"
#include "qcorr/properties.hpp"
