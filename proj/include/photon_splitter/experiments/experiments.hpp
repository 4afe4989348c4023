#pragma once

#include "photon_splitter/experiments/anticoincidence.hpp"
#include "photon_splitter/experiments/dual_homodyne.hpp"
#include "photon_splitter/experiments/mach_zehnder.hpp"
#include "photon_splitter/experiments/qrng.hpp"
#include "photon_splitter/experiments/snr.hpp"
#include "photon_splitter/experiments/tomography_dataset.hpp"
