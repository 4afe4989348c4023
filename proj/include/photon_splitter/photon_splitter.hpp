#pragma once

#include "photon_splitter/errors.hpp"
#include "photon_splitter/experiments/experiments.hpp"
#include "photon_splitter/fock/beam_splitter.hpp"
#include "photon_splitter/fock/constants.hpp"
#include "photon_splitter/fock/quadrature.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"
#include "photon_splitter/io/config.hpp"
#include "photon_splitter/io/csv.hpp"
#include "photon_splitter/io/dispatch.hpp"
#include "photon_splitter/io/report_io.hpp"
#include "photon_splitter/measurement/click.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/measurement/loss.hpp"
#include "photon_splitter/parallel.hpp"
#include "photon_splitter/rng.hpp"
#include "photon_splitter/sources.hpp"
#include "photon_splitter/tomography/binning.hpp"
#include "photon_splitter/tomography/mle.hpp"
#include "photon_splitter/tomography/povm.hpp"
#include "photon_splitter/tomography/wigner.hpp"
