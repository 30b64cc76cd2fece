// zeno.hpp — umbrella header.
#pragma once

#include "zeno/commands.hpp"
#include "zeno/config.hpp"
#include "zeno/effective.hpp"
#include "zeno/errors.hpp"
#include "zeno/fock.hpp"
#include "zeno/gap.hpp"
#include "zeno/lattice.hpp"
#include "zeno/model.hpp"
#include "zeno/oracle.hpp"
#include "zeno/parallel.hpp"
#include "zeno/sector.hpp"
#include "zeno/spectra.hpp"
#include "zeno/table.hpp"
#include "zeno/version.hpp"
