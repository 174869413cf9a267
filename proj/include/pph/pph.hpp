#pragma once

#include "pph/bottleneck.hpp"
#include "pph/commands.hpp"
#include "pph/complexes.hpp"
#include "pph/error.hpp"
#include "pph/filtration.hpp"
#include "pph/homology.hpp"
#include "pph/homotopy.hpp"
#include "pph/io.hpp"
#include "pph/linalg.hpp"
#include "pph/path.hpp"
#include "pph/persistence.hpp"
#include "pph/plot.hpp"
#include "pph/scalar.hpp"
