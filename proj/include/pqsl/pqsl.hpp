// pqsl.hpp — umbrella header for the numerical kernels.

#pragma once

#include "pqsl/dephasing.hpp"
#include "pqsl/errors.hpp"
#include "pqsl/linalg2.hpp"
#include "pqsl/nonmarkov.hpp"
#include "pqsl/qsl.hpp"
#include "pqsl/quadrature.hpp"
#include "pqsl/roots.hpp"
#include "pqsl/spectral.hpp"
#include "pqsl/version.hpp"
