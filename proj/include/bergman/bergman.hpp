#pragma once

#include "bergman/banded_matrix.hpp"
#include "bergman/commutant.hpp"
#include "bergman/commutator.hpp"
#include "bergman/error.hpp"
#include "bergman/functional_eq.hpp"
#include "bergman/json_io.hpp"
#include "bergman/kernel_quadrature.hpp"
#include "bergman/linear_algebra.hpp"
#include "bergman/mellin.hpp"
#include "bergman/sampled.hpp"
#include "bergman/scalar.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"
