#pragma once

// Umbrella header for the structured double-constant matrix library.

#include "dcm/algebra.hpp"
#include "dcm/dense_matrix.hpp"
#include "dcm/double_constant.hpp"
#include "dcm/error.hpp"
#include "dcm/fourier.hpp"
#include "dcm/scalar.hpp"
#include "dcm/stats.hpp"
