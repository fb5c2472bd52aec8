#pragma once

#include "hilbert/error.hpp"
#include "hilbert/linalg.hpp"
#include "hilbert/polytope.hpp"
#include "hilbert/face_lattice.hpp"
#include "hilbert/hilbert_metric.hpp"
#include "hilbert/simplex_model.hpp"
#include "hilbert/subdivision.hpp"
#include "hilbert/sampling.hpp"
#include "hilbert/experiments.hpp"
#include "hilbert/io.hpp"
