#pragma once

#include "forestacc/error.hpp"
#include "forestacc/forest_enum.hpp"
#include "forestacc/forest_matrix.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/io.hpp"
#include "forestacc/matrix.hpp"
#include "forestacc/perturbation.hpp"
#include "forestacc/report.hpp"
#include "forestacc/rwd_series.hpp"
#include "forestacc/socio_indices.hpp"
#include "forestacc/verify.hpp"
